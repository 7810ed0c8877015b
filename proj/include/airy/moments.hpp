#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "airy/errors.hpp"
#include "airy/polynomial.hpp"
#include "airy/rational.hpp"

namespace airy {

struct MomentLimits {
  std::uint64_t enumeration_cap = 10'000'000;
};

/// n-th cyclotomic polynomial, by exact division of x^n - 1 by Phi_d, d | n, d < n.
inline Polynomial cyclotomic(int n) {
  if (n < 1) throw DomainError("cyclotomic: n must be positive");
  static std::map<int, Polynomial> cache;  // NOLINT: values are immutable once computed
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Polynomial p = Polynomial::monomial(n) - Polynomial(1);
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    auto [q, r] = divmod(p, cyclotomic(d));
    if (!r.is_zero()) throw InconsistencyError("cyclotomic: inexact division");
    p = std::move(q);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, p);
  return p;
}

namespace detail {

inline void check_cap(int n, int k, const MomentLimits& limits) {
  if (n < 2) throw DomainError("order n must be >= 2, got " + std::to_string(n));
  if (k < 0) throw DomainError("k must be >= 0, got " + std::to_string(k));
  const mpz_class count = binomial(static_cast<unsigned long>(n - 1 + k), static_cast<unsigned long>(k));
  if (count > mpz_class(static_cast<unsigned long>(limits.enumeration_cap)))
    throw SizeLimitError("composition count " + count.get_str() + " exceeds cap " +
                         std::to_string(limits.enumeration_cap));
}

// Calls f(reduced) for every composition a of k into n parts, where `reduced`
// holds the integer coefficients of sum_{i=1}^n a_i x^i mod Phi_n(x).
inline void for_each_reduced_composition(int n, int k, const std::function<void(const std::vector<long>&)>& f) {
  const Polynomial phi = cyclotomic(n);
  const auto deg = static_cast<std::size_t>(phi.degree());
  std::vector<std::vector<long>> power(static_cast<std::size_t>(n) + 1, std::vector<long>(deg, 0));
  for (int i = 1; i <= n; ++i) {
    const Polynomial r = divmod(Polynomial::monomial(i), phi).second;
    for (const auto& [d, c] : r.terms()) power[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] = c.to_int64();
  }
  std::vector<long> acc(deg, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      for (std::size_t d = 0; d < deg; ++d) acc[d] += left * power[static_cast<std::size_t>(n)][d];
      f(acc);
      for (std::size_t d = 0; d < deg; ++d) acc[d] -= left * power[static_cast<std::size_t>(n)][d];
      return;
    }
    for (int a = 0; a <= left; ++a) {
      for (std::size_t d = 0; d < deg; ++d) acc[d] += a * power[static_cast<std::size_t>(i)][d];
      rec(i + 1, left - a);
      for (std::size_t d = 0; d < deg; ++d) acc[d] -= a * power[static_cast<std::size_t>(i)][d];
    }
  };
  rec(1, k);
}

inline bool all_zero(const std::vector<long>& v) {
  for (long x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace detail

/// S_{n,k}: compositions a of k into n parts with sum a_i zeta_n^i = 0.
inline std::int64_t s_nk(int n, int k, const MomentLimits& limits = {}) {
  detail::check_cap(n, k, limits);
  std::int64_t count = 0;
  detail::for_each_reduced_composition(n, k, [&](const std::vector<long>& r) { count += detail::all_zero(r); });
  return count;
}

inline mpz_class symk_rank(int n, int k) {
  return binomial(static_cast<unsigned long>(n - 1 + k), static_cast<unsigned long>(k));
}

/// irr(n,k) = (n+1)/n * [binom(n-1+k, k) - S_{n,k}].
inline Rational irr(int n, int k, const MomentLimits& limits = {}) {
  const Rational s(static_cast<long>(s_nk(n, k, limits)));
  return Rational(n + 1, n) * (Rational(symk_rank(n, k)) - s);
}

struct H1Dims {
  std::int64_t all = 0;
  std::int64_t mid = 0;
};

/// dim H^1 and dim H^1_mid of Sym^k Ai_n on the affine line.
inline H1Dims h1_dims(int n, int k, const MomentLimits& limits = {}) {
  if (k < 1) throw DomainError("h1_dims: k must be >= 1, got " + std::to_string(k));
  const std::int64_t s = s_nk(n, k, limits);
  const Rational all = Rational(symk_rank(n, k)) / Rational(n) - Rational(n + 1, n) * Rational(static_cast<long>(s));
  if (!all.is_integer() || all.sign() < 0)
    throw InconsistencyError("h1_dims: formula gives " + all.str() + " for (n,k) = (" + std::to_string(n) + "," +
                             std::to_string(k) + ")");
  const int period = n % 2 == 1 ? n : 2 * n;
  const std::int64_t correction = k % period == 0 ? s : 0;
  return {all.to_int64(), all.to_int64() - correction};
}

/// Exponential factors at infinity of Sym^k Ai_n before taking mu_n-invariants.
/// Each coefficient is -n(sum a_i zeta^i)/(n+1) as a polynomial in zeta reduced
/// mod Phi_n.
struct ExponentMultiset {
  int n = 2;
  int k = 0;
  std::vector<std::pair<Polynomial, std::int64_t>> entries;
  std::int64_t regular_rank = 0;

  std::int64_t irregular_rank() const {
    std::int64_t s = 0;
    for (const auto& e : entries) s += e.second;
    return s;
  }
};

inline ExponentMultiset formal_decomposition(int n, int k, const MomentLimits& limits = {}) {
  detail::check_cap(n, k, limits);
  std::map<std::vector<long>, std::int64_t> counts;
  std::int64_t regular = 0;
  detail::for_each_reduced_composition(n, k, [&](const std::vector<long>& r) {
    if (detail::all_zero(r))
      ++regular;
    else
      ++counts[r];
  });
  ExponentMultiset out;
  out.n = n;
  out.k = k;
  out.regular_rank = regular;
  const Rational scale(-n, n + 1);
  for (const auto& [key, mult] : counts) {
    Polynomial p;
    for (std::size_t d = 0; d < key.size(); ++d) p.set(static_cast<int>(d), scale * Rational(key[d]));
    out.entries.emplace_back(std::move(p), mult);
  }
  if (mpz_class(static_cast<long>(out.irregular_rank() + out.regular_rank)) != symk_rank(n, k))
    throw InconsistencyError("formal_decomposition: multiplicities do not add up to the rank");
  return out;
}

inline int mod3(int x) { return ((x % 3) + 3) % 3; }

inline void check_epsilon(int eps) {
  if (eps < 0 || eps > 2) throw DomainError("epsilon must be 0, 1 or 2, got " + std::to_string(eps));
}

/// #{ j in [0,k] : k+j+eps != 0 mod 3, floor((k+j+eps)/3) = p }.
inline int rho_preimage(int k, int eps, int p) {
  check_epsilon(eps);
  int count = 0;
  for (int j = 0; j <= k; ++j) {
    const int s = k + j + eps;
    if (s % 3 != 0 && s / 3 == p) ++count;
  }
  return count;
}

/// Size of the domain of rho_eps.
inline int rho_domain_size(int k, int eps) {
  check_epsilon(eps);
  int count = 0;
  for (int j = 0; j <= k; ++j) count += (k + j + eps) % 3 != 0;
  return count;
}

/// #{ j in [0,k] : k+j = eps' - eps mod 3 }.
inline int psi_eigenspace_dim(int k, int eps, int eps_prime) {
  check_epsilon(eps);
  check_epsilon(eps_prime);
  int count = 0;
  for (int j = 0; j <= k; ++j) count += mod3(k + j) == mod3(eps_prime - eps);
  return count;
}

/// Rank of M_{k,eps} by the closed-form case split.
inline int mk_rank_closed_form(int k, int eps) {
  check_epsilon(eps);
  const int f = k / 3;
  if (eps == 0) return k % 3 != 0 ? 2 * (f + 1) : 2 * f;
  return k % 3 != 2 ? 2 * f + 1 : 2 * (f + 1);
}

struct MkInvariants {
  int k = 0;
  int epsilon = 0;
  int rank = 0;
  std::vector<Rational> singular_points;
  int nu = 0;
  int psi_unit_dim = 0;
  int phi_unit_dim = 0;
};

inline MkInvariants mk_invariants(int k, int eps) {
  check_epsilon(eps);
  if (k < 2 || k % 2 != 0) throw DomainError("mk_invariants: k must be even and >= 2, got " + std::to_string(k));
  MkInvariants m;
  m.k = k;
  m.epsilon = eps;
  for (int j = 0; j <= k; ++j) {
    if (mod3(k + j) != mod3(-eps)) ++m.rank;
    if (mod3(k + j) == eps) ++m.nu;
    m.singular_points.push_back(Rational(2 * (2 * j - k), 3));
  }
  if (m.rank != mk_rank_closed_form(k, eps) || m.rank != rho_domain_size(k, eps))
    throw InconsistencyError("mk_invariants: rank count disagrees with the closed form");
  m.psi_unit_dim = eps == 0 ? m.rank : m.rank - 1;
  m.phi_unit_dim = eps == 0 ? 1 : 0;
  return m;
}

}  // namespace airy
