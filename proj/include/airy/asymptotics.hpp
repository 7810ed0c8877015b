#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "airy/connection.hpp"
#include "airy/errors.hpp"
#include "airy/matrix.hpp"
#include "airy/polynomial.hpp"
#include "airy/rational.hpp"
#include "airy/series.hpp"

namespace airy {

/// c_n = (n+1/2)_{2n} / (54^n n!), the coefficients of the Airy asymptotic
/// expansions in powers of 1/s, s = (2/3) z^(3/2).
inline Rational airy_coefficient(unsigned n) {
  Rational num(1);
  const Rational base = Rational(static_cast<long>(n)) + Rational(1, 2);
  for (unsigned i = 0; i < 2 * n; ++i) num *= base + Rational(static_cast<long>(i));
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), n);
  mpz_class p54;
  mpz_ui_pow_ui(p54.get_mpz_t(), 54, n);
  return num / Rational(mpz_class(den * p54));
}

/// 2 pi Ai(z) Bi(z) in w = 1/z: offset 1/2, step 3. Coefficient j is
/// (sum_{a+b=2j} (-1)^a c_a c_b) (3/2)^(2j); the odd-order sums vanish.
inline OffsetSeries aibi_series(std::size_t terms) {
  if (terms < 1) throw std::invalid_argument("aibi_series: terms must be >= 1");
  const std::size_t top = 2 * terms;
  std::vector<Rational> c;
  c.reserve(top);
  for (unsigned i = 0; i < top; ++i) c.push_back(airy_coefficient(i));
  auto cross = [&](std::size_t m) {
    Rational s(0);
    for (std::size_t a = 0; a <= m; ++a) {
      const Rational t = c[a] * c[m - a];
      if (a % 2 == 0) s += t;
      else s -= t;
    }
    return s;
  };
  std::vector<Rational> out;
  out.reserve(terms);
  const Rational nine_fourths(9, 4);
  Rational scale(1);
  for (std::size_t j = 0; j < terms; ++j) {
    if (j > 0 && !cross(2 * j - 1).is_zero())
      throw InconsistencyError("aibi_series: odd cross term " + std::to_string(2 * j - 1) + " does not vanish");
    out.push_back(cross(2 * j) * scale);
    scale *= nine_fourths;
  }
  return OffsetSeries(Rational(1, 2), Rational(3), std::move(out));
}

/// Linear differential operator sum_i coeffs[i](z) (d/dz)^i.
struct DifferentialOperator {
  std::vector<Polynomial> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Minimal operator annihilating the generator u_0 of a connection module:
/// the relation d^r u_0 = sum_{i<r} q_i(z) d^i u_0 with r = rank, found by
/// solving for polynomial q_i of degree <= max_degree.
inline DifferentialOperator cyclic_vector_operator(const ConnectionModule& m, int max_degree = 4) {
  if (!m.derivation) throw DomainError("cyclic_vector_operator: module has no d/dz form");
  const std::size_t r = m.rank();
  auto apply = [&](const ModuleElement& e) {
    ModuleElement out;
    for (const auto& [g, p] : e.coordinates()) {
      out.add(g, p.derivative());
      for (const auto& [i, q] : (*m.derivation)[g]) out.add(i, p * q);
    }
    return out;
  };
  std::vector<ModuleElement> ders{ModuleElement::monomial(0, 0)};
  for (std::size_t i = 0; i < r; ++i) ders.push_back(apply(ders.back()));

  // Unknown (i, d) = coefficient of z^d in q_i. Equations indexed by (generator, z-power).
  int max_z = 0;
  for (const auto& e : ders)
    for (const auto& [g, p] : e.coordinates()) max_z = std::max(max_z, p.degree());
  max_z += max_degree;
  const std::size_t unknowns = r * static_cast<std::size_t>(max_degree + 1);
  const std::size_t eqs = r * static_cast<std::size_t>(max_z + 1);
  std::vector<std::vector<Rational>> cols(unknowns, std::vector<Rational>(eqs, Rational(0)));
  auto eq_index = [&](std::size_t g, int zpow) { return g * static_cast<std::size_t>(max_z + 1) + static_cast<std::size_t>(zpow); };
  for (std::size_t i = 0; i < r; ++i)
    for (int d = 0; d <= max_degree; ++d) {
      auto& col = cols[i * static_cast<std::size_t>(max_degree + 1) + static_cast<std::size_t>(d)];
      for (const auto& [g, p] : ders[i].coordinates())
        for (const auto& [e, c] : p.terms()) col[eq_index(g, e + d)] += c;
    }
  std::vector<Rational> rhs(eqs, Rational(0));
  for (const auto& [g, p] : ders[r].coordinates())
    for (const auto& [e, c] : p.terms()) rhs[eq_index(g, e)] = c;
  const auto x = detail::solve_in_span(cols, rhs);
  if (!x) throw InconsistencyError("cyclic_vector_operator: no polynomial relation of the given degree");

  DifferentialOperator op;
  op.coeffs.resize(r + 1);
  for (std::size_t i = 0; i < r; ++i)
    for (int d = 0; d <= max_degree; ++d)
      op.coeffs[i].set(d, -(*x)[i * static_cast<std::size_t>(max_degree + 1) + static_cast<std::size_t>(d)]);
  op.coeffs[r] = Polynomial(1);
  return op;
}

/// Third-order operator satisfied by the products of two Airy solutions.
inline DifferentialOperator symmetric_square_airy_operator() {
  return cyclic_vector_operator(build_symk(2, 2));
}

namespace detail {

// Falling factorial a (a-1) ... (a-i+1).
inline Rational falling(const Rational& a, int i) {
  Rational r(1);
  for (int t = 0; t < i; ++t) r *= a - Rational(t);
  return r;
}

}  // namespace detail

/// Formal solution  sum_t e_t z^(alpha - t), e_0 = 1, at z = infinity, i.e. the
/// series sum_t e_t w^(t - alpha) in w = 1/z. `alpha` must be a root of the
/// indicial polynomial. Returns e_0 .. e_{count-1}.
inline std::vector<Rational> solve_at_infinity(const DifferentialOperator& op, const Rational& alpha,
                                               std::size_t count) {
  // z^a maps to sum_{i,d} p_{i,d} falling(a, i) z^(a - i + d); shift = d - i.
  int top_shift = Polynomial::kMinusInfinity;
  for (int i = 0; i <= op.order(); ++i)
    if (!op.coeffs[static_cast<std::size_t>(i)].is_zero())
      top_shift = std::max(top_shift, op.coeffs[static_cast<std::size_t>(i)].degree() - i);
  auto shift_part = [&](const Rational& a, int shift) {
    Rational s(0);
    for (int i = 0; i <= op.order(); ++i) {
      const Rational c = op.coeffs[static_cast<std::size_t>(i)].coeff(shift + i);
      if (shift + i >= 0 && !c.is_zero()) s += c * detail::falling(a, i);
    }
    return s;
  };
  if (!shift_part(alpha, top_shift).is_zero())
    throw DomainError("solve_at_infinity: exponent " + alpha.str() + " is not indicial");

  std::vector<Rational> e{Rational(1)};
  for (std::size_t t = 1; t < count; ++t) {
    const Rational at = alpha - Rational(static_cast<long>(t));
    const Rational lead = shift_part(at, top_shift);
    Rational acc(0);
    for (std::size_t s = 0; s < t; ++s) {
      if (e[s].is_zero()) continue;
      const int shift = top_shift - static_cast<int>(t - s);
      acc += e[s] * shift_part(alpha - Rational(static_cast<long>(s)), shift);
    }
    if (lead.is_zero())
      throw InconsistencyError("solve_at_infinity: resonant exponent at t = " + std::to_string(t));
    e.push_back(-acc / lead);
  }
  return e;
}

/// 2 pi Ai Bi recomputed as the formal solution of the symmetric-square Airy
/// equation with leading term sqrt(w).
inline OffsetSeries aibi_series_ode_oracle(std::size_t terms) {
  if (terms < 1) throw std::invalid_argument("aibi_series_ode_oracle: terms must be >= 1");
  const DifferentialOperator op = symmetric_square_airy_operator();
  const auto e = solve_at_infinity(op, Rational(-1, 2), 3 * (terms - 1) + 1);
  std::vector<Rational> coeffs;
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (t % 3 == 0)
      coeffs.push_back(e[t]);
    else if (!e[t].is_zero())
      throw InconsistencyError("aibi_series_ode_oracle: nonzero coefficient off the w^3 lattice");
  }
  return OffsetSeries(Rational(1, 2), Rational(3), std::move(coeffs));
}

/// gamma_{k, k/4 + 3j} for j < values.size().
struct GammaTable {
  int k = 0;
  Rational offset;
  std::vector<Rational> values;

  /// gamma_{k,i}; zero off the lattice k/4 + 3Z_{>=0}.
  Rational at(const Rational& i) const {
    const Rational idx = (i - offset) / Rational(3);
    if (!idx.is_integer() || idx.sign() < 0) return Rational(0);
    const auto j = static_cast<std::size_t>(idx.to_int64());
    if (j >= values.size()) throw std::out_of_range("GammaTable: index " + i.str() + " beyond truncation");
    return values[j];
  }
};

inline GammaTable gamma(int k, std::size_t terms) {
  if (k < 2 || k % 2 != 0) throw DomainError("gamma: k must be even and >= 2, got " + std::to_string(k));
  const OffsetSeries s = series_pow(aibi_series(terms), static_cast<unsigned>(k / 2));
  GammaTable t{k, s.offset(), s.coefficients()};
  if (t.offset != Rational(k, 4)) throw InconsistencyError("gamma: offset is not k/4");
  if (t.values.empty() || t.values[0] != Rational(1)) throw InconsistencyError("gamma: leading value is not 1");
  for (const auto& v : t.values)
    if (v.sign() <= 0) throw InconsistencyError("gamma: nonpositive coefficient " + v.str());
  return t;
}

/// Basis of H^1_mid(A^1, Sym^k Ai): {omega_i - gamma_{k,i} omega_{k/4}} when
/// 4 | k, the full omega basis otherwise.
inline CohomologyBasis mid_basis(int k) {
  CohomologyBasis full = h1_a1_basis(k);
  full.space = Space::middle;
  if (k % 4 != 0) return full;
  const int quarter = k / 4;
  const int kp = k_prime(k);
  const int reach = std::max(kp, quarter + 3);
  const GammaTable g = gamma(k, static_cast<std::size_t>((reach - quarter) / 3 + 1));
  CohomologyBasis out;
  out.space = Space::middle;
  out.k = k;
  for (int i = 1; i <= omega_count(k); ++i) {
    if (i == quarter) continue;
    const Rational gi = g.at(Rational(i));
    ModuleElement cls = ModuleElement::monomial(0, i - 1);
    if (!gi.is_zero()) cls = cls - gi * ModuleElement::monomial(0, quarter - 1);
    out.classes.push_back(std::move(cls));
    out.g_levels.push_back(full.g_levels[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

/// omega_{k/4}, whose class spans H^1 / H^1_mid when 4 | k.
inline ModuleElement mid_quotient_class(int k) {
  if (k % 4 != 0 || k < 4) throw DomainError("mid_quotient_class: requires 4 | k");
  return ModuleElement::monomial(0, k / 4 - 1);
}

}  // namespace airy
