#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "airy/errors.hpp"
#include "airy/matrix.hpp"
#include "airy/polynomial.hpp"
#include "airy/rational.hpp"

namespace airy {

/// Column j holds the image of generator j: sum_i entry(i, j) * g_i.
using PolyColumn = std::map<std::size_t, Polynomial>;

/// Free Q[z]-module with a connection, presented on symbolic generators.
///
/// `theta` is the action of z*d/dz and is always polynomial. `derivation` is
/// the action of d/dz; it is absent for the twisted (rho = 1/2) modules, which
/// only live on the punctured line.
struct ConnectionModule {
  int n = 2;
  int k = 1;
  Rational twist{0};
  std::vector<std::string> generator_labels;
  std::vector<std::vector<int>> exponents;  // exponent vector a of v^a, |a| = k
  std::vector<int> weights;                 // sum_i i*a_i
  std::optional<std::vector<PolyColumn>> derivation;
  std::vector<PolyColumn> theta;

  std::size_t rank() const { return generator_labels.size(); }
  int z_weight() const { return n; }

  Polynomial entry(std::size_t i, std::size_t j) const {
    if (!derivation) throw DomainError("ConnectionModule: no polynomial d/dz form for rho = " + twist.str());
    auto it = (*derivation).at(j).find(i);
    return it == (*derivation)[j].end() ? Polynomial() : it->second;
  }
  Polynomial theta_entry(std::size_t i, std::size_t j) const {
    auto it = theta.at(j).find(i);
    return it == theta[j].end() ? Polynomial() : it->second;
  }
};

/// Element of the polynomial module: generator index -> coefficient polynomial.
class ModuleElement {
 public:
  ModuleElement() = default;
  static ModuleElement monomial(std::size_t generator, int z_degree, Rational c = Rational(1)) {
    ModuleElement e;
    e.add(generator, Polynomial::monomial(z_degree, std::move(c)));
    return e;
  }

  void add(std::size_t generator, const Polynomial& p) {
    Polynomial& slot = coords_[generator];
    slot += p;
    if (slot.is_zero()) coords_.erase(generator);
  }

  ModuleElement& operator+=(const ModuleElement& o) {
    for (const auto& [g, p] : o.coords_) add(g, p);
    return *this;
  }
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator*(const Rational& s, ModuleElement a) {
    if (s.is_zero()) return {};
    for (auto& [g, p] : a.coords_) p *= s;
    return a;
  }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a += Rational(-1) * b; }
  friend bool operator==(const ModuleElement& a, const ModuleElement& b) { return a.coords_ == b.coords_; }

  bool is_zero() const { return coords_.empty(); }
  const std::map<std::size_t, Polynomial>& coordinates() const { return coords_; }

  Polynomial coefficient(std::size_t generator) const {
    auto it = coords_.find(generator);
    return it == coords_.end() ? Polynomial() : it->second;
  }

  /// Weighted degree: max over terms z^m g of z_weight*m + weight(g).
  int weight(const ConnectionModule& m) const {
    int w = Polynomial::kMinusInfinity;
    for (const auto& [g, p] : coords_) w = std::max(w, m.z_weight() * p.degree() + m.weights.at(g));
    return w;
  }

 private:
  std::map<std::size_t, Polynomial> coords_;
};

enum class Space {
  affine_line,     // H^1(A^1, -), forms  f * dz
  punctured_line,  // H^1(G_m, -), forms  f * dz/z
  middle,          // image of compact supports in H^1(A^1, -)
};

inline const char* space_name(Space s) {
  switch (s) {
    case Space::affine_line: return "A1";
    case Space::punctured_line: return "Gm";
    case Space::middle: return "mid";
  }
  return "?";
}

/// Ordered classes of a cohomology space with their G-filtration levels.
struct CohomologyBasis {
  Space space = Space::affine_line;
  int k = 0;
  Rational twist{0};
  std::vector<ModuleElement> classes;
  std::vector<Rational> g_levels;

  std::size_t size() const { return classes.size(); }
};

struct ConnectionLimits {
  std::size_t max_rank = 20000;
  int degree_ceiling = 2048;
};

/// k' = floor((k-1)/2).
inline int k_prime(int k) { return (k - 1) / 2; }

/// Upper end of the index range [1, k'] (odd k: k'+1, even k: k').
inline int omega_count(int k) { return k % 2 == 1 ? k_prime(k) + 1 : k_prime(k); }

namespace detail {

inline std::string monomial_label(const std::vector<int>& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "v" + std::to_string(i);
    if (a[i] > 1) out += "^" + std::to_string(a[i]);
  }
  return out.empty() ? "1" : out;
}

// Exponent vectors of total degree k in n parts, lexicographically descending,
// so that for n = 2 the j-th vector is (k - j, j).
inline void compositions(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const auto pos = static_cast<int>(cur.size());
  if (pos == n - 1) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur.push_back(a);
    compositions(n, k - a, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Companion connection of d^n/dz^n - z on v_0..v_{n-1}:
/// d/dz v_i = v_{i+1} (i < n-1), d/dz v_{n-1} = z v_0.
inline ConnectionModule build_airy(int n) {
  if (n < 2) throw DomainError("build_airy: order n must be >= 2, got " + std::to_string(n));
  ConnectionModule m;
  m.n = n;
  m.k = 1;
  std::vector<PolyColumn> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    a[static_cast<std::size_t>(i)] = 1;
    m.exponents.push_back(a);
    m.weights.push_back(i);
    m.generator_labels.push_back("v" + std::to_string(i));
    if (i + 1 < n)
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = Polynomial(1);
    else
      d[static_cast<std::size_t>(i)][0] = Polynomial::monomial(1);
  }
  for (auto& col : d) {
    PolyColumn t;
    for (const auto& [i, p] : col) t[i] = Polynomial::monomial(1) * p;
    m.theta.push_back(std::move(t));
  }
  m.derivation = std::move(d);
  return m;
}

/// Sym^k of Ai_n on the monomials v^a by the Leibniz rule.
inline ConnectionModule build_symk_leibniz(int n, int k, const ConnectionLimits& limits = {}) {
  if (n < 2) throw DomainError("build_symk: order n must be >= 2, got " + std::to_string(n));
  if (k < 1) throw DomainError("build_symk: k must be >= 1, got " + std::to_string(k));
  const mpz_class size = binomial(static_cast<unsigned long>(n - 1 + k), static_cast<unsigned long>(k));
  if (size > mpz_class(static_cast<unsigned long>(limits.max_rank)))
    throw SizeLimitError("build_symk: rank " + size.get_str() + " exceeds cap " + std::to_string(limits.max_rank));

  ConnectionModule m;
  m.n = n;
  m.k = k;
  std::vector<int> cur;
  detail::compositions(n, k, cur, m.exponents);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t g = 0; g < m.exponents.size(); ++g) {
    const auto& a = m.exponents[g];
    index[a] = g;
    int w = 0;
    for (int i = 0; i < n; ++i) w += i * a[static_cast<std::size_t>(i)];
    m.weights.push_back(w);
    m.generator_labels.push_back(detail::monomial_label(a));
  }
  std::vector<PolyColumn> d(m.exponents.size());
  for (std::size_t g = 0; g < m.exponents.size(); ++g) {
    const auto& a = m.exponents[g];
    for (int i = 0; i < n; ++i) {
      const int ai = a[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      auto b = a;
      --b[static_cast<std::size_t>(i)];
      Polynomial c(ai);
      if (i + 1 < n) {
        ++b[static_cast<std::size_t>(i + 1)];
      } else {
        ++b[0];
        c = Polynomial::monomial(1, Rational(ai));
      }
      d[g][index.at(b)] += c;
    }
  }
  for (auto& col : d) {
    PolyColumn t;
    for (const auto& [i, p] : col) t[i] = Polynomial::monomial(1) * p;
    m.theta.push_back(std::move(t));
  }
  m.derivation = std::move(d);
  return m;
}

/// Sym^k Ai_n, twisted by L^(2 rho) on the punctured line when n = 2.
///
/// For n = 2 the generators are u_a = v_0^(k-a) v_1^a with
///   z d/dz u_a = rho u_a + (k-a) z u_{a+1} + a z^2 u_{a-1}.
inline ConnectionModule build_symk(int n, int k, const Rational& rho = Rational(0),
                                   const ConnectionLimits& limits = {}) {
  if (!rho.is_zero() && rho != Rational(1, 2))
    throw DomainError("build_symk: twist must be 0 or 1/2, got " + rho.str());
  if (!rho.is_zero() && n != 2) throw DomainError("build_symk: twist 1/2 is only supported for n = 2");
  if (n != 2) return build_symk_leibniz(n, k, limits);
  if (k < 1) throw DomainError("build_symk: k must be >= 1, got " + std::to_string(k));
  if (static_cast<std::size_t>(k + 1) > limits.max_rank)
    throw SizeLimitError("build_symk: rank " + std::to_string(k + 1) + " exceeds cap");

  ConnectionModule m;
  m.n = 2;
  m.k = k;
  m.twist = rho;
  const auto r = static_cast<std::size_t>(k + 1);
  m.theta.resize(r);
  for (int a = 0; a <= k; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    m.exponents.push_back({k - a, a});
    m.weights.push_back(a);
    m.generator_labels.push_back("u" + std::to_string(a));
    PolyColumn& col = m.theta[ua];
    if (!rho.is_zero()) col[ua] = Polynomial(rho);
    if (a < k) col[ua + 1] = Polynomial::monomial(1, Rational(k - a));
    if (a > 0) col[ua - 1] = Polynomial::monomial(2, Rational(a));
  }
  if (rho.is_zero()) {
    std::vector<PolyColumn> d(r);
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& [i, p] : m.theta[j]) d[j][i] = divmod(p, Polynomial::monomial(1)).first;
    m.derivation = std::move(d);
  }
  return m;
}

/// The de Rham complex of a module truncated by weight, with deg z = n and
/// deg v^a = sum i*a_i.
///
/// Images of all source monomials of weight <= n*D are eliminated with
/// highest-weight-first pivoting; the non-pivot target monomials of weight
/// <= n*D/2 ("standard monomials") then represent the cokernel.
class TruncatedComplex {
 public:
  TruncatedComplex(const ConnectionModule& m, Space space, int D)
      : module_(m), log_form_(space == Space::punctured_line), depth_(D) {
    if (!log_form_ && !m.derivation)
      throw DomainError("TruncatedComplex: the twisted module has no complex on A^1");
    const int zw = m.z_weight();
    source_bound_ = zw * D;
    count_bound_ = source_bound_ / 2;
    const int raise = log_form_ ? zw + 1 : 1;
    target_bound_ = source_bound_ + raise;

    // Target monomials sorted by weight descending, then generator.
    std::vector<std::pair<int, std::pair<std::size_t, int>>> mons;  // (weight, (gen, m))
    for (std::size_t g = 0; g < m.rank(); ++g)
      for (int e = 0; zw * e + m.weights[g] <= target_bound_; ++e) mons.push_back({zw * e + m.weights[g], {g, e}});
    std::sort(mons.begin(), mons.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    });
    column_of_.assign(m.rank(), {});
    for (std::size_t c = 0; c < mons.size(); ++c) {
      const auto [g, e] = mons[c].second;
      auto& v = column_of_[g];
      if (v.size() <= static_cast<std::size_t>(e)) v.resize(static_cast<std::size_t>(e) + 1, kNone);
      v[static_cast<std::size_t>(e)] = c;
      monomials_.push_back({g, e});
      column_weight_.push_back(mons[c].first);
    }

    echelon_.emplace(mons.size());
    // Low-weight sources first keeps the pivot rows short.
    std::vector<std::pair<int, std::pair<std::size_t, int>>> sources;
    for (const auto& mon : mons)
      if (mon.first <= source_bound_) sources.push_back(mon);
    std::reverse(sources.begin(), sources.end());
    for (const auto& [w, ge] : sources) {
      if (!echelon_->insert(image_row(ge.first, ge.second))) ++kernel_dim_;
    }
    for (std::size_t c = 0; c < monomials_.size(); ++c)
      if (column_weight_[c] <= count_bound_ && !echelon_->has_pivot(c)) standard_.push_back(c);
  }

  int depth() const { return depth_; }
  int count_bound() const { return count_bound_; }
  std::size_t kernel_dim() const { return kernel_dim_; }
  std::size_t cokernel_dim() const { return standard_.size(); }

  /// Standard monomials as (generator, z-degree), in column order.
  std::vector<std::pair<std::size_t, int>> standard_monomials() const {
    std::vector<std::pair<std::size_t, int>> out;
    for (auto c : standard_) out.push_back(monomials_[c]);
    return out;
  }

  bool fits(const ModuleElement& e) const { return e.is_zero() || e.weight(module_) <= count_bound_; }

  /// Coordinates of [e] on the standard monomials.
  std::vector<Rational> normal_form(const ModuleElement& e) const {
    if (!fits(e)) throw StabilityError("TruncatedComplex: element weight exceeds the counted range");
    const SparseRow reduced = echelon_->reduce(to_row(e));
    std::vector<Rational> out(standard_.size(), Rational(0));
    for (const auto& [c, v] : reduced) {
      auto it = std::lower_bound(standard_.begin(), standard_.end(), c);
      if (it == standard_.end() || *it != c)
        throw InconsistencyError("TruncatedComplex: normal form left the standard monomials");
      out[static_cast<std::size_t>(it - standard_.begin())] = v;
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t column(std::size_t g, int e) const {
    const auto& v = column_of_.at(g);
    if (e < 0 || static_cast<std::size_t>(e) >= v.size() || v[static_cast<std::size_t>(e)] == kNone)
      throw InconsistencyError("TruncatedComplex: monomial outside the target range");
    return v[static_cast<std::size_t>(e)];
  }

  SparseRow to_row(const ModuleElement& e) const {
    std::map<std::size_t, Rational> acc;
    for (const auto& [g, p] : e.coordinates())
      for (const auto& [d, c] : p.terms()) acc[column(g, d)] += c;
    SparseRow row;
    for (auto& [c, v] : acc)
      if (!v.is_zero()) row.emplace_back(c, std::move(v));
    return row;
  }

  // d(z^e g) = e z^(e-1) g + z^e d(g);  z d/dz(z^e g) = e z^e g + z^e theta(g).
  SparseRow image_row(std::size_t g, int e) const {
    ModuleElement img;
    if (e > 0) img.add(g, Polynomial::monomial(log_form_ ? e : e - 1, Rational(e)));
    const PolyColumn& col = log_form_ ? module_.theta[g] : (*module_.derivation)[g];
    for (const auto& [i, p] : col) img.add(i, Polynomial::monomial(e) * p);
    return to_row(img);
  }

  ConnectionModule module_;
  bool log_form_;
  int depth_;
  int source_bound_ = 0;
  int count_bound_ = 0;
  int target_bound_ = 0;
  std::vector<std::vector<std::size_t>> column_of_;
  std::vector<std::pair<std::size_t, int>> monomials_;
  std::vector<int> column_weight_;
  std::optional<SparseEchelon> echelon_;
  std::vector<std::size_t> standard_;
  std::size_t kernel_dim_ = 0;
};

struct BruteForceDim {
  std::size_t dim = 0;
  int truncation_used = 0;
};

/// Starting truncation depth D0 = 3(k+1) + 6.
inline int initial_depth(int k) { return 3 * (k + 1) + 6; }

namespace detail {

inline Space complex_space(const ConnectionModule& m, Space where) {
  // The twisted module has no polynomial d/dz; its A^1 cohomology is by
  // definition the punctured-line cohomology.
  if (where == Space::middle) throw DomainError("brute force covers A1 and Gm only");
  if (where == Space::affine_line && !m.derivation) return Space::punctured_line;
  return where;
}

}  // namespace detail

/// Dimension of coker(d) (A^1) or coker(z d/dz) on the polynomial module (G_m),
/// doubling the truncation depth until two consecutive rounds agree.
inline BruteForceDim h1_dim_bruteforce(const ConnectionModule& m, Space where, const ConnectionLimits& limits = {}) {
  const Space space = detail::complex_space(m, where);
  int D = initial_depth(m.k);
  if (D > limits.degree_ceiling)
    throw StabilityError("h1_dim_bruteforce: initial depth " + std::to_string(D) + " above ceiling");
  auto round = [&](int depth) {
    TruncatedComplex tc(m, space, depth);
    if (tc.kernel_dim() != 0)
      throw InconsistencyError("h1_dim_bruteforce: nonzero kernel at depth " + std::to_string(depth));
    return tc.cokernel_dim();
  };
  std::size_t prev = round(D);
  while (true) {
    const int next = 2 * D;
    if (next > limits.degree_ceiling)
      throw StabilityError("h1_dim_bruteforce: no stabilization up to depth " + std::to_string(limits.degree_ceiling) +
                           " (last dim " + std::to_string(prev) + ")");
    const std::size_t cur = round(next);
    if (cur == prev) return {cur, next};
    prev = cur;
    D = next;
  }
}

/// G-level of a monomial class z^e u_a (dz/z) of the n = 2 family:
/// k+1 - (k + 2e + a + 2 rho)/3.
inline Rational monomial_g_level(int k, int e, int a, const Rational& rho) {
  return Rational(k + 1) - (Rational(k + 2 * e + a) + Rational(2) * rho) / Rational(3);
}

/// Residue at z = 0 of a dz/z-class: its coefficient vector at z = 0.
inline std::vector<Rational> residue(const ModuleElement& c, std::size_t rank) {
  std::vector<Rational> out(rank, Rational(0));
  for (const auto& [g, p] : c.coordinates()) out.at(g) = p.coeff(0);
  return out;
}

/// omega_i = z^(i-1) u_0 dz for i in [1, k'], with levels k+1 - (k+2i)/3.
inline CohomologyBasis h1_a1_basis(int k) {
  if (k < 1) throw DomainError("h1_a1_basis: k must be >= 1");
  CohomologyBasis b;
  b.space = Space::affine_line;
  b.k = k;
  for (int i = 1; i <= omega_count(k); ++i) {
    b.classes.push_back(ModuleElement::monomial(0, i - 1));
    b.g_levels.push_back(Rational(k + 1) - Rational(k + 2 * i, 3));
  }
  return b;
}

namespace detail {

// Coordinates x with sum x_i columns[i] = target, or nullopt when target is
// outside the span. Throws if the columns are dependent.
inline std::optional<std::vector<Rational>> solve_in_span(const std::vector<std::vector<Rational>>& columns,
                                                          const std::vector<Rational>& target) {
  const std::size_t dim = target.size();
  RationalMatrix a(dim, columns.size() + 1);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) a.set(i, j, columns[j].at(i));
  for (std::size_t i = 0; i < dim; ++i) a.set(i, columns.size(), target[i]);
  const auto red = row_reduce(a);
  const bool target_pivot = !red.pivots.empty() && red.pivots.back() == columns.size();
  const std::size_t basis_rank = red.rank - (target_pivot ? 1 : 0);
  if (basis_rank != columns.size())
    throw InconsistencyError("reduce_to_basis: basis classes are linearly dependent in cohomology");
  if (target_pivot) return std::nullopt;
  std::vector<Rational> x(columns.size(), Rational(0));
  for (std::size_t r = 0; r < red.pivots.size(); ++r) x[red.pivots[r]] = red.echelon.at(r, columns.size());
  return x;
}

inline TruncatedComplex stabilized_complex(const ConnectionModule& m, Space where,
                                           const std::vector<const ModuleElement*>& must_fit,
                                           const ConnectionLimits& limits) {
  const Space space = complex_space(m, where == Space::middle ? Space::affine_line : where);
  int D = h1_dim_bruteforce(m, space, limits).truncation_used;
  while (true) {
    TruncatedComplex tc(m, space, D);
    const bool ok = std::all_of(must_fit.begin(), must_fit.end(), [&](const ModuleElement* e) { return tc.fits(*e); });
    if (ok) return tc;
    D *= 2;
    if (D > limits.degree_ceiling) throw StabilityError("reduce_to_basis: element weight beyond the depth ceiling");
  }
}

}  // namespace detail

/// Unique coordinates of [c] in `basis` modulo the image of the connection.
inline std::vector<Rational> reduce_to_basis(const ModuleElement& c, const CohomologyBasis& basis,
                                             const ConnectionModule& m, const ConnectionLimits& limits = {}) {
  std::vector<const ModuleElement*> all{&c};
  for (const auto& b : basis.classes) all.push_back(&b);
  const TruncatedComplex tc = detail::stabilized_complex(m, basis.space, all, limits);
  std::vector<std::vector<Rational>> cols;
  for (const auto& b : basis.classes) cols.push_back(tc.normal_form(b));
  auto x = detail::solve_in_span(cols, tc.normal_form(c));
  if (!x) throw InconsistencyError("reduce_to_basis: class is not in the span of the basis");
  return *x;
}

/// Rank of a family of classes in cohomology (brute force).
inline std::size_t cohomology_rank(const std::vector<ModuleElement>& classes, Space where, const ConnectionModule& m,
                                   const ConnectionLimits& limits = {}) {
  std::vector<const ModuleElement*> all;
  for (const auto& b : classes) all.push_back(&b);
  const TruncatedComplex tc = detail::stabilized_complex(m, where, all, limits);
  RationalMatrix a(classes.size(), tc.cokernel_dim());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto nf = tc.normal_form(classes[i]);
    for (std::size_t j = 0; j < nf.size(); ++j) a.set(i, j, nf[j]);
  }
  return rank(a);
}

/// The monomial basis of coker(z d/dz) on the polynomial lattice:
///   z^(k'+1) u_0, ..., z u_0, u_0, u_1, ..., u_k   (k odd)
///   z^k' u_0, ..., z u_0, u_0, u_1, ..., u_k       (k even)
/// checked against the brute-force cokernel.
inline CohomologyBasis gm_cokernel_basis(int k, const Rational& rho = Rational(0), const ConnectionLimits& limits = {}) {
  const ConnectionModule m = build_symk(2, k, rho, limits);
  CohomologyBasis b;
  b.space = Space::punctured_line;
  b.k = k;
  b.twist = rho;
  const int top = k % 2 == 1 ? k_prime(k) + 1 : k_prime(k);
  for (int e = top; e >= 1; --e) {
    b.classes.push_back(ModuleElement::monomial(0, e));
    b.g_levels.push_back(monomial_g_level(k, e, 0, rho));
  }
  for (int a = 0; a <= k; ++a) {
    b.classes.push_back(ModuleElement::monomial(static_cast<std::size_t>(a), 0));
    b.g_levels.push_back(monomial_g_level(k, 0, a, rho));
  }
  const auto bf = h1_dim_bruteforce(m, Space::punctured_line, limits);
  if (bf.dim != b.size())
    throw InconsistencyError("gm_cokernel_basis: " + std::to_string(b.size()) + " classes but brute-force dimension " +
                             std::to_string(bf.dim));
  if (cohomology_rank(b.classes, Space::punctured_line, m, limits) != b.size())
    throw InconsistencyError("gm_cokernel_basis: listed classes are dependent");
  return b;
}

}  // namespace airy
