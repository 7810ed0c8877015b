#include <gtest/gtest.h>

#include <map>
#include <utility>

#include "airy/connection.hpp"

using namespace airy;

namespace {

int binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

// Image of z^e u_a dz under d/dz on Sym^k Ai, straight from the Leibniz rule
// d u_a = (k-a) u_{a+1} + a z u_{a-1}. Keys are (z-degree, a).
std::map<std::pair<int, int>, mpq_class> image(int k, int e, int a) {
  std::map<std::pair<int, int>, mpq_class> v;
  if (e > 0) v[{e - 1, a}] += e;
  if (a < k) v[{e, a + 1}] += k - a;
  if (a > 0) v[{e + 1, a - 1}] += a;
  return v;
}

// True when target lies in the span of the images of z^e u_a, e <= depth.
bool in_image(int k, int depth, const std::map<std::pair<int, int>, mpq_class>& target) {
  std::vector<std::map<std::pair<int, int>, mpq_class>> rows;
  for (int e = 0; e <= depth; ++e)
    for (int a = 0; a <= k; ++a) rows.push_back(image(k, e, a));
  std::map<std::pair<int, int>, int> col;
  for (const auto& r : rows)
    for (const auto& [key, v] : r) col.emplace(key, 0);
  for (const auto& [key, v] : target) col.emplace(key, 0);
  int c = 0;
  for (auto& [key, idx] : col) idx = c++;
  auto densify = [&](const std::map<std::pair<int, int>, mpq_class>& r) {
    std::vector<mpq_class> d(static_cast<std::size_t>(c));
    for (const auto& [key, v] : r) d[static_cast<std::size_t>(col[key])] = v;
    return d;
  };
  auto rank_of = [&](std::vector<std::vector<mpq_class>> a) {
    std::size_t r = 0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(c) && r < a.size(); ++j) {
      std::size_t p = r;
      while (p < a.size() && a[p][j] == 0) ++p;
      if (p == a.size()) continue;
      std::swap(a[p], a[r]);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (i != r && a[i][j] != 0) {
          const mpq_class f = a[i][j] / a[r][j];
          for (std::size_t t = j; t < static_cast<std::size_t>(c); ++t) a[i][t] -= f * a[r][t];
        }
      ++r;
    }
    return r;
  };
  std::vector<std::vector<mpq_class>> dense;
  for (const auto& r : rows) dense.push_back(densify(r));
  const std::size_t base = rank_of(dense);
  dense.push_back(densify(target));
  return rank_of(dense) == base;
}

}  // namespace

TEST(Connection, AiryCompanionForm) {
  const auto m = build_airy(3);
  EXPECT_EQ(m.rank(), 3u);
  EXPECT_EQ(m.entry(1, 0), Polynomial(1));
  EXPECT_EQ(m.entry(2, 1), Polynomial(1));
  EXPECT_EQ(m.entry(0, 2), Polynomial::monomial(1));
  EXPECT_TRUE(m.entry(0, 0).is_zero());
  EXPECT_THROW(build_airy(1), DomainError);
}

TEST(Connection, SymkRanks) {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 6; ++k) EXPECT_EQ(build_symk(n, k).rank(), static_cast<std::size_t>(binom(n - 1 + k, k)));
}

TEST(Connection, ExplicitFormulaMatchesLeibniz) {
  for (int k = 1; k <= 10; ++k) {
    const auto a = build_symk(2, k);
    const auto b = build_symk_leibniz(2, k);
    ASSERT_EQ(a.rank(), b.rank());
    EXPECT_EQ(a.exponents, b.exponents);
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t j = 0; j < a.rank(); ++j) {
        EXPECT_EQ(a.entry(i, j), b.entry(i, j)) << k << " " << i << " " << j;
        EXPECT_EQ(a.theta_entry(i, j), b.theta_entry(i, j));
      }
  }
}

TEST(Connection, ThetaRecursion) {
  const int k = 5;
  const auto m = build_symk(2, k, Rational(1, 2));
  EXPECT_FALSE(m.derivation.has_value());
  for (int a = 0; a <= k; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    EXPECT_EQ(m.theta_entry(ua, ua), Polynomial(Rational(1, 2)));
    if (a < k) EXPECT_EQ(m.theta_entry(ua + 1, ua), Polynomial::monomial(1, Rational(k - a)));
    if (a > 0) EXPECT_EQ(m.theta_entry(ua - 1, ua), Polynomial::monomial(2, Rational(a)));
  }
}

TEST(Connection, TwistRestrictions) {
  EXPECT_THROW(build_symk(2, 3, Rational(1, 3)), DomainError);
  EXPECT_THROW(build_symk(3, 3, Rational(1, 2)), DomainError);
  EXPECT_THROW(build_symk(2, 0), DomainError);
  ConnectionLimits tiny;
  tiny.max_rank = 10;
  EXPECT_THROW(build_symk(3, 5, Rational(0), tiny), SizeLimitError);
}

TEST(Connection, BruteForceAffineLineSmallK) {
  for (int k = 1; k <= 10; ++k) {
    const int expected = k % 2 == 1 ? (k - 1) / 2 + 1 : (k - 1) / 2;
    EXPECT_EQ(h1_dim_bruteforce(build_symk(2, k), Space::affine_line).dim, static_cast<std::size_t>(expected)) << k;
  }
}

TEST(Connection, BruteForcePuncturedLine) {
  // k = 2: {u0, u1, u2}; the class z u0 dz/z is exact there.
  EXPECT_EQ(h1_dim_bruteforce(build_symk(2, 2), Space::punctured_line).dim, 3u);
  EXPECT_EQ(h1_dim_bruteforce(build_symk(2, 3), Space::punctured_line).dim, 6u);
  EXPECT_EQ(h1_dim_bruteforce(build_symk(2, 3, Rational(1, 2)), Space::punctured_line).dim, 6u);
  // the twisted module has no A^1 form of its own
  EXPECT_EQ(h1_dim_bruteforce(build_symk(2, 4, Rational(1, 2)), Space::affine_line).dim, 6u);
}

TEST(Connection, StabilityCeiling) {
  ConnectionLimits lim;
  lim.degree_ceiling = 20;
  EXPECT_THROW(h1_dim_bruteforce(build_symk(2, 6), Space::affine_line, lim), StabilityError);
}

TEST(Connection, GmCokernelBasis) {
  const auto b = gm_cokernel_basis(2);
  ASSERT_EQ(b.size(), 3u);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(b.classes[a], ModuleElement::monomial(a, 0));
  const auto b5 = gm_cokernel_basis(5, Rational(1, 2));
  EXPECT_EQ(b5.size(), 9u);
  EXPECT_EQ(b5.classes.front(), ModuleElement::monomial(0, 3));
  EXPECT_EQ(b5.g_levels.front(), Rational(6) - Rational(5 + 6 + 1, 3));
}

TEST(Connection, Residue) {
  ModuleElement c = ModuleElement::monomial(0, 0, Rational(2));
  c += ModuleElement::monomial(2, 1);
  c += ModuleElement::monomial(1, 0, Rational(-1, 3));
  const auto r = residue(c, 3);
  EXPECT_EQ(r, (std::vector<Rational>{Rational(2), Rational(-1, 3), Rational(0)}));
}

TEST(Connection, AffineBasisAndLevels) {
  const auto b = h1_a1_basis(5);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b.classes[2], ModuleElement::monomial(0, 2));
  EXPECT_EQ(b.g_levels[0], Rational(11, 3));
  EXPECT_EQ(h1_a1_basis(4).size(), 1u);
}

TEST(Connection, ReduceToBasisMatchesDenseOracle) {
  // k = 4: H^1(A^1) is spanned by u0 dz; z^3 u0 dz = c u0 dz in cohomology.
  const auto m = build_symk(2, 4);
  const auto coords = reduce_to_basis(ModuleElement::monomial(0, 3), h1_a1_basis(4), m);
  ASSERT_EQ(coords.size(), 1u);
  EXPECT_EQ(coords[0], Rational(5, 16));
  std::map<std::pair<int, int>, mpq_class> target{{{3, 0}, 1}, {{0, 0}, mpq_class(-5, 16)}};
  EXPECT_TRUE(in_image(4, 12, target));
  std::map<std::pair<int, int>, mpq_class> wrong{{{3, 0}, 1}, {{0, 0}, mpq_class(-1, 3)}};
  EXPECT_FALSE(in_image(4, 12, wrong));
}

TEST(Connection, ReduceToBasisCoordinatesAreConsistent) {
  // basis combination plus an exact form
  const int k = 7;
  const auto m = build_symk(2, k);
  const auto basis = h1_a1_basis(k);
  ModuleElement c;
  const std::vector<Rational> x{Rational(3), Rational(-1, 2), Rational(0), Rational(7, 5)};
  for (std::size_t i = 0; i < basis.size(); ++i) c += x[i] * basis.classes[i];
  // add d(z^2 u_3) = 2 z u_3 + 4 z^2 u_4 + 3 z^3 u_2
  c += ModuleElement::monomial(3, 1, Rational(2));
  c += ModuleElement::monomial(4, 2, Rational(k - 3));
  c += ModuleElement::monomial(2, 3, Rational(3));
  EXPECT_EQ(reduce_to_basis(c, basis, m), x);
}

TEST(Connection, CohomologyRankDetectsDependence) {
  const auto m = build_symk(2, 5);
  std::vector<ModuleElement> cls{ModuleElement::monomial(0, 0), ModuleElement::monomial(0, 1),
                                 ModuleElement::monomial(0, 0) + ModuleElement::monomial(0, 1)};
  EXPECT_EQ(cohomology_rank(cls, Space::affine_line, m), 2u);
}

TEST(Connection, GeneralOrderDimensions) {
  EXPECT_EQ(h1_dim_bruteforce(build_symk(3, 3), Space::affine_line).dim, 2u);
  EXPECT_EQ(h1_dim_bruteforce(build_symk(4, 3), Space::affine_line).dim, 5u);
}
