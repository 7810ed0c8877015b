#include <gtest/gtest.h>

#include "airy/asymptotics.hpp"
#include "airy/moments.hpp"

using namespace airy;

namespace {

// c_n from the ratio c_{n+1}/c_n = (6n+1)(6n+3)(6n+5) / (216 (2n+1)(n+1)).
std::vector<mpq_class> airy_coefficients_by_ratio(int count) {
  std::vector<mpq_class> c{1};
  for (int n = 0; n + 1 < count; ++n) {
    mpq_class r((6 * n + 1) * (6 * n + 3) * (6 * n + 5), 216 * (2 * n + 1) * (n + 1));
    r.canonicalize();
    c.push_back(c.back() * r);
  }
  return c;
}

}  // namespace

TEST(Asymptotics, AiryCoefficients) {
  EXPECT_EQ(airy_coefficient(0), Rational(1));
  EXPECT_EQ(airy_coefficient(1), Rational(5, 72));
  EXPECT_EQ(airy_coefficient(2), Rational(385, 10368));
  const auto oracle = airy_coefficients_by_ratio(25);
  for (unsigned n = 0; n < oracle.size(); ++n) EXPECT_EQ(airy_coefficient(n).raw(), oracle[n]) << n;
}

TEST(Asymptotics, AiBiSeries) {
  const auto s = aibi_series(6);
  EXPECT_EQ(s.offset(), Rational(1, 2));
  EXPECT_EQ(s.step(), Rational(3));
  EXPECT_EQ(s[0], Rational(1));
  EXPECT_EQ(s[1], Rational(5, 32));
  EXPECT_EQ(s[2], Rational(1155, 2048));
}

TEST(Asymptotics, SymmetricSquareOperator) {
  // products of Airy solutions satisfy P''' - 4 z P' - 2 P = 0
  const auto op = symmetric_square_airy_operator();
  ASSERT_EQ(op.order(), 3);
  EXPECT_EQ(op.coeffs[3], Polynomial(1));
  EXPECT_TRUE(op.coeffs[2].is_zero());
  EXPECT_EQ(op.coeffs[1], Polynomial::monomial(1, Rational(-4)));
  EXPECT_EQ(op.coeffs[0], Polynomial(-2));
}

TEST(Asymptotics, OdeOracleAgrees) {
  EXPECT_EQ(aibi_series(40), aibi_series_ode_oracle(40));
}

TEST(Asymptotics, SolveAtInfinityRejectsNonIndicial) {
  EXPECT_THROW(solve_at_infinity(symmetric_square_airy_operator(), Rational(1, 3), 4), DomainError);
}

TEST(Asymptotics, GammaTables) {
  EXPECT_EQ(gamma(4, 3).at(Rational(4)), Rational(5, 16));
  EXPECT_EQ(gamma(8, 3).at(Rational(5)), Rational(5, 8));
  EXPECT_EQ(gamma(16, 3).at(Rational(7)), Rational(5, 4));
  const auto g = gamma(12, 5);
  EXPECT_EQ(g.offset, Rational(3));
  EXPECT_EQ(g.at(Rational(4)), Rational(0));
  EXPECT_EQ(g.at(Rational(2)), Rational(0));
  EXPECT_THROW(g.at(Rational(3 + 15)), std::out_of_range);
  EXPECT_THROW(gamma(5, 3), DomainError);
  // gamma_k = (aibi)^(k/2): compare with direct multiplication
  const auto a = aibi_series(10);
  EXPECT_EQ(gamma(6, 10).values, series_mul(series_mul(a, a), a).coefficients());
}

TEST(Asymptotics, MidBasis) {
  for (int k : {3, 5, 6, 10}) {
    const auto b = mid_basis(k);
    EXPECT_EQ(b.space, Space::middle);
    EXPECT_EQ(static_cast<std::int64_t>(b.size()), h1_dims(2, k).mid) << k;
  }
  const auto b8 = mid_basis(8);
  ASSERT_EQ(b8.size(), 2u);
  // omega_1 has no gamma correction (1 is off the lattice 2 + 3Z); omega_3 neither
  EXPECT_EQ(b8.classes[0], ModuleElement::monomial(0, 0));
  EXPECT_EQ(b8.classes[1], ModuleElement::monomial(0, 2));
  const auto b16 = mid_basis(16);
  // omega_7 - gamma_{16,7} omega_4
  const auto expected = ModuleElement::monomial(0, 6) - Rational(5, 4) * ModuleElement::monomial(0, 3);
  EXPECT_EQ(b16.classes[5], expected);
  EXPECT_EQ(mid_quotient_class(16), ModuleElement::monomial(0, 3));
  EXPECT_THROW(mid_quotient_class(6), DomainError);
}
