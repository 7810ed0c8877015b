#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "airy/hodge.hpp"

using namespace airy;

namespace {

using Pairs = std::vector<std::pair<Rational, Rational>>;

Pairs pairs(const HodgeTable& t) {
  Pairs out;
  for (const auto& e : t.entries) {
    EXPECT_EQ(e.h, 1);
    out.emplace_back(e.p, e.q);
  }
  return out;
}

std::map<Rational, int> level_counts(const HodgeTable& t) {
  std::map<Rational, int> m;
  for (const auto& e : t.entries) m[e.p] += e.h;
  return m;
}

}  // namespace

TEST(Hodge, GoldenTables) {
  const auto h3 = hodge_numbers(3);
  EXPECT_EQ(pairs(h3.full), (Pairs{{Rational(5, 3), Rational(7, 3)}, {Rational(7, 3), Rational(5, 3)}}));
  EXPECT_EQ(h3.full.weight, 4);

  const auto h4 = hodge_numbers(4);
  EXPECT_EQ(pairs(h4.full), (Pairs{{Rational(3), Rational(3)}}));
  EXPECT_TRUE(h4.mid.empty());

  const auto h5 = hodge_numbers(5);
  EXPECT_EQ(pairs(h5.full), (Pairs{{Rational(7, 3), Rational(11, 3)}, {Rational(3), Rational(3)},
                                   {Rational(11, 3), Rational(7, 3)}}));

  const auto h6 = hodge_numbers(6);
  EXPECT_EQ(pairs(h6.full), (Pairs{{Rational(8, 3), Rational(13, 3)}, {Rational(13, 3), Rational(8, 3)}}));
  EXPECT_EQ(pairs(h6.mid), pairs(h6.full));

  const auto h8 = hodge_numbers(8);
  EXPECT_EQ(pairs(h8.full), (Pairs{{Rational(10, 3), Rational(17, 3)}, {Rational(5), Rational(5)},
                                   {Rational(17, 3), Rational(10, 3)}}));
  EXPECT_EQ(pairs(h8.mid), (Pairs{{Rational(10, 3), Rational(17, 3)}, {Rational(17, 3), Rational(10, 3)}}));
  EXPECT_THROW(hodge_numbers(1), DomainError);
}

TEST(Hodge, Polynomial) {
  EXPECT_EQ(hodge_polynomial(hodge_numbers(3).full), "t^{5/3} + t^{7/3}");
  EXPECT_EQ(hodge_polynomial(hodge_numbers(4).full), "t^3");
  EXPECT_EQ(hodge_polynomial(hodge_numbers(4).mid), "0");
  EXPECT_EQ(hodge_polynomial(tilde_mid_hodge(6)), "t^{7/3} + 2t^{8/3} + t^3 + t^{10/3} + t^{11/3} + t^4 + 2t^{13/3} + t^{14/3}");
}

TEST(Hodge, GLevels) {
  EXPECT_EQ(g_levels(3, GFamily::Ai).levels, (std::vector<Rational>{Rational(5, 3), Rational(7, 3)}));
  EXPECT_EQ(g_levels(6, GFamily::Ai).levels, (std::vector<Rational>{Rational(11, 3), Rational(13, 3)}));
  const auto lt = g_levels(6, GFamily::LTwist);
  std::vector<Rational> expected{Rational(4), Rational(10, 3), Rational(14, 3), Rational(13, 3), Rational(4),
                                 Rational(11, 3), Rational(10, 3), Rational(3), Rational(8, 3)};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(lt.levels, expected);
  EXPECT_EQ(g_levels(6, GFamily::Tilde).levels.size(), 11u);
}

TEST(Hodge, GLevelsMatchMonomialRule) {
  // the L-twist levels are the levels of the listed G_m cokernel basis
  for (int k : {2, 3, 4, 5}) {
    auto from_basis = gm_cokernel_basis(k, Rational(1, 2)).g_levels;
    std::sort(from_basis.begin(), from_basis.end());
    EXPECT_EQ(from_basis, g_levels(k, GFamily::LTwist).levels) << k;
  }
}

TEST(Hodge, TildeMid) {
  const auto t6 = tilde_mid_hodge(6);
  const std::map<Rational, int> expected{{Rational(3), 1},     {Rational(4), 1},      {Rational(8, 3), 2},
                                         {Rational(11, 3), 1}, {Rational(14, 3), 1},  {Rational(7, 3), 1},
                                         {Rational(10, 3), 1}, {Rational(13, 3), 2}};
  EXPECT_EQ(level_counts(t6), expected);
  EXPECT_EQ(t6.total(), 10);
  EXPECT_EQ(tilde_mid_hodge(4).total(), 6);
  for (const auto& e : t6.entries) EXPECT_EQ(e.p + e.q, Rational(7));
  EXPECT_THROW(tilde_mid_hodge(2), DomainError);
  EXPECT_THROW(tilde_mid_hodge(7), DomainError);
}

TEST(Hodge, YuPoleLevel) {
  auto y = yu_pole_level(6, 1, 0, YuVariant::plain);
  EXPECT_EQ(y.m, Rational(8, 3));
  EXPECT_TRUE(y.admissible);
  EXPECT_EQ(y.f_level, Rational(13, 3));
  y = yu_pole_level(6, 0, 0, YuVariant::twisted);
  EXPECT_EQ(y.m, Rational(7, 3));
  EXPECT_TRUE(y.admissible);
  EXPECT_EQ(y.f_level, Rational(14, 3));
  EXPECT_FALSE(yu_pole_level(6, 2, 0, YuVariant::plain).admissible);
  EXPECT_FALSE(yu_pole_level(6, 0, 0, YuVariant::plain).admissible);
  EXPECT_FALSE(yu_pole_level(6, 1, -1, YuVariant::twisted).admissible);
  EXPECT_FALSE(yu_pole_level(6, 1, 0, YuVariant::odd_simple).admissible);
  for (int k = 3; k <= 21; k += 2)
    for (int i = 1; i <= (k - 1) / 2 + 1; ++i) {
      const auto o = yu_pole_level(k, i, 0, YuVariant::odd_simple);
      EXPECT_TRUE(o.admissible);
      EXPECT_EQ(o.f_level, Rational(k + 1) - Rational(k + 2 * i, 3));
    }
}

TEST(Hodge, VerifyExamples) {
  for (int k : {3, 4, 6}) {
    const auto r = verify({k});
    ASSERT_EQ(r.per_k.size(), 1u);
    EXPECT_TRUE(r.passed()) << k;
    EXPECT_FALSE(r.per_k[0].checks.empty());
  }
  std::vector<int> ks;
  for (int k = 2; k <= 20; ++k) ks.push_back(k);
  const auto r = verify(ks);
  EXPECT_EQ(r.failures(), 0u);
  for (std::size_t i = 0; i < ks.size(); ++i) EXPECT_EQ(r.per_k[i].k, ks[i]);
}

TEST(Hodge, VerifyWithBruteForce) {
  VerifyOptions opt;
  opt.bruteforce = true;
  const auto r = verify({5, 8}, opt);
  EXPECT_TRUE(r.passed());
  EXPECT_THROW(verify({1}), DomainError);
}
