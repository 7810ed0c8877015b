#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <string>
#include <vector>

#include "airy/connection.hpp"
#include "airy/errors.hpp"
#include "airy/moments.hpp"
#include "airy/rational.hpp"

namespace airy {

enum class Family { Ai, AiMid, AiTildeMid };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Ai: return "Ai";
    case Family::AiMid: return "Ai-mid";
    case Family::AiTildeMid: return "Ai-tilde-mid";
  }
  return "?";
}

struct HodgeEntry {
  Rational p;
  Rational q;
  int h = 1;

  friend bool operator==(const HodgeEntry&, const HodgeEntry&) = default;
};

struct HodgeTable {
  int k = 0;
  Family family = Family::Ai;
  int weight = 0;
  std::vector<HodgeEntry> entries;  // sorted by p, then q
  int denominator_bound = 3;

  int total() const {
    int s = 0;
    for (const auto& e : entries) s += e.h;
    return s;
  }
  bool empty() const { return entries.empty(); }
};

/// Multiplicity of each p.
inline std::map<Rational, int> spectrum(const HodgeTable& t) {
  std::map<Rational, int> out;
  for (const auto& e : t.entries) out[e.p] += e.h;
  return out;
}

struct HodgeNumbers {
  HodgeTable full;
  HodgeTable mid;
};

namespace detail {

inline void sort_entries(std::vector<HodgeEntry>& v) {
  std::sort(v.begin(), v.end(), [](const HodgeEntry& a, const HodgeEntry& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  });
}

inline void add_pair(std::vector<HodgeEntry>& v, const Rational& lo, int weight) {
  const Rational hi = Rational(weight) - lo;
  v.push_back({lo, hi, 1});
  v.push_back({hi, lo, 1});
}

}  // namespace detail

/// h^{p,q} of H^1(A^1, Sym^k Ai) and of its middle part.
inline HodgeNumbers hodge_numbers(int k) {
  if (k < 2) throw DomainError("hodge_numbers: k must be >= 2, got " + std::to_string(k));
  const int kp = k_prime(k);
  const int w = k + 1;
  std::vector<HodgeEntry> common;
  std::vector<HodgeEntry> extra;
  if (k % 2 == 1) {
    for (int i = 1; i <= kp + 1; ++i) {
      const Rational p(k + 2 * i, 3);
      common.push_back({p, Rational(w) - p, 1});
    }
  } else if (k % 4 == 2) {
    for (int i = 1; i <= kp / 2; ++i) detail::add_pair(common, Rational(k + 2 * i, 3), w);
  } else {
    for (int i = 1; i <= (kp - 1) / 2; ++i) detail::add_pair(common, Rational(k + 2 * i, 3), w);
    extra.push_back({Rational(k + 2, 2), Rational(k + 2, 2), 1});
  }
  HodgeNumbers out;
  out.mid = HodgeTable{k, Family::AiMid, w, common, 3};
  common.insert(common.end(), extra.begin(), extra.end());
  out.full = HodgeTable{k, Family::Ai, w, std::move(common), 3};
  detail::sort_entries(out.full.entries);
  detail::sort_entries(out.mid.entries);
  return out;
}

/// sum h t^p, e.g. "t^{5/3} + t^{7/3}"; "0" for an empty table.
inline std::string hodge_polynomial(const HodgeTable& t) {
  const auto sp = spectrum(t);
  if (sp.empty()) return "0";
  std::string out;
  for (const auto& [p, h] : sp) {
    if (!out.empty()) out += " + ";
    if (h != 1) out += std::to_string(h);
    if (p.is_zero()) {
      if (h == 1) out += "1";
    } else if (p == Rational(1)) {
      out += "t";
    } else if (p.str().size() == 1) {
      out += "t^" + p.str();
    } else {
      out += "t^{" + p.str() + "}";
    }
  }
  return out;
}

enum class GFamily { Ai, LTwist, Tilde };

inline const char* gfamily_name(GFamily g) {
  switch (g) {
    case GFamily::Ai: return "Ai";
    case GFamily::LTwist: return "L-twist";
    case GFamily::Tilde: return "tilde";
  }
  return "?";
}

struct GLevelMultiset {
  int k = 0;
  GFamily which = GFamily::Ai;
  std::vector<Rational> levels;  // ascending

  int count(const Rational& l) const { return static_cast<int>(std::count(levels.begin(), levels.end(), l)); }
};

/// G-filtration levels of the omega_i (Ai) and of omega_i^-, eta_j^- (L-twist).
inline GLevelMultiset g_levels(int k, GFamily which) {
  if (k < 2) throw DomainError("g_levels: k must be >= 2, got " + std::to_string(k));
  GLevelMultiset out{k, which, {}};
  const Rational top(k + 1);
  if (which != GFamily::LTwist)
    for (int i = 1; i <= omega_count(k); ++i) out.levels.push_back(top - Rational(k + 2 * i, 3));
  if (which != GFamily::Ai) {
    for (int i = 1; i <= omega_count(k); ++i) out.levels.push_back(top - Rational(k + 2 * i + 1, 3));
    for (int j = 0; j <= k; ++j) out.levels.push_back(top - Rational(k + j + 1, 3));
  }
  std::sort(out.levels.begin(), out.levels.end());
  return out;
}

/// Graded dimensions of F on H^1_mid(A^1, Sym^k of the Fourier-dual Airy
/// module), indexed by level p - eps/3 and recorded as (level, k+1-level, h).
inline HodgeTable tilde_mid_hodge(int k) {
  if (k == 2)
    throw DomainError(
        "tilde_mid_hodge: k = 2 is excluded; the case split gives total mass 4 but dim H^1 = 3 "
        "(the primitive part would have negative dimension)");
  if (k < 4 || k % 2 != 0) throw DomainError("tilde_mid_hodge: k must be even and >= 4, got " + std::to_string(k));
  HodgeTable t;
  t.k = k;
  t.family = Family::AiTildeMid;
  t.weight = k + 1;
  for (int eps = 0; eps <= 2; ++eps) {
    for (int p = -1; p <= k + 3; ++p) {
      int h;
      if (eps == 0 && (p == k / 2 || p == k / 2 + 1))
        h = 1;
      else if (eps != 0 && p == k / 2 + 1)
        h = 1;
      else
        h = rho_preimage(k, eps, p - 1);
      if (h == 0) continue;
      const Rational level = Rational(p) - Rational(eps, 3);
      t.entries.push_back({level, Rational(k + 1) - level, h});
    }
  }
  detail::sort_entries(t.entries);
  return t;
}

enum class YuVariant { plain, twisted, odd_simple };

inline const char* yu_variant_name(YuVariant v) {
  switch (v) {
    case YuVariant::plain: return "plain";
    case YuVariant::twisted: return "twisted";
    case YuVariant::odd_simple: return "odd-simple";
  }
  return "?";
}

struct YuLevel {
  Rational m;
  bool admissible = false;
  Rational f_level;
};

/// Pole order m of the Yu-filtration representative and the resulting F-level.
inline YuLevel yu_pole_level(int k, int r, int nu, YuVariant variant) {
  YuLevel out;
  bool in_range = nu >= 0 && nu <= k;
  switch (variant) {
    case YuVariant::plain:
      out.m = Rational(k + 2 * r + nu, 3);
      in_range = in_range && r >= 1;
      out.admissible = in_range && k >= 4 * r + 2 * nu;
      break;
    case YuVariant::twisted:
      out.m = Rational(k + 2 * r + nu + 1, 3);
      in_range = in_range && r >= 0;
      out.admissible = in_range && k >= 4 * r + 2 * nu + 2;
      break;
    case YuVariant::odd_simple:
      out.m = Rational(k + 2 * r + nu, 3);
      in_range = in_range && r >= 1;
      out.admissible = in_range && k % 2 == 1;
      break;
  }
  out.f_level = Rational(k + 1) - out.m;
  return out;
}

struct CheckResult {
  std::string check;
  bool passed = true;
  std::string expected;
  std::string got;
};

struct KReport {
  int k = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

struct VerifyReport {
  std::vector<KReport> per_k;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : per_k)
      for (const auto& c : r.checks) n += !c.passed;
    return n;
  }
  bool passed() const { return failures() == 0; }
};

struct VerifyOptions {
  bool bruteforce = false;
  bool parallel = true;
  MomentLimits moment_limits;
  ConnectionLimits connection_limits;
};

namespace detail {

inline std::string levels_str(const std::vector<Rational>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "}";
}

inline std::vector<Rational> p_multiset(const HodgeTable& t) {
  std::vector<Rational> out;
  for (const auto& e : t.entries)
    for (int i = 0; i < e.h; ++i) out.push_back(e.p);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool table_symmetric(const HodgeTable& t) {
  std::map<std::pair<Rational, Rational>, int> m;
  for (const auto& e : t.entries) m[{e.p, e.q}] += e.h;
  for (const auto& [pq, h] : m) {
    auto it = m.find({pq.second, pq.first});
    if (it == m.end() || it->second != h) return false;
  }
  return true;
}

inline bool levels_symmetric(const std::vector<Rational>& levels, const Rational& center2) {
  std::vector<Rational> mirrored;
  for (const auto& l : levels) mirrored.push_back(center2 - l);
  std::sort(mirrored.begin(), mirrored.end());
  return mirrored == levels;
}

inline CheckResult make_check(std::string name, const std::string& expected, const std::string& got) {
  return {std::move(name), expected == got, expected, got};
}

inline void check_table_shape(KReport& r, const HodgeTable& t) {
  const std::string tag = std::string(family_name(t.family));
  r.checks.push_back(make_check(tag + " symmetry", "symmetric", table_symmetric(t) ? "symmetric" : "asymmetric"));
  int ones = 0, integral = 0, off_weight = 0;
  for (const auto& e : t.entries) {
    ones += e.h == 1;
    integral += (e.p + e.q).is_integer();
    off_weight += e.p + e.q != Rational(t.weight);
  }
  const std::string n = std::to_string(t.entries.size());
  r.checks.push_back(make_check(tag + " all ones", n, std::to_string(ones)));
  r.checks.push_back(make_check(tag + " p+q integral", n, std::to_string(integral)));
  const int allowed = (t.family == Family::Ai && t.k % 4 == 0) ? 1 : 0;
  r.checks.push_back(make_check(tag + " entries off weight " + std::to_string(t.weight), std::to_string(allowed),
                                std::to_string(off_weight)));
}

inline KReport verify_one(int k, const VerifyOptions& opt) {
  KReport r;
  r.k = k;
  const HodgeNumbers hn = hodge_numbers(k);
  const H1Dims dims = h1_dims(2, k, opt.moment_limits);

  // (a)
  check_table_shape(r, hn.full);
  check_table_shape(r, hn.mid);

  // (b)
  r.checks.push_back(make_check("Ai total", std::to_string(dims.all), std::to_string(hn.full.total())));
  r.checks.push_back(make_check("Ai-mid total", std::to_string(dims.mid), std::to_string(hn.mid.total())));
  if (opt.bruteforce) {
    const auto bf = h1_dim_bruteforce(build_symk(2, k, Rational(0), opt.connection_limits), Space::affine_line,
                                      opt.connection_limits);
    r.checks.push_back(make_check("brute-force H1(A1)", std::to_string(dims.all), std::to_string(bf.dim)));
  }

  const Rational top(k + 1);
  if (k % 2 == 1) {
    // (c)
    r.checks.push_back(make_check("Ai p-levels = G-levels", levels_str(g_levels(k, GFamily::Ai).levels),
                                  levels_str(p_multiset(hn.full))));
    // (f), odd
    std::vector<Rational> f_expected, f_got;
    for (int i = 1; i <= k_prime(k) + 1; ++i) {
      const YuLevel y = yu_pole_level(k, i, 0, YuVariant::odd_simple);
      f_expected.push_back(top - Rational(k + 2 * i, 3));
      f_got.push_back(y.admissible ? y.f_level : Rational(-1000));
    }
    r.checks.push_back(make_check("Yu odd-simple levels", levels_str(f_expected), levels_str(f_got)));
    return r;
  }

  const Rational upper = Rational(k / 2 + 1);

  // (d)
  if (k >= 4) {
    const HodgeTable tilde = tilde_mid_hodge(k);
    const GLevelMultiset gt = g_levels(k, GFamily::Tilde);
    std::vector<Rational> from_table, from_g;
    for (const auto& l : p_multiset(tilde))
      if (l > upper) from_table.push_back(l);
    for (const auto& l : gt.levels)
      if (l > upper) from_g.push_back(l);
    r.checks.push_back(make_check("tilde levels > k/2+1 = G-levels", levels_str(from_g), levels_str(from_table)));
    r.checks.push_back(make_check("tilde level symmetry", "symmetric",
                                  levels_symmetric(p_multiset(tilde), top) ? "symmetric" : "asymmetric"));
  }

  // (e)
  const auto mid_p = p_multiset(hn.mid);
  r.checks.push_back(
      make_check("Ai-mid p symmetry", "symmetric", levels_symmetric(mid_p, top) ? "symmetric" : "asymmetric"));
  std::vector<Rational> mid_upper, omega_upper;
  for (const auto& l : mid_p)
    if (l > upper) mid_upper.push_back(l);
  for (int i = 1; 4 * i < k; ++i) omega_upper.push_back(top - Rational(k + 2 * i, 3));
  std::sort(omega_upper.begin(), omega_upper.end());
  r.checks.push_back(make_check("Ai-mid levels > k/2+1 = omega levels i < k/4", levels_str(omega_upper),
                                levels_str(mid_upper)));

  // (f), even
  auto yu_check = [&](const std::string& name, int r0, int nu, YuVariant v, const Rational& expected) {
    const YuLevel y = yu_pole_level(k, r0, nu, v);
    const std::string got = y.admissible ? y.f_level.str() : "inadmissible";
    r.checks.push_back(make_check(name, expected.str(), got));
  };
  for (int i = 1; i <= k / 4; ++i)
    yu_check("Yu omega_" + std::to_string(i), i, 0, YuVariant::plain, top - Rational(k + 2 * i, 3));
  for (int i = 1; i <= k_prime(k) / 2; ++i)
    yu_check("Yu omega^-_" + std::to_string(i), i, 0, YuVariant::twisted, top - Rational(k + 2 * i + 1, 3));
  for (int j = 0; j <= k_prime(k); ++j)
    yu_check("Yu eta^-_" + std::to_string(j), 0, j, YuVariant::twisted, top - Rational(k + j + 1, 3));

  // M_{k,eps} invariants
  int nu_total = 0;
  std::vector<int> nu(3);
  for (int eps = 0; eps <= 2; ++eps) {
    const MkInvariants m = mk_invariants(k, eps);
    nu[static_cast<std::size_t>(eps)] = m.nu;
    nu_total += m.nu;
    std::vector<Rational> pts = m.singular_points;
    std::sort(pts.begin(), pts.end());
    const bool distinct = std::adjacent_find(pts.begin(), pts.end()) == pts.end();
    r.checks.push_back(make_check("M_k," + std::to_string(eps) + " singular points",
                                  std::to_string(k + 1) + " distinct",
                                  std::to_string(pts.size()) + (distinct ? " distinct" : " repeated")));
  }
  r.checks.push_back(make_check("nu partition", std::to_string(k + 1), std::to_string(nu_total)));
  for (int eps = 0; eps <= 2; ++eps) {
    const int rank = mk_invariants(k, eps).rank;
    r.checks.push_back(make_check("M_k," + std::to_string(eps) + " rank = k+1 - nu",
                                  std::to_string(k + 1 - nu[static_cast<std::size_t>(mod3(-eps))]),
                                  std::to_string(rank)));
  }
  return r;
}

}  // namespace detail

/// Cross-checks the Hodge tables against dimensions, G-levels and pole orders.
/// Reports are ordered as the input k values.
inline VerifyReport verify(const std::vector<int>& ks, const VerifyOptions& opt = {}) {
  for (int k : ks)
    if (k < 2) throw DomainError("verify: k must be >= 2, got " + std::to_string(k));
  VerifyReport report;
  if (!opt.parallel) {
    for (int k : ks) report.per_k.push_back(detail::verify_one(k, opt));
    return report;
  }
  std::vector<std::future<KReport>> jobs;
  jobs.reserve(ks.size());
  for (int k : ks) jobs.push_back(std::async(std::launch::async, [k, &opt] { return detail::verify_one(k, opt); }));
  for (auto& j : jobs) report.per_k.push_back(j.get());
  return report;
}

}  // namespace airy
