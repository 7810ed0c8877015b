#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "airy/asymptotics.hpp"
#include "airy/connection.hpp"
#include "airy/errors.hpp"
#include "airy/hodge.hpp"
#include "airy/moments.hpp"
#include "airy/rational.hpp"

namespace airy::io {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv, latex };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "latex") return Format::latex;
  throw std::invalid_argument("unknown format '" + s + "'");
}

inline std::string latex_rational(const Rational& r) {
  if (r.is_integer()) return r.str();
  const std::string sign = r.sign() < 0 ? "-" : "";
  const Rational a = r.sign() < 0 ? -r : r;
  return sign + "\\frac{" + a.numerator().get_str() + "}{" + a.denominator().get_str() + "}";
}

/// "z^2*u0 + 3/2*z*u1", with the form suffix "dz" or "dz/z".
inline std::string element_str(const ModuleElement& e, const std::vector<std::string>& labels, Space space) {
  std::string out;
  for (const auto& [g, p] : e.coordinates()) {
    const std::string label = g < labels.size() ? labels[g] : "g" + std::to_string(g);
    std::string term;
    if (p.terms().size() == 1) {
      const auto& [d, c] = *p.terms().begin();
      std::string z = d == 0 ? "" : (d == 1 ? "z" : "z^" + std::to_string(d));
      std::string coeff = c == Rational(1) ? "" : (c == Rational(-1) ? "-" : c.str() + "*");
      term = coeff + (z.empty() ? "" : z + "*") + label;
    } else {
      term = "(" + p.str() + ")*" + label;
    }
    if (out.empty())
      out = term;
    else
      out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
  }
  if (out.empty()) out = "0";
  return out + (space == Space::punctured_line ? " dz/z" : " dz");
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

// Left-aligned columns separated by two spaces.
inline std::string text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    w[c] = header[c].size();
    for (const auto& r : rows) w[c] = std::max(w[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) s += c + 1 == r.size() ? r[c] : pad(r[c], w[c] + 2);
    return s + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto line = [](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) s += (c ? "," : "") + csv_field(r[c]);
    return s + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

inline std::string latex_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out = "\\begin{tabular}{" + std::string(header.size(), 'c') + "}\n\\hline\n";
  auto line = [](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) s += (c ? " & " : "") + r[c];
    return s + " \\\\\n";
  };
  out += line(header) + "\\hline\n";
  for (const auto& r : rows) out += line(r);
  return out + "\\hline\n\\end{tabular}\n";
}

inline std::string dump(const Json& j) { return j.dump() + "\n"; }

// A single object for one k, an array for a range.
inline Json collect(const std::vector<Json>& items) {
  if (items.size() == 1) return items.front();
  Json a = Json::array();
  for (const auto& i : items) a.push_back(i);
  return a;
}

}  // namespace detail

struct DimsRow {
  int n = 2;
  int k = 0;
  H1Dims dims;
  std::optional<std::size_t> bruteforce;
};

inline Json to_json(const DimsRow& r, bool with_k) {
  Json j;
  if (with_k) j["k"] = r.k;
  j["all"] = r.dims.all;
  j["mid"] = r.dims.mid;
  if (r.bruteforce) j["bruteforce"] = *r.bruteforce;
  return j;
}

inline std::string render_dims(const std::vector<DimsRow>& rows, Format f) {
  if (f == Format::json) {
    std::vector<Json> items;
    for (const auto& r : rows) items.push_back(to_json(r, rows.size() > 1));
    return detail::dump(detail::collect(items));
  }
  const bool bf = !rows.empty() && rows.front().bruteforce.has_value();
  std::vector<std::string> header{"n", "k", "all", "mid"};
  if (bf) header.push_back("bruteforce");
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) {
    std::vector<std::string> line{std::to_string(r.n), std::to_string(r.k), std::to_string(r.dims.all),
                                  std::to_string(r.dims.mid)};
    if (bf) line.push_back(std::to_string(*r.bruteforce));
    body.push_back(std::move(line));
  }
  if (f == Format::csv) return detail::csv_table(header, body);
  if (f == Format::latex) return detail::latex_table(header, body);
  return detail::text_table(header, body);
}

inline Json to_json(const HodgeTable& t) {
  Json j;
  j["k"] = t.k;
  j["family"] = family_name(t.family);
  j["weight"] = t.weight;
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json x;
    x["p"] = e.p.str();
    x["q"] = e.q.str();
    x["h"] = e.h;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline std::string render_hodge(const std::vector<HodgeTable>& tables, Format f) {
  if (f == Format::json) {
    std::vector<Json> items;
    for (const auto& t : tables) items.push_back(to_json(t));
    return detail::dump(detail::collect(items));
  }
  if (f == Format::csv) {
    std::vector<std::vector<std::string>> body;
    for (const auto& t : tables)
      for (const auto& e : t.entries)
        body.push_back({std::to_string(t.k), family_name(t.family), e.p.str(), e.q.str(), std::to_string(e.h)});
    return detail::csv_table({"k", "family", "p", "q", "h"}, body);
  }
  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    std::vector<std::vector<std::string>> body;
    for (const auto& e : t.entries)
      body.push_back(f == Format::latex
                         ? std::vector<std::string>{"$" + latex_rational(e.p) + "$", "$" + latex_rational(e.q) + "$",
                                                    std::to_string(e.h)}
                         : std::vector<std::string>{e.p.str(), e.q.str(), std::to_string(e.h)});
    if (i) out += "\n";
    if (f == Format::latex) {
      out += "% k = " + std::to_string(t.k) + ", " + family_name(t.family) + ", weight " + std::to_string(t.weight) + "\n";
      out += detail::latex_table({"$p$", "$q$", "$h^{p,q}$"}, body);
    } else {
      out += "k = " + std::to_string(t.k) + "  family " + family_name(t.family) + "  weight " +
             std::to_string(t.weight) + "\n";
      out += body.empty() ? std::string("(empty)\n") : detail::text_table({"p", "q", "h"}, body);
      out += "spectrum: " + hodge_polynomial(t) + "\n";
    }
  }
  return out;
}

inline Json to_json(const GammaTable& g) {
  Json j;
  j["k"] = g.k;
  j["offset"] = g.offset.str();
  Json v = Json::array();
  for (const auto& x : g.values) v.push_back(x.str());
  j["values"] = std::move(v);
  return j;
}

inline std::string render_gamma(const std::vector<GammaTable>& tables, Format f) {
  if (f == Format::json) {
    std::vector<Json> items;
    for (const auto& t : tables) items.push_back(to_json(t));
    return detail::dump(detail::collect(items));
  }
  std::vector<std::vector<std::string>> body;
  for (const auto& t : tables)
    for (std::size_t j = 0; j < t.values.size(); ++j) {
      const Rational i = t.offset + Rational(3 * static_cast<long>(j));
      if (f == Format::latex)
        body.push_back({std::to_string(t.k), "$" + latex_rational(i) + "$", "$" + latex_rational(t.values[j]) + "$"});
      else
        body.push_back({std::to_string(t.k), i.str(), t.values[j].str()});
    }
  if (f == Format::csv) return detail::csv_table({"k", "i", "gamma"}, body);
  if (f == Format::latex) return detail::latex_table({"$k$", "$i$", "$\\gamma_{k,i}$"}, body);
  return detail::text_table({"k", "i", "gamma"}, body);
}

struct BasisListing {
  int k = 0;
  std::vector<std::string> labels;
  CohomologyBasis a1;
  CohomologyBasis mid;
};

inline Json to_json(const CohomologyBasis& b, const std::vector<std::string>& labels) {
  Json a = Json::array();
  for (std::size_t i = 0; i < b.size(); ++i) {
    Json x;
    x["class"] = element_str(b.classes[i], labels, b.space);
    x["g_level"] = b.g_levels[i].str();
    a.push_back(std::move(x));
  }
  return a;
}

inline std::string render_basis(const std::vector<BasisListing>& items, Format f) {
  if (f == Format::json) {
    std::vector<Json> out;
    for (const auto& it : items) {
      Json j;
      j["k"] = it.k;
      j["A1"] = to_json(it.a1, it.labels);
      j["mid"] = to_json(it.mid, it.labels);
      out.push_back(std::move(j));
    }
    return detail::dump(detail::collect(out));
  }
  std::vector<std::vector<std::string>> body;
  for (const auto& it : items)
    for (const auto* b : {&it.a1, &it.mid})
      for (std::size_t i = 0; i < b->size(); ++i) {
        const std::string cls = element_str(b->classes[i], it.labels, b->space);
        const std::string lvl = f == Format::latex ? "$" + latex_rational(b->g_levels[i]) + "$" : b->g_levels[i].str();
        body.push_back({std::to_string(it.k), space_name(b->space), f == Format::latex ? "\\verb|" + cls + "|" : cls, lvl});
      }
  std::vector<std::string> header{"k", "space", "class", "g_level"};
  if (f == Format::csv) return detail::csv_table(header, body);
  if (f == Format::latex) return detail::latex_table(header, body);
  return detail::text_table(header, body);
}

struct DecompListing {
  int n = 2;
  int k = 0;
  std::int64_t s_nk = 0;
  Rational irr;
  ExponentMultiset exponents;
};

inline std::string render_decomp(const std::vector<DecompListing>& items, Format f) {
  if (f == Format::json) {
    std::vector<Json> out;
    for (const auto& it : items) {
      Json j;
      j["n"] = it.n;
      j["k"] = it.k;
      j["S"] = it.s_nk;
      j["irr"] = it.irr.str();
      j["regular_rank"] = it.exponents.regular_rank;
      j["irregular_rank"] = it.exponents.irregular_rank();
      Json e = Json::array();
      for (const auto& [p, m] : it.exponents.entries) {
        Json x;
        x["exponent"] = p.str("zeta");
        x["multiplicity"] = m;
        e.push_back(std::move(x));
      }
      j["exponents"] = std::move(e);
      out.push_back(std::move(j));
    }
    return detail::dump(detail::collect(out));
  }
  std::vector<std::vector<std::string>> body;
  for (const auto& it : items) {
    body.push_back({std::to_string(it.n), std::to_string(it.k), "0", std::to_string(it.exponents.regular_rank)});
    for (const auto& [p, m] : it.exponents.entries) {
      const std::string e = p.str("zeta");
      body.push_back({std::to_string(it.n), std::to_string(it.k), f == Format::latex ? "\\verb|" + e + "|" : e,
                      std::to_string(m)});
    }
  }
  std::vector<std::string> header{"n", "k", "exponent", "multiplicity"};
  if (f == Format::csv) return detail::csv_table(header, body);
  if (f == Format::latex) return detail::latex_table(header, body);
  std::string out;
  for (const auto& it : items)
    out += "n = " + std::to_string(it.n) + "  k = " + std::to_string(it.k) + "  S = " + std::to_string(it.s_nk) +
           "  irr = " + it.irr.str() + "\n";
  return out + detail::text_table(header, body);
}

inline Json to_json(const VerifyReport& r) {
  Json j;
  j["failures"] = r.failures();
  Json results = Json::array();
  for (const auto& k : r.per_k) {
    Json x;
    x["k"] = k.k;
    x["passed"] = k.passed();
    Json checks = Json::array();
    for (const auto& c : k.checks) {
      Json y;
      y["check"] = c.check;
      y["passed"] = c.passed;
      y["expected"] = c.expected;
      y["got"] = c.got;
      checks.push_back(std::move(y));
    }
    x["checks"] = std::move(checks);
    results.push_back(std::move(x));
  }
  j["results"] = std::move(results);
  return j;
}

inline std::string render_verify(const VerifyReport& r, Format f) {
  if (f == Format::json) return detail::dump(to_json(r));
  std::vector<std::vector<std::string>> body;
  for (const auto& k : r.per_k)
    for (const auto& c : k.checks)
      body.push_back({std::to_string(k.k), c.check, c.passed ? "pass" : "FAIL", c.expected, c.got});
  std::vector<std::string> header{"k", "check", "status", "expected", "got"};
  if (f == Format::csv) return detail::csv_table(header, body);
  if (f == Format::latex) {
    for (auto& row : body)
      for (auto& cell : {1, 3, 4}) row[static_cast<std::size_t>(cell)] = "\\verb|" + row[static_cast<std::size_t>(cell)] + "|";
    return detail::latex_table(header, body);
  }
  std::string out;
  for (const auto& k : r.per_k) {
    std::size_t failed = 0;
    for (const auto& c : k.checks) failed += !c.passed;
    out += "k = " + std::to_string(k.k) + ": " + (failed ? "FAIL" : "pass") + " (" + std::to_string(k.checks.size()) +
           " checks)\n";
    for (const auto& c : k.checks)
      if (!c.passed) out += "  " + c.check + ": expected " + c.expected + ", got " + c.got + "\n";
  }
  out += std::to_string(r.failures()) + " failure(s)\n";
  return out;
}

}  // namespace airy::io
