#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "airy/asymptotics.hpp"
#include "airy/connection.hpp"
#include "airy/errors.hpp"
#include "airy/hodge.hpp"
#include "airy/io.hpp"
#include "airy/moments.hpp"

#ifndef AIRY_VERSION
#define AIRY_VERSION "dev"
#endif

namespace airy::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_domain = 1,
  exit_verification = 2,
  exit_inconsistency = 3,
  exit_usage = 64,
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown by parse() for --help and --version; carries the text to print.
struct InfoRequested {
  std::string text;
};

struct RunConfig {
  std::string command;
  int n = 2;
  int k_lo = 0;
  int k_hi = 0;
  std::string parity;  // "", "odd", "even"
  io::Format format = io::Format::text;
  std::string cache_dir;
  std::uint64_t enumeration_cap = MomentLimits{}.enumeration_cap;
  int truncation_ceiling = ConnectionLimits{}.degree_ceiling;
  std::size_t series_terms = 30;
  bool bruteforce = false;
  bool mid = false;

  std::vector<int> ks() const {
    std::vector<int> out;
    for (int k = k_lo; k <= k_hi; ++k) {
      if (parity == "odd" && k % 2 == 0) continue;
      if (parity == "even" && k % 2 != 0) continue;
      out.push_back(k);
    }
    return out;
  }
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"dims", "basis", "gamma", "hodge", "tilde", "decomp", "verify"};
  return c;
}

/// "5" or "2..20" (inclusive).
inline std::pair<int, int> parse_k_range(const std::string& s) {
  auto to_int = [&](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("malformed k value '" + s + "'");
    if (t.size() > 6) throw UsageError("k value out of range in '" + s + "'");
    return std::stoi(t);
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int k = to_int(s);
    return {k, k};
  }
  const int lo = to_int(s.substr(0, dots));
  const int hi = to_int(s.substr(dots + 2));
  if (lo > hi) throw UsageError("empty k range '" + s + "'");
  return {lo, hi};
}

/// Parses argv into a RunConfig. Throws UsageError, or InfoRequested for
/// --help and --version.
inline RunConfig parse(int argc, const char* const* argv) {
  CLI::App app{"Hodge numbers and de Rham data for symmetric powers of the Airy connection", "airyhodge"};
  app.set_version_flag("--version", AIRY_VERSION);
  RunConfig cfg;
  std::string k_text, format = "text";
  app.add_option("command", cfg.command, "dims | basis | gamma | hodge | tilde | decomp | verify")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("--n", cfg.n, "order of the Airy equation")->check(CLI::Range(2, 64));
  app.add_option("--k", k_text, "symmetric power k, or an inclusive range a..b")->required();
  app.add_option("--parity", cfg.parity, "keep only odd or even k")->check(CLI::IsMember({"odd", "even"}));
  app.add_option("--format", format, "text | json | csv | latex")->check(CLI::IsMember({"text", "json", "csv", "latex"}));
  app.add_option("--cache-dir", cfg.cache_dir, "directory for cached output (env AIRYHODGE_CACHE_DIR)");
  app.add_option("--enumeration-cap", cfg.enumeration_cap, "maximal number of enumerated compositions")
      ->check(CLI::PositiveNumber);
  app.add_option("--truncation-ceiling", cfg.truncation_ceiling, "maximal truncation depth for brute force")
      ->check(CLI::PositiveNumber);
  app.add_option("--series-terms", cfg.series_terms, "number of lattice terms for gamma")->check(CLI::PositiveNumber);
  app.add_flag("--bruteforce", cfg.bruteforce, "also compute dimensions by linear algebra");
  app.add_flag("--mid", cfg.mid, "hodge: print the middle table");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw InfoRequested{app.help()};
  } catch (const CLI::CallForVersion&) {
    throw InfoRequested{std::string(AIRY_VERSION) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  const auto [lo, hi] = parse_k_range(k_text);
  cfg.k_lo = lo;
  cfg.k_hi = hi;
  cfg.format = io::parse_format(format);
  if (cfg.ks().empty()) throw UsageError("no k value left after the parity filter");
  if (cfg.cache_dir.empty())
    if (const char* env = std::getenv("AIRYHODGE_CACHE_DIR")) cfg.cache_dir = env;
  return cfg;
}

namespace detail {

inline const char* format_name(io::Format f) {
  switch (f) {
    case io::Format::text: return "text";
    case io::Format::json: return "json";
    case io::Format::csv: return "csv";
    case io::Format::latex: return "latex";
  }
  return "?";
}

inline std::string cache_key(const RunConfig& c) {
  std::ostringstream s;
  s << AIRY_VERSION << '|' << c.command << "|n=" << c.n << "|k=" << c.k_lo << ".." << c.k_hi << "|parity=" << c.parity
    << "|format=" << format_name(c.format) << "|terms=" << c.series_terms << "|bf=" << c.bruteforce
    << "|mid=" << c.mid;
  return s.str();
}

// FNV-1a, stable across platforms.
inline std::string cache_file_name(const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx.out", static_cast<unsigned long long>(h));
  return buf;
}

// File layout: key line, then the rendered bytes.
inline std::optional<std::string> cache_load(const std::filesystem::path& file, const std::string& key) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::string first;
  if (!std::getline(in, first) || first != key) return std::nullopt;
  std::ostringstream rest;
  rest << in.rdbuf();
  return rest.str();
}

inline void cache_store(const std::filesystem::path& file, const std::string& key, const std::string& body) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << key << '\n' << body;
  }
  std::filesystem::rename(tmp, file, ec);
}

inline void require_n2(const RunConfig& c) {
  if (c.n != 2) throw DomainError(c.command + " is only defined for n = 2");
}

struct Output {
  std::string text;
  int code = exit_ok;
};

inline Output compute(const RunConfig& c) {
  const MomentLimits ml{c.enumeration_cap};
  ConnectionLimits cl;
  cl.degree_ceiling = c.truncation_ceiling;
  const auto ks = c.ks();

  if (c.command == "dims") {
    std::vector<io::DimsRow> rows;
    for (int k : ks) {
      io::DimsRow r{c.n, k, h1_dims(c.n, k, ml), std::nullopt};
      if (c.bruteforce) r.bruteforce = h1_dim_bruteforce(build_symk(c.n, k, Rational(0), cl), Space::affine_line, cl).dim;
      rows.push_back(r);
    }
    return {io::render_dims(rows, c.format)};
  }
  if (c.command == "decomp") {
    std::vector<io::DecompListing> items;
    for (int k : ks) items.push_back({c.n, k, s_nk(c.n, k, ml), irr(c.n, k, ml), formal_decomposition(c.n, k, ml)});
    return {io::render_decomp(items, c.format)};
  }
  require_n2(c);
  if (c.command == "basis") {
    std::vector<io::BasisListing> items;
    for (int k : ks) items.push_back({k, build_symk(2, k).generator_labels, h1_a1_basis(k), mid_basis(k)});
    return {io::render_basis(items, c.format)};
  }
  if (c.command == "gamma") {
    std::vector<GammaTable> tables;
    for (int k : ks) tables.push_back(gamma(k, c.series_terms));
    return {io::render_gamma(tables, c.format)};
  }
  if (c.command == "hodge") {
    std::vector<HodgeTable> tables;
    for (int k : ks) {
      auto h = hodge_numbers(k);
      tables.push_back(c.mid ? h.mid : h.full);
    }
    return {io::render_hodge(tables, c.format)};
  }
  if (c.command == "tilde") {
    std::vector<HodgeTable> tables;
    for (int k : ks) tables.push_back(tilde_mid_hodge(k));
    return {io::render_hodge(tables, c.format)};
  }
  if (c.command == "verify") {
    VerifyOptions opt;
    opt.bruteforce = c.bruteforce;
    opt.moment_limits = ml;
    opt.connection_limits = cl;
    const VerifyReport r = verify(ks, opt);
    return {io::render_verify(r, c.format), r.passed() ? exit_ok : exit_verification};
  }
  throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace detail

/// Runs one command, writing the document to `out` and diagnostics to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    std::string key, file;
    if (!c.cache_dir.empty()) {
      key = detail::cache_key(c);
      file = (std::filesystem::path(c.cache_dir) / detail::cache_file_name(key)).string();
      // Only successful runs are stored.
      if (auto hit = detail::cache_load(file, key)) {
        out << *hit;
        return exit_ok;
      }
    }
    const detail::Output o = detail::compute(c);
    out << o.text;
    if (!file.empty() && o.code == exit_ok) detail::cache_store(file, key, o.text);
    return o.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return exit_inconsistency;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return exit_domain;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << "\n";
    return exit_domain;
  } catch (const StabilityError& e) {
    err << "no stabilization: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::invalid_argument& e) {
    err << "domain error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_inconsistency;
  }
}

/// Entry point for the command-line tool.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = parse(argc, argv);
  } catch (const InfoRequested& info) {
    out << info.text;
    return exit_ok;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }
  return run(cfg, out, err);
}

}  // namespace airy::cli
