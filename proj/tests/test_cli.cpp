#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "airy/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_inproc(std::vector<std::string> args) {
  args.insert(args.begin(), "airyhodge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = airy::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell.
Result run_exe(const std::string& args) {
  const std::string cmd = std::string(AIRYHODGE_EXE) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WEXITSTATUS(status), out, ""};
}

}  // namespace

TEST(Cli, DimsJson) {
  const auto r = run_exe("dims --n 2 --k 5 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"all\":3,\"mid\":3}\n");
  const auto range = run_inproc({"dims", "--k", "4..5", "--format", "json"});
  EXPECT_EQ(range.out, "[{\"k\":4,\"all\":1,\"mid\":0},{\"k\":5,\"all\":3,\"mid\":3}]\n");
  const auto n3 = run_inproc({"dims", "--n", "3", "--k", "3", "--format", "json", "--bruteforce"});
  EXPECT_EQ(n3.out, "{\"all\":2,\"mid\":1,\"bruteforce\":2}\n");
}

TEST(Cli, HodgeJsonAndText) {
  const auto j = run_inproc({"hodge", "--k", "6", "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(j.out,
            "{\"k\":6,\"family\":\"Ai\",\"weight\":7,\"entries\":[{\"p\":\"8/3\",\"q\":\"13/3\",\"h\":1},"
            "{\"p\":\"13/3\",\"q\":\"8/3\",\"h\":1}]}\n");
  const auto t = run_inproc({"hodge", "--k", "6"});
  EXPECT_NE(t.out.find("8/3   13/3  1\n"), std::string::npos) << t.out;
  EXPECT_NE(t.out.find("13/3  8/3   1\n"), std::string::npos) << t.out;
  const auto mid = run_inproc({"hodge", "--k", "4", "--mid", "--format", "json"});
  EXPECT_EQ(mid.out, "{\"k\":4,\"family\":\"Ai-mid\",\"weight\":5,\"entries\":[]}\n");
  const auto four = run_inproc({"hodge", "--k", "4", "--format", "json"});
  EXPECT_NE(four.out.find("{\"p\":\"3\",\"q\":\"3\",\"h\":1}"), std::string::npos);
}

TEST(Cli, OtherFormats) {
  const auto csv = run_inproc({"hodge", "--k", "3", "--format", "csv"});
  EXPECT_EQ(csv.out, "k,family,p,q,h\n3,Ai,5/3,7/3,1\n3,Ai,7/3,5/3,1\n");
  const auto tex = run_inproc({"hodge", "--k", "3", "--format", "latex"});
  EXPECT_NE(tex.out.find("$\\frac{5}{3}$ & $\\frac{7}{3}$ & 1 \\\\"), std::string::npos) << tex.out;
  const auto g = run_inproc({"gamma", "--k", "4", "--series-terms", "3", "--format", "json"});
  EXPECT_EQ(g.out, "{\"k\":4,\"offset\":\"1\",\"values\":[\"1\",\"5/16\",\"295/256\"]}\n");
  for (const char* cmd : {"basis", "tilde", "decomp", "dims", "gamma", "verify"})
    for (const char* fmt : {"text", "json", "csv", "latex"}) {
      const auto r = run_inproc({cmd, "--k", "8", "--format", fmt});
      EXPECT_EQ(r.code, 0) << cmd << " " << fmt << ": " << r.err;
      EXPECT_FALSE(r.out.empty());
    }
}

TEST(Cli, BasisListing) {
  const auto r = run_inproc({"basis", "--k", "16", "--format", "csv"});
  EXPECT_NE(r.out.find("16,mid,(z^6 - 5/4*z^3)*u0 dz,"), std::string::npos) << r.out;
}

TEST(Cli, VerifyRange) {
  const auto r = run_exe("verify --k 2..20 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("{\"failures\":0,", 0), 0u);
  const auto odd = run_inproc({"verify", "--k", "3..9", "--parity", "odd"});
  EXPECT_NE(odd.out.find("k = 9: pass"), std::string::npos);
  EXPECT_EQ(odd.out.find("k = 4"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_inproc({"tilde", "--k", "2"}).code, 1);
  EXPECT_EQ(run_inproc({"gamma", "--k", "5"}).code, 1);
  EXPECT_EQ(run_inproc({"hodge", "--n", "3", "--k", "5"}).code, 1);
  EXPECT_EQ(run_inproc({"hodge", "--k", "5", "--bogus"}).code, 64);
  EXPECT_EQ(run_inproc({"hodge", "--k", "5..3"}).code, 64);
  EXPECT_EQ(run_inproc({"hodge", "--k", "x"}).code, 64);
  EXPECT_EQ(run_inproc({"frobnicate", "--k", "5"}).code, 64);
  EXPECT_EQ(run_inproc({"hodge"}).code, 64);
  EXPECT_EQ(run_inproc({"hodge", "--k", "4", "--parity", "odd"}).code, 64);
  EXPECT_EQ(run_inproc({"hodge", "--k", "5", "--format", "xml"}).code, 64);
  EXPECT_EQ(run_inproc({"--help"}).code, 0);
  EXPECT_EQ(run_exe("hodge --k 5 --bogus").code, 64);
}

TEST(Cli, DeterministicAndCached) {
  const auto dir = std::filesystem::temp_directory_path() / ("airyhodge-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const std::vector<std::string> args{"tilde", "--k", "4..12", "--parity", "even", "--format", "json"};
  const auto cold = run_inproc(args);
  EXPECT_EQ(cold.out, run_inproc(args).out);
  auto cached = args;
  cached.insert(cached.end(), {"--cache-dir", dir.string()});
  const auto first = run_inproc(cached);
  EXPECT_EQ(first.out, cold.out);
  ASSERT_TRUE(std::filesystem::exists(dir));
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}), 1);
  const auto hit = run_inproc(cached);
  EXPECT_EQ(hit.code, 0);
  EXPECT_EQ(hit.out, cold.out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, RangeParsing) {
  EXPECT_EQ(airy::cli::parse_k_range("7"), std::make_pair(7, 7));
  EXPECT_EQ(airy::cli::parse_k_range("2..40"), std::make_pair(2, 40));
  EXPECT_THROW(airy::cli::parse_k_range("2..."), airy::cli::UsageError);
  EXPECT_THROW(airy::cli::parse_k_range("-3"), airy::cli::UsageError);
  EXPECT_THROW(airy::cli::parse_k_range(""), airy::cli::UsageError);
}
