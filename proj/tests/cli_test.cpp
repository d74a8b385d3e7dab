#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fflab/cli.hpp"
#include "fflab/config.hpp"
#include "fflab/error.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fflab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, CycloExample) {
  const auto j = run_json({"carlitz", "cyclo", "--q", "3", "--P", "t"});
  EXPECT_EQ(j["psi"], "x^2 + (t)");
  EXPECT_EQ(j["phi"], 2);
  EXPECT_EQ(j["eisenstein"], true);
}

TEST(Cli, SplitTableIsTsvByDefault) {
  const auto r = run({"split", "table", "--q", "2", "--a", "t^2+t+1", "--Qmaxdeg", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "Q\ta\te\tf\tg\tm\toracle_degrees\tagree");
  EXPECT_EQ(first, "t\tt^2+t+1\t1\t3\t1\t3\t3\ttrue");
}

TEST(Cli, TowerExample) {
  const auto j = run_json({"ultra", "tower", "--family", "dirichlet", "--N", "8", "--P", "t", "--nmax", "4"});
  EXPECT_EQ(j["verdict"], "HoldsOnTail");
  ASSERT_EQ(j["levels"].size(), 4u);
  for (const auto& lv : j["levels"]) {
    EXPECT_EQ(lv["audit"]["verdict"], "HoldsOnTail");
    EXPECT_EQ(lv["divides"], "HoldsOnTail");
    EXPECT_EQ(lv["agreement"], true);
  }
  EXPECT_FALSE(j["disclaimer"].get<std::string>().empty());
}

TEST(Cli, ExitCodes) {
  const auto usage = run({"frobnicate"});
  EXPECT_EQ(usage.code, fflab::cli::kExitUsage);
  EXPECT_NE(usage.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, fflab::cli::kExitUsage);
  EXPECT_EQ(run({"carlitz", "cyclo", "--q", "3"}).code, fflab::cli::kExitUsage);

  const auto bad = run({"carlitz", "cyclo", "--q", "4", "--P", "t^2+1"});
  EXPECT_EQ(bad.code, fflab::cli::kExitError);
  const auto j = json::parse(bad.out);
  EXPECT_EQ(j["error"]["code"], "NotPrime");

  const auto parse = run({"poly", "factor", "--q", "3", "--f", "t^^2"});
  EXPECT_EQ(parse.code, fflab::cli::kExitError);
  EXPECT_EQ(json::parse(parse.out)["error"]["code"], "ParseError");

  const auto partial = run({"ultra", "mae", "--family", "dirichlet", "--N", "6", "--B", "1"});
  EXPECT_EQ(partial.code, fflab::cli::kExitPartial);
  EXPECT_EQ(json::parse(partial.out)["partial"], true);

  const auto help = run({"ultra", "tower", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("--nmax"), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagsPrecedence) {
  const auto path = temp_file("fflab_cfg.txt", "# truncation\nfamily = primes\nN = 5\ntail_start = 4\nseed = 7\n");
  const auto j = run_json({"--config", path, "ultra", "lift", "--P", "t^2+1"});
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["family"]["kind"], "primes");
  EXPECT_EQ(j["family"]["truncation"]["tail_start"], 4);
  EXPECT_EQ(j["verdict"], "HoldsOnTail");  // F_7 and F_11 only

  const auto k = run_json({"--config", path, "ultra", "lift", "--P", "t^2+1", "--tail-start", "1"});
  EXPECT_EQ(k["verdict"], "Mixed");

  const auto bad = temp_file("fflab_bad.txt", "famly = primes\n");
  const auto r = run({"--config", bad, "ultra", "dirichlet"});
  EXPECT_EQ(r.code, fflab::cli::kExitError);
  EXPECT_EQ(json::parse(r.out)["error"]["code"], "ParseError");
}

TEST(Cli, ConfigFromEnvironment) {
  const auto path = temp_file("fflab_env.txt", "N = 3\n");
  ::setenv("FFLAB_CONFIG", path.c_str(), 1);
  const auto j = run_json({"ultra", "dirichlet"});
  ::unsetenv("FFLAB_CONFIG");
  EXPECT_EQ(j["per_index"].size(), 3u);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"--seed", "42", "poly", "factor", "--q", "5", "--f", "t^8+3*t^3+1"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["seed"], 42);
}

TEST(Cli, PrettyAndTsv) {
  const auto p = run({"ultra", "artin-schreier", "--N", "5", "--a", "t", "--format", "pretty"});
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("conclusion: algebraic part trivial"), std::string::npos);
  const auto t = run({"ultra", "los", "--N", "4", "--predicate", "degree_equals(2)", "--poly", "t^2+1",
                      "--format", "tsv"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out.substr(0, t.out.find('\n')), "s\tvalue\tdetail");
}

TEST(Config, Parse) {
  const auto c = fflab::Config::parse("N = 4\n  theta=0.5 # half\n\ntable = 2, 3,5\n");
  EXPECT_EQ(c.get_uint("N"), 4u);
  EXPECT_EQ(c.get_double("theta"), 0.5);
  EXPECT_EQ(c.get_list("table"), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_FALSE(c.get("seed"));
  EXPECT_THROW(fflab::Config::parse("N 4\n"), fflab::Error);
  EXPECT_THROW(fflab::Config::parse("N = 4\nN = 5\n"), fflab::Error);
  EXPECT_THROW(fflab::Config::parse("N = four\n").get_uint("N"), fflab::Error);
}
