#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "markov_fuzzy/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(MARKOV_FUZZY_TEST_DIR) / "data";
const fs::path kGolden = fs::path(MARKOV_FUZZY_TEST_DIR) / "golden";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "markov-fuzzy");
  std::ostringstream out, err;
  const int code = markov_fuzzy::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
};

// Set MARKOV_FUZZY_UPDATE_GOLDEN=1 to rewrite the expected files.
void check_golden(const GoldenCase& c) {
  const Result r = run(c.args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty()) << r.err;
  const fs::path file = kGolden / c.name;
  if (std::getenv("MARKOV_FUZZY_UPDATE_GOLDEN")) {
    std::ofstream(file, std::ios::binary) << r.out;
    return;
  }
  ASSERT_TRUE(fs::exists(file)) << file;
  EXPECT_EQ(r.out, slurp(file)) << c.name;
}

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesFile) { check_golden(GetParam()); }

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"eval_and.json", {"eval", "--formula", "P1 & P2", "--input", data("joint2.json")}},
        GoldenCase{"eval_tautology.json", {"eval", "--formula", "P1 | !P1", "--input", data("joint2.json")}},
        GoldenCase{"eval_named.csv",
                   {"eval", "--formula", "rain -> wet | cold", "--vars", "rain,wet,cold", "--input",
                    data("joint3.json"), "--format", "csv"}},
        GoldenCase{"bounds_and.json", {"bounds", "--formula", "P1 & P2", "--input", data("spec_pair.json")}},
        GoldenCase{"bounds_implies.json",
                   {"bounds", "--formula", "P1 -> P2", "--input", data("spec_pair.json"), "--grid", "0.001"}},
        GoldenCase{"bounds_independent.json",
                   {"bounds", "--formula", "P1 | P2", "--input", data("spec_independent.json")}},
        GoldenCase{"bounds_triple.csv",
                   {"bounds", "--formula", "P1 & P2 | P3", "--input", data("spec_triple.json"), "--format", "csv"}},
        GoldenCase{"sweep_three.csv", {"sweep", "--marginals", "0.7,0.6", "--steps", "3", "--format", "csv"}},
        GoldenCase{"sweep_degenerate.csv", {"sweep", "--marginals", "1,1", "--format", "csv"}},
        GoldenCase{"sweep_formula.json",
                   {"sweep", "--input", data("spec_pair.json"), "--steps", "4", "--formula", "(P1 -> P2) & (P2 -> P1)"}}),
    [](const auto& info) {
      std::string n = info.param.name;
      for (char& ch : n) {
        if (ch == '.') ch = '_';
      }
      return n;
    });

INSTANTIATE_TEST_SUITE_P(
    Quantify, Golden,
    ::testing::Values(
        GoldenCase{"quantify_bounds.json", {"quantify", "--input", data("table_ab.json")}},
        GoldenCase{"quantify_forall.csv",
                   {"quantify", "--input", data("table_abc.json"), "--quantifier", "forall", "--format", "csv"}},
        GoldenCase{"quantify_sample.json",
                   {"quantify", "--input", data("table_abc.json"), "--mode", "sample", "--seed", "42",
                    "--samples", "5000", "--tuple-length", "2"}}),
    [](const auto& info) {
      std::string n = info.param.name;
      for (char& ch : n) {
        if (ch == '.') ch = '_';
      }
      return n;
    });

}  // namespace

TEST(Cli, EvalValues) {
  auto r = run({"eval", "--formula", "P1 & P2", "--input", data("joint2.json"), "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("true,0.40000000000000002"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "--formula", "P1 & P2 & P3", "--input", data("joint2.json")}).code, 3);
  EXPECT_EQ(run({"eval", "--formula", "P1 &", "--input", data("joint2.json")}).code, 2);
  EXPECT_EQ(run({"eval", "--formula", "exists x in U : P(x)", "--input", data("joint2.json")}).code, 3);
  EXPECT_EQ(run({"eval", "--formula", "P1", "--input", data("joint_negative.json")}).code, 2);
  EXPECT_EQ(run({"eval", "--formula", "P1", "--input", data("missing.json")}).code, 2);
  EXPECT_EQ(run({"eval", "--formula", "A & B", "--vars", "A", "--input", data("joint2.json")}).code, 3);
  EXPECT_EQ(run({"sweep", "--marginals", "0.7,0.6", "--steps", "0"}).code, 2);
  EXPECT_EQ(run({"sweep", "--marginals", "0.7,0.6,0.5"}).code, 3);
  EXPECT_EQ(run({"quantify", "--input", data("table_empty.json")}).code, 2);
  EXPECT_EQ(run({"quantify", "--input", data("spec_pair.json")}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, InfeasiblePairwiseMessage) {
  auto r = run({"bounds", "--formula", "P1 & P2", "--input", data("spec_infeasible.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("InfeasibleQ"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ParseErrorPointsAtToken) {
  auto r = run({"eval", "--formula", "P1 & | P2", "--input", data("joint2.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("P1 & | P2\n       ^"), std::string::npos) << r.err;
}

TEST(Cli, ArityLimitFromEnvironment) {
  ::setenv("MARKOV_FUZZY_MAX_ARITY", "2", 1);
  const int limited = run({"eval", "--formula", "P1", "--input", data("joint3.json")}).code;
  ::setenv("MARKOV_FUZZY_MAX_ARITY", "99", 1);
  const int raised = run({"eval", "--formula", "P1", "--input", data("joint3.json")}).code;
  ::unsetenv("MARKOV_FUZZY_MAX_ARITY");
  EXPECT_EQ(limited, 4);
  EXPECT_EQ(raised, 0);
}

TEST(Cli, SampleIsByteIdentical) {
  const std::vector<std::string> args = {"quantify", "--input", data("table_abc.json"), "--mode",
                                         "sample", "--seed", "42", "--samples", "3000"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"quantify", "--input", data("table_abc.json"), "--mode", "sample", "--seed",
                        "43", "--samples", "3000"})
                       .out);
}

TEST(Cli, CsvIgnoresLocale) {
  EXPECT_EQ(markov_fuzzy::cli::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(markov_fuzzy::cli::format_double(1.0), "1");
  EXPECT_EQ(markov_fuzzy::cli::format_double(0.0), "0");
  EXPECT_EQ(std::stod(markov_fuzzy::cli::format_double(1.0 / 3.0)), 1.0 / 3.0);
}
