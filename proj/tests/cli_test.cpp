#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "stallings/text.hpp"
#include "test_support.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = stallings::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, MemberExample) {
  // Oracle: xyX against products of {xxy, Xyy}^±1 with partial products up to length 10.
  const bool expected = oracle::subgroup_ball({"xxy", "Xyy"}, 10).count("xyX") == 1;
  const auto r = run({"member", "--gens", "xxy,Xyy", "--word", "xyX"});
  EXPECT_EQ(r.out, expected ? "xyX is in the subgroup\n" : "xyX is not in the subgroup\n");
  EXPECT_EQ(r.code, expected ? 0 : 1);

  const auto yes = run({"member", "--gens", "xxy,Xyy", "--word", "xxyXyy", "--json"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(nlohmann::json::parse(yes.out)["member"], true);
}

TEST(Cli, BasisOfBouquet) {
  const auto r = run({"basis", "--gens", "xy,xyy,y"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "basis {x, y}\nrank 2\n");
}

TEST(Cli, BasisFromGraphFile) {
  const auto r = run({"basis", "--graph", test_support::fixture_path("two_cycle_core.graph"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  std::set<std::string> basis(j["basis"].begin(), j["basis"].end());
  EXPECT_EQ(basis, (std::set<std::string>{"xxy", "Xyy"}));
}

TEST(Cli, LocalGlobalExample) {
  const auto r = run({"local-global", "--g", "xy", "--m", "2", "--max-degree", "6"});
  EXPECT_EQ(r.code, 10);
  EXPECT_EQ(r.out.rfind("LOCAL_FAILURE at degree 2: x -> (), y -> (1 2)\n", 0), 0u) << r.out;

  const auto g = run({"local-global", "--g", "xyxy", "--m", "2", "--json"});
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(nlohmann::json::parse(g.out)["mode"], "GLOBAL_SOLUTION");

  const auto ex = run({"local-global", "--g", "xy", "--m", "3", "--max-degree", "1"});
  EXPECT_EQ(ex.code, 20);
  EXPECT_NE(ex.out.find("EXHAUSTED"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"member", "--gens", "xy"}).code, 2);
  EXPECT_EQ(run({"reduce", "--word", "xq"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto guard = run({"local-global", "--g", "xy", "--m", "2", "--max-degree", "12"});
  EXPECT_EQ(guard.code, 3);
  EXPECT_NE(guard.err.find("guard violation"), std::string::npos);
}

TEST(Cli, EnvironmentRaisesDegreeGuard) {
  ::setenv("STALLINGS_MAX_DEGREE", "2", 1);
  EXPECT_EQ(run({"sweep", "--equation", "v1v1X", "--max-degree", "3"}).code, 3);
  ::setenv("STALLINGS_MAX_DEGREE", "10", 1);
  EXPECT_EQ(run({"sweep", "--equation", "v1v1X", "--max-degree", "3"}).code, 0);
  ::unsetenv("STALLINGS_MAX_DEGREE");
}

TEST(Cli, ReduceAndRoot) {
  EXPECT_EQ(run({"reduce", "--word", "xyYx"}).out, "xx\n");
  EXPECT_EQ(run({"reduce", "--word", "xX"}).out, "e\n");
  EXPECT_EQ(run({"reduce", "--word", "Yxy", "--cyclic"}).out, "Yxy\ncore x\nconjugator Y\n");
  EXPECT_EQ(run({"root", "--word", "xyxyxy", "--m", "3"}).out, "xy\n");
  const auto none = run({"root", "--word", "xxy", "--m", "2"});
  EXPECT_EQ(none.out, "none\n");
  EXPECT_EQ(none.code, 1);
}

TEST(Cli, FactorModes) {
  const auto cert = run({"factor", "--h", "xyXY", "--n", "xyXY,xyyx"});
  EXPECT_EQ(cert.code, 0);
  EXPECT_NE(cert.out.find("basis_h {xyXY}"), std::string::npos) << cert.out;

  const auto fam = run({"factor", "--s", "xxx,yy", "--family", "y,xyX,xxx", "--json"});
  ASSERT_EQ(fam.code, 0) << fam.err;
  const auto j = nlohmann::json::parse(fam.out);
  std::set<std::string> h(j["h_basis"].begin(), j["h_basis"].end());
  EXPECT_EQ(h, (std::set<std::string>{"xxx", "y"}));

  EXPECT_EQ(run({"factor", "--s", "x", "--family", "xx,y"}).code, 2);
  EXPECT_EQ(run({"factor", "--h", "x"}).code, 2);
}

TEST(Cli, IntersectAndSolve) {
  const auto i = run({"intersect", "--a", "xx,y", "--b", "xx,yxY"});
  EXPECT_EQ(i.code, 0);
  EXPECT_NE(i.out.find("xx"), std::string::npos);

  const auto s = run({"solve-quotient", "--equation", "v1v1X", "--image", "(1 2 3)"});
  EXPECT_EQ(s.out, "solvable v1 -> (1 3 2)\n");
  const auto u = run({"solve-quotient", "--equation", "v1v1X", "--image", "(1 2)", "--json"});
  EXPECT_EQ(u.code, 1);
  EXPECT_EQ(nlohmann::json::parse(u.out)["solvable"], false);
}

TEST(Cli, ReducePipeline) {
  const auto r = run({"reduce-pipeline", "--g", "xyXY", "--solution", "xyXY", "--family", "xyXY,xyyx", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["h0_basis"], nlohmann::json::array({"xyXY"}));
  EXPECT_EQ(j["rank_within_bound"], true);
}

TEST(Cli, FoldDotIsStable) {
  const std::vector<std::string> args{"fold", "--graph", test_support::fixture_path("unfolded_bouquet.graph"), "--dot"};
  const auto first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out.rfind("digraph G {", 0), 0u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(run(args).out, first.out);
  // Relabeling the input graph's vertices does not change the canonical output.
  const auto gens = run({"fold", "--gens", "yx,Yx", "--dot"});
  const auto gens_swapped = run({"fold", "--gens", "Yx,yx", "--dot"});
  EXPECT_EQ(gens.out, gens_swapped.out);
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "stallings_cli_test.dot";
  const auto r = run({"fold", "--gens", "x,y", "--dot", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run({"fold", "--gens", "x,y", "--dot"}).out);
  std::filesystem::remove(path);
}

TEST(CliProperties, WordRoundTrip) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rank = 1 + static_cast<int>(rng() % 5);
    std::vector<stallings::Letter> raw;
    for (int i = static_cast<int>(rng() % 12); i > 0; --i) {
      raw.emplace_back(1 + static_cast<int>(rng() % static_cast<unsigned>(rank)), (rng() & 1U) ? 1 : -1);
    }
    const stallings::Word w(stallings::Alphabet(rank), raw);
    const std::string text = stallings::format_word(w);
    ASSERT_EQ(stallings::parse_word(text, rank), w) << text;
    if (trial < 100) {
      const auto r = run({"reduce", "--word", text, "--rank", std::to_string(rank)});
      ASSERT_EQ(r.out, text + "\n");
    }
  }
}
