#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "stallings/errors.hpp"
#include "stallings/local_global.hpp"
#include "stallings/text.hpp"
#include "test_support.hpp"

using namespace stallings;

namespace {

Word w2(const char* text) { return parse_word(text, 2); }

std::set<std::string> texts(const std::vector<Word>& words) {
  std::set<std::string> out;
  for (const Word& w : words) out.insert(format_word(w));
  return out;
}

std::vector<std::string> cyclically_reduced(int rank, int max_len) {
  std::vector<std::string> out;
  for (const auto& w : oracle::all_reduced_words(rank, max_len)) {
    if (w.empty() || w.size() == 1 || w.front() != oracle::inv(w.back())) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST(IsMPower, Examples) {
  EXPECT_EQ(is_m_power(parse_word("xxxxxx", 1), 3), parse_word("xx", 1));
  EXPECT_EQ(is_m_power(w2("xy"), 2), std::nullopt);
  const auto root = is_m_power(w2("yxyxyY"), 2);
  ASSERT_TRUE(root.has_value());
  // y (xy)^2 y^-1 reduces to yxyx, so y (xy) y^-1 = yx.
  EXPECT_EQ(*root, w2("yxyY"));
  EXPECT_EQ(format_word(*root), "yx");
  EXPECT_EQ(power(*root, 2), w2("yxyxyY"));
  EXPECT_EQ(oracle::roots("yxyxyY", 2, 2, 4), std::vector<std::string>{"yx"});
}

TEST(LocalGlobal, NonSquareInRankOne) {
  const auto r = local_global_mpower_check(parse_word("x", 1), 2);
  ASSERT_EQ(r.mode, WitnessMode::local_failure);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->degree, 2);
  EXPECT_EQ(format_cycles(r.failure->hom.gens()[0]), "(1 2)");
  EXPECT_FALSE(solve_in_quotient(r.equation, r.failure->hom).has_value());
  EXPECT_EQ(exit_code(r), 10);
}

TEST(LocalGlobal, SquareHasGlobalSolution) {
  const auto r = local_global_mpower_check(w2("xx"), 2);
  ASSERT_EQ(r.mode, WitnessMode::global_solution);
  EXPECT_EQ(r.root, w2("x"));
  EXPECT_TRUE(evaluate(r.equation, {{*r.root}}).is_identity());
  EXPECT_EQ(exit_code(r), 0);
}

TEST(LocalGlobal, ProductOfGeneratorsFailsModTwo) {
  const auto r = local_global_mpower_check(w2("xy"), 2);
  ASSERT_EQ(r.mode, WitnessMode::local_failure);
  EXPECT_EQ(r.failure->degree, 2);
  // Lexicographic order reaches x -> e, y -> (1 2) before x -> (1 2), y -> e.
  EXPECT_EQ(r.failure->index, 1u);
  EXPECT_TRUE(r.failure->hom.gens()[0].is_identity());
  EXPECT_EQ(format_cycles(r.failure->hom.gens()[1]), "(1 2)");
  EXPECT_FALSE(solve_in_quotient(r.equation, r.failure->hom).has_value());
}

TEST(LocalGlobal, ExhaustedIsNotSolvability) {
  // xy has no cube root, but the trivial quotient cannot see it.
  LocalGlobalOptions opts;
  opts.max_degree = 1;
  const auto r = local_global_mpower_check(w2("xy"), 3, opts);
  EXPECT_EQ(r.mode, WitnessMode::exhausted);
  EXPECT_EQ(exit_code(r), 20);
  const auto j = to_json(r);
  EXPECT_EQ(j["mode"], "EXHAUSTED");
  EXPECT_NE(j["note"].get<std::string>().find("not a claim of local solvability"), std::string::npos);
}

TEST(LocalGlobal, AuditMode) {
  LocalGlobalOptions opts;
  opts.audit = true;
  opts.max_degree = 4;
  const auto r = local_global_mpower_check(w2("xyxy"), 2, opts);
  ASSERT_EQ(r.mode, WitnessMode::global_solution);
  ASSERT_TRUE(r.audit.has_value());
  EXPECT_EQ(r.audit->degree, 4);
  EXPECT_EQ(r.audit->homs_checked, 1u + 4u + 36u + 576u);
  EXPECT_EQ(r.audit->failures, 0u);
}

TEST(LocalGlobal, Guards) {
  LocalGlobalOptions opts;
  opts.max_degree = 9;
  EXPECT_THROW(local_global_mpower_check(w2("xy"), 2, opts), GuardViolation);
  EXPECT_THROW(local_global_mpower_check(w2("xy"), 0), PreconditionViolation);
}

TEST(LocalGlobal, JobsDoNotChangeWitness) {
  for (const char* g : {"xy", "xxy", "xyXY", "xxxy"}) {
    for (int m : {2, 3}) {
      LocalGlobalOptions one;
      one.max_degree = 5;
      LocalGlobalOptions four = one;
      four.jobs = 4;
      const auto a = local_global_mpower_check(w2(g), m, one);
      const auto b = local_global_mpower_check(w2(g), m, four);
      ASSERT_EQ(a.mode, b.mode) << g;
      EXPECT_EQ(a.homs_tested, b.homs_tested);
      if (a.failure) {
        EXPECT_EQ(a.failure->degree, b.failure->degree);
        EXPECT_EQ(a.failure->index, b.failure->index);
      }
    }
  }
}

TEST(LocalGlobal, JsonReport) {
  const auto j = to_json(local_global_mpower_check(w2("xy"), 2));
  EXPECT_EQ(j["mode"], "LOCAL_FAILURE");
  EXPECT_EQ(j["equation"], "v1v1YX");
  EXPECT_EQ(j["degree"], 2);
  EXPECT_EQ(j["hom"]["gens"], nlohmann::json::array({"()", "(1 2)"}));
  EXPECT_TRUE(j["stats"].contains("homs_tested"));
  const auto g = to_json(local_global_mpower_check(w2("xx"), 2));
  EXPECT_EQ(g["assignment"], nlohmann::json::array({"x"}));
}

TEST(Sweep, CountsPerDegree) {
  const auto s = sweep(Equation::power_equation(w2("xy"), 2), 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].homs, 1u);
  EXPECT_EQ(s[0].solvable, 1u);
  EXPECT_EQ(s[1].homs, 4u);
  // Squares in S2 are trivial, so xy must map to e.
  EXPECT_EQ(s[1].solvable, 2u);
  EXPECT_EQ(s[1].first_unsolvable, 1u);
  EXPECT_EQ(s[2].homs, 36u);
}

TEST(ReductionPipeline, CubeInThreeGeneratorFamily) {
  const StallingsGraph family[] = {test_support::subgroup("y,xyX,xxx")};
  const Word sol[] = {w2("xxx")};
  const auto r = reduction_pipeline(w2("xxx"), sol, family);
  EXPECT_EQ(texts(r.basis_h0), (std::set<std::string>{"xxx"}));
  EXPECT_EQ(r.rank_h0, 1);
  EXPECT_EQ(r.n, 1);
  EXPECT_TRUE(r.rank_within_bound);
  EXPECT_EQ(r.rank_h0, static_cast<int>(r.factor.subgroup.edges().size()) -
                           r.factor.subgroup.num_vertices() + 1);
}

TEST(ReductionPipeline, CommutatorIsFreeFactor) {
  const StallingsGraph family[] = {test_support::subgroup("xyXY,xyyx")};
  const Word sol[] = {w2("xyXY")};
  const auto r = reduction_pipeline(w2("xyXY"), sol, family);
  EXPECT_EQ(texts(r.basis_h0), (std::set<std::string>{"xyXY"}));
  EXPECT_EQ(r.rank_h0, 1);
  EXPECT_EQ(texts(r.factor.certificate.basis_n), (std::set<std::string>{"xyXY", "xyyx"}));
}

TEST(ReductionPipeline, WholeGroupFamily) {
  const StallingsGraph family[] = {test_support::subgroup("x,y")};
  const Word sol[] = {w2("x")};
  const auto r = reduction_pipeline(w2("x"), sol, family);
  EXPECT_EQ(texts(r.basis_h0), (std::set<std::string>{"x"}));
  EXPECT_EQ(r.rank_h0, 1);

  // The image of a loop that uses both letters is the whole bouquet.
  const auto r2 = reduction_pipeline(w2("xyy"), sol, family);
  EXPECT_EQ(texts(r2.basis_h0), (std::set<std::string>{"x", "y"}));
  EXPECT_FALSE(r2.rank_within_bound);

  // A proper power folds onto the loop of its root.
  const auto r3 = reduction_pipeline(w2("xx"), sol, family);
  EXPECT_EQ(texts(r3.basis_h0), (std::set<std::string>{"x"}));
}

TEST(ReductionPipeline, StepsAndJson) {
  const StallingsGraph family[] = {test_support::subgroup("xyXY,xyyx")};
  const Word sol[] = {w2("xyXY")};
  const auto r = reduction_pipeline(w2("xyXY"), sol, family);
  int unchecked = 0;
  for (const auto& s : r.steps) unchecked += s.machine_checked ? 0 : 1;
  EXPECT_EQ(unchecked, 2);
  const auto j = to_json(r);
  EXPECT_EQ(j["rank_h0"], 1);
  EXPECT_EQ(j["rank_within_bound"], true);
  EXPECT_EQ(j["steps"].back()["status"], "not machine-checked");
}

TEST(ReductionPipeline, MembershipPreconditions) {
  const StallingsGraph family[] = {test_support::subgroup("xx,y")};
  const Word sol[] = {w2("y")};
  EXPECT_THROW(reduction_pipeline(w2("x"), sol, family), PreconditionViolation);
  const Word bad[] = {w2("x")};
  EXPECT_THROW(reduction_pipeline(w2("y"), bad, family), PreconditionViolation);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(LocalGlobalProperties, DichotomyOnShortWords) {
  for (const auto& text : cyclically_reduced(2, 3)) {
    if (text.empty()) continue;
    const Word g = w2(text.c_str());
    for (int m : {2, 3}) {
      const bool global = is_m_power(g, m).has_value();
      const auto failure = find_local_failure(Equation::power_equation(g, m), 1, 4);
      // Never both a global root and a finite quotient without a solution.
      if (global) {
        EXPECT_FALSE(failure.failure.has_value()) << text << " m=" << m;
      } else {
        EXPECT_TRUE(failure.failure.has_value()) << text << " m=" << m;
      }
      EXPECT_EQ(global, !oracle::roots(text, m, 2, static_cast<int>(text.size())).empty());
    }
  }
}

TEST(LocalGlobalProperties, ReportInvariants) {
  for (const auto& text : cyclically_reduced(2, 4)) {
    if (text.empty()) continue;
    const Word g = w2(text.c_str());
    LocalGlobalOptions opts;
    opts.max_degree = 4;
    const auto r = local_global_mpower_check(g, 2, opts);
    EXPECT_FALSE(r.root.has_value() && r.failure.has_value());
    if (r.root) EXPECT_TRUE(evaluate(r.equation, {{*r.root}}).is_identity());
    if (r.failure) EXPECT_FALSE(solve_in_quotient(r.equation, r.failure->hom).has_value());
  }
}

TEST(LocalGlobalProperties, PipelineRankMatchesImageGraph) {
  std::mt19937_64 rng(51);
  int ran = 0;
  for (int trial = 0; trial < 200 && ran < 60; ++trial) {
    const auto gens = test_support::random_generators(rng, 2, 3, 4);
    const StallingsGraph n = graph_from_generators(Alphabet(2), test_support::to_words(gens, 2));
    // g: a product of two generators, so it lies in the family member.
    const Word g = parse_word(oracle::reduce(gens[rng() % gens.size()] + gens[rng() % gens.size()]), 2);
    if (g.is_identity()) continue;
    const StallingsGraph family[] = {n};
    const Word sol[] = {g};
    const auto r = reduction_pipeline(g, sol, family);
    ++ran;
    const auto& h0 = r.factor.subgroup;
    EXPECT_EQ(r.rank_h0, static_cast<int>(h0.edges().size()) - h0.num_vertices() + 1);
    EXPECT_LE(r.rank_h0, static_cast<int>(g.length()));
    EXPECT_TRUE(membership(h0, g));
    for (const Word& b : r.factor.certificate.basis_h) EXPECT_TRUE(membership(n, b));
  }
  EXPECT_GE(ran, 50);
}
