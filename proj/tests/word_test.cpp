#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stallings/equation.hpp"
#include "stallings/errors.hpp"
#include "stallings/text.hpp"
#include "stallings/word.hpp"

using namespace stallings;

namespace {

const Alphabet F2(2);

Word w2(const char* text) { return parse_word(text, 2); }

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  return parse_word(oracle::random_reduced_word(rng, rank, 0, max_len), rank);
}

}  // namespace

TEST(FreeReduce, CancelsAdjacentPair) {
  const Word w = Word::from_signed(F2, {1, 2, -2, 1});
  EXPECT_EQ(w, Word::from_signed(F2, {1, 1}));
}

TEST(FreeReduce, FullCancellation) { EXPECT_TRUE(Word::from_signed(F2, {1, -1}).is_identity()); }

TEST(FreeReduce, ReducedWordIsFixed) {
  const Word w = Word::from_signed(F2, {1, 2, -1, -2});
  EXPECT_EQ(w.length(), 4u);
  EXPECT_EQ(free_reduce(F2, w.letters()), w);
}

TEST(FreeReduce, RejectsOutOfRangeGenerator) {
  EXPECT_THROW(Word::from_signed(F2, {1, 3}), MalformedInput);
  EXPECT_THROW(Word::from_signed(F2, {0}), MalformedInput);
}

TEST(Multiply, Examples) {
  EXPECT_EQ(w2("xy") * w2("Yx"), w2("xx"));
  EXPECT_EQ(w2("x") * w2("y"), w2("xy"));
  const Word w = w2("xyXXy");
  EXPECT_TRUE((w * invert(w)).is_identity());
}

TEST(Multiply, RankMismatchThrows) { EXPECT_THROW(parse_word("x", 1) * parse_word("x", 2), AlphabetMismatch); }

TEST(Invert, Examples) {
  EXPECT_EQ(invert(w2("xy")), w2("YX"));
  EXPECT_EQ(invert(Word(F2)), Word(F2));
  EXPECT_EQ(invert(w2("xxy")), w2("YXX"));
}

TEST(CyclicReduce, Examples) {
  auto r = cyclic_reduce(w2("Yxy"));
  EXPECT_EQ(r.core, w2("x"));
  EXPECT_EQ(r.conjugator, w2("Y"));

  r = cyclic_reduce(w2("xy"));
  EXPECT_EQ(r.core, w2("xy"));
  EXPECT_TRUE(r.conjugator.is_identity());

  // Expected core from exhaustive conjugate search.
  r = cyclic_reduce(w2("yxyxY"));
  EXPECT_EQ(format_word(r.core), oracle::shortest_conjugate("yxyxY", 2));
  EXPECT_EQ(r.core, w2("xyx"));
  EXPECT_EQ(r.conjugator, w2("y"));
}

TEST(MthRoot, Examples) {
  EXPECT_EQ(mth_root(power(w2("xy"), 3), 3), w2("xy"));
  // Exhaustive search finds no square root of xxy among words of length <= 3.
  ASSERT_TRUE(oracle::roots("xxy", 2, 2, 3).empty());
  EXPECT_EQ(mth_root(w2("xxy"), 2), std::nullopt);
  EXPECT_EQ(mth_root(Word(F2), 5), Word(F2));
}

TEST(MthRoot, ZeroAndNegativeExponents) {
  EXPECT_EQ(mth_root(Word(F2), 0), Word(F2));
  EXPECT_EQ(mth_root(w2("x"), 0), std::nullopt);
  EXPECT_THROW(mth_root(w2("x"), -2), PreconditionViolation);
}

TEST(MthRoot, AgreesWithBruteForce) {
  for (const auto& g : oracle::all_reduced_words(2, 6)) {
    for (int m : {2, 3}) {
      const auto brute = oracle::roots(g, m, 2, static_cast<int>(g.size()));
      const auto root = mth_root(w2(g.c_str()), m);
      ASSERT_EQ(root.has_value(), !brute.empty()) << g << " m=" << m;
      if (root) {
        ASSERT_EQ(brute.size(), 1u) << "roots are unique";
        EXPECT_EQ(format_word(*root), brute.front().empty() ? "e" : brute.front());
      }
    }
  }
}

TEST(Evaluate, Examples) {
  // [x1, x2] g^-1 with g = e at (e, e).
  const Equation commutator_eq = parse_equation("v1v2V1V2", 2);
  EXPECT_TRUE(evaluate(commutator_eq, {{Word(F2), Word(F2)}}).is_identity());

  const Word g = power(w2("xy"), 2);
  EXPECT_TRUE(evaluate(Equation::power_equation(g, 2), {{w2("xy")}}).is_identity());

  // x1 g x1^-1 h^-1 with g = x, h = y at x1 = y.
  const Equation conj = parse_equation("v1xV1Y", 2);
  EXPECT_EQ(format_word(evaluate(conj, {{w2("y")}})), oracle::reduce("yxYY"));
  EXPECT_EQ(evaluate(conj, {{w2("y")}}), w2("yxYY"));
}

TEST(Evaluate, ArityAndAlphabetChecks) {
  const Equation psi = parse_equation("v1v2X", 2);
  EXPECT_THROW(evaluate(psi, {{w2("x")}}), ArityMismatch);
  EXPECT_THROW(evaluate(psi, {{parse_word("x", 3), parse_word("x", 3)}}), AlphabetMismatch);
}

TEST(EquationForm, ReducesOverFreeProduct) {
  const Equation psi = parse_equation("v1V1xXv2", 2);
  ASSERT_EQ(psi.terms().size(), 1u);
  EXPECT_EQ(psi.terms()[0], Term::variable(2));
  // x1 and the constant x are different letters of F_n * G.
  EXPECT_EQ(parse_equation("v1X", 1).terms().size(), 2u);
  EXPECT_THROW(Equation(1, F2, std::vector<Term>{Term::variable(2)}), MalformedInput);
}

TEST(WordText, CanonicalFormats) {
  EXPECT_EQ(format_word(w2("xyXY")), "xyXY");
  EXPECT_EQ(format_word(Word(F2)), "e");
  EXPECT_EQ(format_word(parse_word("x1X4x2", 4)), "x1X4x2");
  EXPECT_EQ(parse_word("xy", 5), parse_word("x1x2", 5));
  EXPECT_EQ(parse_word("xyz").rank(), 3);
  EXPECT_THROW(parse_word("xa"), MalformedInput);
  EXPECT_THROW(parse_word("v1"), MalformedInput);
  EXPECT_THROW(parse_word("z", 2), MalformedInput);
  EXPECT_EQ(format_equation(parse_equation("v1v1X")), "v1v1X");
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(WordProperties, ReductionIdempotentAndShortening) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> letter(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Letter> raw;
    for (int i = 0; i < 16; ++i) {
      int v = 0;
      while (v == 0) v = letter(rng);
      raw.push_back(Letter::from_signed(v));
    }
    const Word w(Alphabet(3), raw);
    EXPECT_LE(w.length(), raw.size());
    EXPECT_EQ(free_reduce(Alphabet(3), w.letters()), w);
    std::string text;
    for (Letter l : raw) text += format_letter(l, Alphabet(3));
    EXPECT_EQ(format_word(w), oracle::reduce(text).empty() ? "e" : oracle::reduce(text));
  }
}

TEST(WordProperties, MultiplyAssociative) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const Word a = random_word(rng, 2, 12);
    const Word b = random_word(rng, 2, 12);
    const Word c = random_word(rng, 2, 12);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_LE((a * b).length(), a.length() + b.length());
  }
}

TEST(WordProperties, InverseLaws) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = random_word(rng, 3, 12);
    EXPECT_EQ(invert(invert(w)), w);
    EXPECT_TRUE((w * invert(w)).is_identity());
  }
}

TEST(WordProperties, CyclicReductionReconstructs) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = random_word(rng, 2, 12);
    const auto [core, u] = cyclic_reduce(w);
    EXPECT_EQ(u * core * invert(u), w);
    EXPECT_TRUE(is_cyclically_reduced(core));
    if (w.length() <= 7) EXPECT_EQ(core.length(), oracle::shortest_conjugate(format_word(w) == "e" ? "" : format_word(w), 2).size());
  }
}

TEST(WordProperties, RootOfPowerRoundTrip) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const Word h = random_word(rng, 2, 6);
    for (int m : {2, 3, 4}) {
      const Word g = power(h, m);
      const auto r = mth_root(g, m);
      ASSERT_TRUE(r.has_value()) << format_word(h);
      EXPECT_EQ(power(*r, m), g);
    }
  }
}

TEST(WordProperties, EvaluateSingleVariable) {
  std::mt19937_64 rng(16);
  const Equation psi = parse_equation("v1", 2);
  for (int trial = 0; trial < 100; ++trial) {
    const Word a = random_word(rng, 2, 8);
    EXPECT_EQ(evaluate(psi, {{a}}), a);
  }
}

TEST(WordProperties, TextRoundTrip) {
  std::mt19937_64 rng(17);
  for (int rank : {1, 2, 3, 5}) {
    for (int trial = 0; trial < 250; ++trial) {
      std::uniform_int_distribution<int> gen(1, rank);
      std::uniform_int_distribution<int> len(0, 10);
      std::vector<Letter> raw;
      for (int i = len(rng); i > 0; --i) raw.emplace_back(gen(rng), (rng() & 1U) ? 1 : -1);
      const Word w(Alphabet(rank), raw);
      EXPECT_EQ(parse_word(format_word(w), rank), w);
    }
  }
}
