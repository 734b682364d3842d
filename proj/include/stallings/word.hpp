#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace stallings {

/// Number of free generators x_1..x_k of a free group F_k.
///
/// Rank 0 describes the trivial group and only admits the empty word.
class Alphabet {
 public:
  constexpr Alphabet() = default;
  explicit Alphabet(int rank);

  constexpr int rank() const { return rank_; }
  constexpr bool contains(int generator) const { return generator >= 1 && generator <= rank_; }

  friend constexpr bool operator==(Alphabet, Alphabet) = default;

 private:
  int rank_ = 0;
};

/// A generator x_i or its inverse.
///
/// Letters are ordered x_1 < x_1^-1 < x_2 < x_2^-1 < ..., which is the order
/// used by every deterministic traversal in the library.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign) : value_(sign < 0 ? -generator : generator) {}

  /// Signed encoding: +i for x_i, -i for x_i^-1.
  static constexpr Letter from_signed(int value) { return Letter(value < 0 ? -value : value, value); }

  constexpr int generator() const { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const { return value_ < 0 ? -1 : 1; }
  constexpr bool is_inverse() const { return value_ < 0; }
  constexpr int signed_value() const { return value_; }
  constexpr Letter inverse() const { return from_signed(-value_); }

  /// Position in the letter order, starting at 0 for x_1.
  constexpr int order_key() const { return 2 * (generator() - 1) + (is_inverse() ? 1 : 0); }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) {
    return a.order_key() <=> b.order_key();
  }

 private:
  int value_ = 0;
};

/// A freely reduced word in F_k. Construction always reduces.
class Word {
 public:
  /// The identity of the rank-0 group.
  Word() = default;
  /// The identity of F_k.
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}
  /// Freely reduces `letters`; throws MalformedInput on an out-of-range generator.
  Word(Alphabet alphabet, std::span<const Letter> letters);
  Word(Alphabet alphabet, std::initializer_list<Letter> letters)
      : Word(alphabet, std::span<const Letter>(letters.begin(), letters.size())) {}

  static Word generator(Alphabet alphabet, int index, int sign = 1);
  /// Builds from signed letters (+i / -i), e.g. {1, 1, -2} = x x y^-1.
  static Word from_signed(Alphabet alphabet, std::initializer_list<int> letters);

  Alphabet alphabet() const { return alphabet_; }
  int rank() const { return alphabet_.rank(); }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Same letters viewed in a larger alphabet.
  Word lifted(Alphabet larger) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

/// Shortlex order: shorter first, then lexicographic in letter order.
bool shortlex_less(const Word& a, const Word& b);

/// The unique freely reduced form of a raw letter sequence.
Word free_reduce(Alphabet alphabet, std::span<const Letter> letters);

/// Product u*v, reduced. Throws AlphabetMismatch when ranks differ.
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
/// w^m for any integer m.
Word power(const Word& w, int m);
/// u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// Splits w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclic_reduce(const Word& w);

bool is_cyclically_reduced(const Word& w);

/// The unique h with h^m = g, if any.
///
/// m = 0 yields e exactly when g = e. Negative m throws PreconditionViolation;
/// callers pass |m| with g inverted instead.
std::optional<Word> mth_root(const Word& g, int m);

}  // namespace stallings

template <>
struct std::hash<stallings::Word> {
  std::size_t operator()(const stallings::Word& w) const noexcept;
};
