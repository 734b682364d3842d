#pragma once

#include <span>
#include <vector>

#include "stallings/word.hpp"

namespace stallings {

/// One letter of F_n * G: a variable x_j^{+-1} or a constant generator.
struct Term {
  enum class Kind { variable, constant };

  Kind kind = Kind::constant;
  int index = 1;  // variable j in [1..n] or generator i in [1..k]
  int sign = 1;

  static constexpr Term variable(int j, int sign = 1) { return {Kind::variable, j, sign}; }
  static constexpr Term constant(Letter l) { return {Kind::constant, l.generator(), l.sign()}; }

  constexpr Term inverse() const { return {kind, index, -sign}; }
  constexpr bool is_variable() const { return kind == Kind::variable; }

  friend constexpr bool operator==(const Term&, const Term&) = default;
};

/// An element psi of F_n * F_k, kept in free-product normal form.
///
/// Adjacent mutually inverse terms of the same kind and index cancel.
class Equation {
 public:
  Equation(int num_vars, Alphabet constants, std::span<const Term> terms);

  /// x_1^m g^-1, the equation whose solutions are the m-th roots of g.
  static Equation power_equation(const Word& g, int m);
  /// w(x_1..x_n) g^-1 where `w` is a word over rank n read as variables.
  static Equation word_equals(const Word& w, const Word& g);

  int num_vars() const { return num_vars_; }
  Alphabet alphabet() const { return alphabet_; }
  std::span<const Term> terms() const { return terms_; }

  friend bool operator==(const Equation&, const Equation&) = default;

 private:
  int num_vars_;
  Alphabet alphabet_;
  std::vector<Term> terms_;
};

/// Images of x_1..x_n in F_k.
struct Assignment {
  std::vector<Word> images;
};

/// psi(a): substitutes the images for the variables and reduces.
/// Throws ArityMismatch or AlphabetMismatch.
Word evaluate(const Equation& psi, const Assignment& a);

}  // namespace stallings
