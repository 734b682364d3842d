#include "stallings/equation.hpp"

#include <string>

#include "stallings/errors.hpp"

namespace stallings {

Equation::Equation(int num_vars, Alphabet constants, std::span<const Term> terms)
    : num_vars_(num_vars), alphabet_(constants) {
  if (num_vars < 0) throw MalformedInput("negative variable count");
  terms_.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.sign != 1 && t.sign != -1) throw MalformedInput("term sign must be +1 or -1");
    if (t.is_variable()) {
      if (t.index < 1 || t.index > num_vars) {
        throw MalformedInput("variable index " + std::to_string(t.index) + " exceeds " +
                             std::to_string(num_vars) + " variables");
      }
    } else if (!constants.contains(t.index)) {
      throw MalformedInput("constant generator " + std::to_string(t.index) + " outside rank " +
                           std::to_string(constants.rank()));
    }
    if (!terms_.empty() && terms_.back() == t.inverse()) {
      terms_.pop_back();
    } else {
      terms_.push_back(t);
    }
  }
}

Equation Equation::power_equation(const Word& g, int m) {
  if (m < 0) throw PreconditionViolation("power equation requires m >= 0");
  std::vector<Term> terms(static_cast<std::size_t>(m), Term::variable(1));
  for (auto it = g.letters().rbegin(); it != g.letters().rend(); ++it) {
    terms.push_back(Term::constant(it->inverse()));
  }
  return Equation(1, g.alphabet(), terms);
}

Equation Equation::word_equals(const Word& w, const Word& g) {
  std::vector<Term> terms;
  for (Letter l : w.letters()) terms.push_back(Term::variable(l.generator(), l.sign()));
  for (auto it = g.letters().rbegin(); it != g.letters().rend(); ++it) {
    terms.push_back(Term::constant(it->inverse()));
  }
  return Equation(w.rank(), g.alphabet(), terms);
}

Word evaluate(const Equation& psi, const Assignment& a) {
  if (a.images.size() != static_cast<std::size_t>(psi.num_vars())) {
    throw ArityMismatch("equation has " + std::to_string(psi.num_vars()) + " variables, assignment has " +
                        std::to_string(a.images.size()) + " images");
  }
  for (const Word& image : a.images) {
    if (image.alphabet() != psi.alphabet()) {
      throw AlphabetMismatch("assignment image over rank " + std::to_string(image.rank()) +
                             ", equation constants over rank " + std::to_string(psi.alphabet().rank()));
    }
  }
  std::vector<Letter> raw;
  for (const Term& t : psi.terms()) {
    if (!t.is_variable()) {
      raw.emplace_back(t.index, t.sign);
      continue;
    }
    const auto letters = a.images[static_cast<std::size_t>(t.index - 1)].letters();
    if (t.sign > 0) {
      raw.insert(raw.end(), letters.begin(), letters.end());
    } else {
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) raw.push_back(it->inverse());
    }
  }
  return Word(psi.alphabet(), raw);
}

}  // namespace stallings
