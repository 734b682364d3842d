#include "stallings/quotient.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "stallings/errors.hpp"

namespace stallings {

QuotientLimits QuotientLimits::from_environment() {
  QuotientLimits limits;
  if (const char* env = std::getenv("STALLINGS_MAX_DEGREE")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > Perm::max_degree) {
      throw GuardViolation("STALLINGS_MAX_DEGREE must be an integer in [1, " + std::to_string(Perm::max_degree) +
                           "], got '" + env + "'");
    }
    limits.max_degree = static_cast<int>(v);
  }
  return limits;
}

namespace {

void check_degree(int degree, const QuotientLimits& limits) {
  if (degree < 1) throw MalformedInput("degree must be at least 1");
  if (degree > limits.max_degree || degree > Perm::max_degree) {
    throw GuardViolation("degree " + std::to_string(degree) + " exceeds the limit " +
                         std::to_string(std::min(limits.max_degree, Perm::max_degree)));
  }
}

// Overflow-safe a*b capped at cap+1.
std::uint64_t capped_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a != 0 && b > (cap + 1) / a) return cap + 1;
  return std::min(a * b, cap + 1);
}

}  // namespace

FiniteQuotientHom::FiniteQuotientHom(Alphabet alphabet, int degree, std::vector<Perm> gens,
                                     const QuotientLimits& limits)
    : alphabet_(alphabet), degree_(degree), gens_(std::move(gens)) {
  check_degree(degree, limits);
  if (gens_.size() != static_cast<std::size_t>(alphabet.rank())) {
    throw ArityMismatch("rank " + std::to_string(alphabet.rank()) + " needs that many generator images, got " +
                        std::to_string(gens_.size()));
  }
  for (const Perm& g : gens_) {
    if (g.degree() != degree) throw MalformedInput("generator image has the wrong degree");
  }
  std::unordered_set<Perm> seen;
  image_.push_back(Perm::identity(degree));
  seen.insert(image_.front());
  for (std::size_t head = 0; head < image_.size(); ++head) {
    for (const Perm& g : gens_) {
      Perm next = image_[head] * g;
      if (seen.insert(next).second) {
        image_.push_back(next);
        if (image_.size() > limits.max_image) {
          throw GuardViolation("image group exceeds " + std::to_string(limits.max_image) + " elements");
        }
      }
    }
  }
}

Perm apply_hom(const FiniteQuotientHom& h, const Word& w) {
  if (w.alphabet() != h.alphabet()) {
    throw AlphabetMismatch("word over rank " + std::to_string(w.rank()) + ", hom over rank " +
                           std::to_string(h.rank()));
  }
  Perm result = Perm::identity(h.degree());
  for (Letter l : w.letters()) {
    const Perm& g = h.gens()[static_cast<std::size_t>(l.generator() - 1)];
    result = result * (l.is_inverse() ? g.inverse() : g);
  }
  return result;
}

std::vector<Perm> image_elements(const FiniteQuotientHom& h) { return {h.image().begin(), h.image().end()}; }

std::optional<QuotientSolution> solve_in_quotient(const Equation& psi, const FiniteQuotientHom& h,
                                                  const QuotientLimits& limits) {
  if (psi.alphabet() != h.alphabet()) {
    throw AlphabetMismatch("equation constants over rank " + std::to_string(psi.alphabet().rank()) +
                           ", hom over rank " + std::to_string(h.rank()));
  }
  const auto image = h.image();
  const auto n = static_cast<std::size_t>(psi.num_vars());
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < n; ++i) tuples = capped_mul(tuples, image.size(), limits.max_tuples);
  if (tuples > limits.max_tuples) {
    throw GuardViolation("search space |image|^n exceeds " + std::to_string(limits.max_tuples));
  }

  // Collapse runs of constants into single permutations.
  struct Step {
    bool variable;
    std::size_t var;
    bool inverse;
    Perm constant;
  };
  std::vector<Step> steps;
  for (const Term& t : psi.terms()) {
    if (t.is_variable()) {
      steps.push_back({true, static_cast<std::size_t>(t.index - 1), t.sign < 0, Perm{}});
      continue;
    }
    const Perm& g = h.gens()[static_cast<std::size_t>(t.index - 1)];
    const Perm p = t.sign < 0 ? g.inverse() : g;
    if (!steps.empty() && !steps.back().variable) {
      steps.back().constant = steps.back().constant * p;
    } else {
      steps.push_back({false, 0, false, p});
    }
  }
  std::vector<Perm> inverses;
  inverses.reserve(image.size());
  for (const Perm& p : image) inverses.push_back(p.inverse());

  std::vector<std::size_t> digits(n, 0);
  const Perm identity = Perm::identity(h.degree());
  for (;;) {
    Perm value = identity;
    for (const Step& s : steps) {
      if (!s.variable) {
        value = value * s.constant;
      } else {
        const std::size_t e = digits[s.var];
        value = value * (s.inverse ? inverses[e] : image[e]);
      }
    }
    if (value.is_identity()) {
      QuotientSolution sol;
      for (std::size_t d : digits) sol.assignment.push_back(image[d]);
      return sol;
    }
    // Odometer with the last variable fastest.
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < image.size()) break;
      digits[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
    if (n == 0) return std::nullopt;
  }
}

HomEnumerator::HomEnumerator(Alphabet alphabet, int degree, const QuotientLimits& limits)
    : alphabet_(alphabet), degree_(degree), limits_(limits) {
  if (alphabet.rank() < 1) throw MalformedInput("hom enumeration needs rank >= 1");
  check_degree(degree, limits);
  std::uint64_t factorial = 1;
  for (int i = 2; i <= degree; ++i) factorial = capped_mul(factorial, static_cast<std::uint64_t>(i), limits.max_homs);
  count_ = 1;
  for (int i = 0; i < alphabet.rank(); ++i) count_ = capped_mul(count_, factorial, limits.max_homs);
  if (count_ > limits.max_homs) {
    throw GuardViolation("(d!)^k exceeds " + std::to_string(limits.max_homs) + " homomorphisms");
  }
  std::vector<int> points(static_cast<std::size_t>(degree));
  std::iota(points.begin(), points.end(), 0);
  do {
    perms_.emplace_back(points);
  } while (std::next_permutation(points.begin(), points.end()));
}

FiniteQuotientHom HomEnumerator::at(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("hom index past the end of the enumeration");
  const auto k = static_cast<std::size_t>(alphabet_.rank());
  std::vector<Perm> gens(k);
  for (std::size_t i = k; i-- > 0;) {
    gens[i] = perms_[static_cast<std::size_t>(index % perms_.size())];
    index /= perms_.size();
  }
  return FiniteQuotientHom(alphabet_, degree_, std::move(gens), limits_);
}

std::optional<FiniteQuotientHom> HomEnumerator::next() {
  if (cursor_ >= count_) return std::nullopt;
  return at(cursor_++);
}

HomEnumerator enumerate_homs(Alphabet alphabet, int degree, const QuotientLimits& limits) {
  return HomEnumerator(alphabet, degree, limits);
}

bool monotonicity_check(const Equation& psi, const FiniteQuotientHom& fine, const FiniteQuotientHom& coarse,
                        const QuotientLimits& limits) {
  if (fine.alphabet() != coarse.alphabet()) throw AlphabetMismatch("homs over different ranks");
  // Walk the Cayley graph of the fine image, pushing each element forward.
  std::unordered_map<Perm, Perm> forward;
  forward.emplace(Perm::identity(fine.degree()), Perm::identity(coarse.degree()));
  std::vector<Perm> queue{Perm::identity(fine.degree())};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Perm f = queue[head];
    const Perm c = forward.at(f);
    for (std::size_t i = 0; i < fine.gens().size(); ++i) {
      const Perm fn = f * fine.gens()[i];
      const Perm cn = c * coarse.gens()[i];
      const auto [it, inserted] = forward.emplace(fn, cn);
      if (inserted) {
        queue.push_back(fn);
      } else if (it->second != cn) {
        throw PreconditionViolation("coarse hom does not factor through the fine hom");
      }
    }
  }
  const bool fine_solvable = solve_in_quotient(psi, fine, limits).has_value();
  return !fine_solvable || solve_in_quotient(psi, coarse, limits).has_value();
}

FiniteQuotientHom direct_product(const FiniteQuotientHom& a, const FiniteQuotientHom& b,
                                 const QuotientLimits& limits) {
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("homs over different ranks");
  const int d = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < a.gens().size(); ++i) {
    std::vector<int> images(static_cast<std::size_t>(d));
    for (int p = 0; p < a.degree(); ++p) images[static_cast<std::size_t>(p)] = a.gens()[i](p);
    for (int p = 0; p < b.degree(); ++p) {
      images[static_cast<std::size_t>(a.degree() + p)] = a.degree() + b.gens()[i](p);
    }
    gens.emplace_back(images);
  }
  return FiniteQuotientHom(a.alphabet(), d, std::move(gens), limits);
}

nlohmann::json quotient_report_json(const FiniteQuotientHom& h, const std::optional<QuotientSolution>& solution) {
  nlohmann::json j;
  j["degree"] = h.degree();
  j["gens"] = nlohmann::json::array();
  for (const Perm& g : h.gens()) j["gens"].push_back(format_cycles(g));
  j["solvable"] = solution.has_value();
  if (solution) {
    j["witness"] = nlohmann::json::array();
    for (const Perm& p : solution->assignment) j["witness"].push_back(format_cycles(p));
  }
  return j;
}

}  // namespace stallings
