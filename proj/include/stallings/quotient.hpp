#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "stallings/equation.hpp"
#include "stallings/perm.hpp"
#include "stallings/word.hpp"

namespace stallings {

/// Search-size guards for the finite-quotient machinery.
struct QuotientLimits {
  int max_degree = 8;
  std::uint64_t max_image = 1'000'000;     // elements in a generated group
  std::uint64_t max_tuples = 10'000'000;   // |image|^n in solve_in_quotient
  std::uint64_t max_homs = 100'000'000;    // (d!)^k in enumerate_homs

  /// Defaults, with max_degree taken from STALLINGS_MAX_DEGREE when set.
  static QuotientLimits from_environment();
};

/// A homomorphism F_k -> Sym(d) given by generator images. Its image
/// realizes the finite quotient F_k / ker.
///
/// The image is generated eagerly; elements are listed in breadth-first
/// order from the identity, multiplying by generators on the right.
class FiniteQuotientHom {
 public:
  FiniteQuotientHom(Alphabet alphabet, int degree, std::vector<Perm> gens,
                    const QuotientLimits& limits = QuotientLimits{});

  Alphabet alphabet() const { return alphabet_; }
  int rank() const { return alphabet_.rank(); }
  int degree() const { return degree_; }
  std::span<const Perm> gens() const { return gens_; }
  std::span<const Perm> image() const { return image_; }

 private:
  Alphabet alphabet_;
  int degree_;
  std::vector<Perm> gens_;
  std::vector<Perm> image_;
};

/// The image of a word. Throws AlphabetMismatch on rank mismatch.
Perm apply_hom(const FiniteQuotientHom& h, const Word& w);

/// The elements of the image group, deduplicated.
std::vector<Perm> image_elements(const FiniteQuotientHom& h);

/// Variable images in the image group that solve psi.
struct QuotientSolution {
  std::vector<Perm> assignment;
};

/// Exhaustive search of image^n in odometer order (x_1 slowest), returning
/// the first solution. Throws GuardViolation when |image|^n exceeds
/// limits.max_tuples.
std::optional<QuotientSolution> solve_in_quotient(const Equation& psi, const FiniteQuotientHom& h,
                                                  const QuotientLimits& limits = QuotientLimits{});

/// All (d!)^k generator tuples, lexicographic in one-line notation with
/// x_1 most significant.
class HomEnumerator {
 public:
  HomEnumerator(Alphabet alphabet, int degree, const QuotientLimits& limits = QuotientLimits{});

  std::uint64_t size() const { return count_; }
  /// The hom at a position in the enumeration order.
  FiniteQuotientHom at(std::uint64_t index) const;
  /// Streams the next hom, or nullopt at the end.
  std::optional<FiniteQuotientHom> next();

  Alphabet alphabet() const { return alphabet_; }
  int degree() const { return degree_; }

 private:
  Alphabet alphabet_;
  int degree_;
  QuotientLimits limits_;
  std::vector<Perm> perms_;
  std::uint64_t count_ = 0;
  std::uint64_t cursor_ = 0;
};

HomEnumerator enumerate_homs(Alphabet alphabet, int degree, const QuotientLimits& limits = QuotientLimits{});

/// Whether solvability in `fine` implies solvability in `coarse`.
/// Throws PreconditionViolation unless generator images of `fine` determine a
/// homomorphism onto those of `coarse`.
bool monotonicity_check(const Equation& psi, const FiniteQuotientHom& fine, const FiniteQuotientHom& coarse,
                        const QuotientLimits& limits = QuotientLimits{});

/// The hom x_i -> (a(x_i), b(x_i)) acting on two disjoint blocks of points.
FiniteQuotientHom direct_product(const FiniteQuotientHom& a, const FiniteQuotientHom& b,
                                 const QuotientLimits& limits = QuotientLimits{});

/// {degree, gens, solvable, witness?}
nlohmann::json quotient_report_json(const FiniteQuotientHom& h, const std::optional<QuotientSolution>& solution);

}  // namespace stallings
