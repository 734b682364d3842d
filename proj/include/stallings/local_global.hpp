#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stallings/equation.hpp"
#include "stallings/graph.hpp"
#include "stallings/quotient.hpp"
#include "stallings/word.hpp"

namespace stallings {

/// h with h^m = g, if g is an m-th power in F_k.
std::optional<Word> is_m_power(const Word& g, int m);

/// A finite quotient in which an equation has no solution.
struct LocalFailure {
  int degree;
  std::uint64_t index;  // position in enumerate_homs(rank, degree)
  FiniteQuotientHom hom;
};

struct FailureSearch {
  std::optional<LocalFailure> failure;
  /// Homs examined up to and including the witness; independent of the job count.
  std::uint64_t homs_tested = 0;
};

/// Scans degrees min_degree..max_degree in increasing order and homs in
/// enumeration order, returning the first hom where psi is unsolvable.
FailureSearch find_local_failure(const Equation& psi, int min_degree, int max_degree, int jobs = 1,
                                 const QuotientLimits& limits = QuotientLimits{});

struct SweepSummary {
  int degree;
  std::uint64_t homs = 0;
  std::uint64_t solvable = 0;
  std::optional<std::uint64_t> first_unsolvable;
};

/// Solvability of psi in every hom of each degree in [1, max_degree].
std::vector<SweepSummary> sweep(const Equation& psi, int max_degree, int jobs = 1,
                                const QuotientLimits& limits = QuotientLimits{});

enum class WitnessMode { global_solution, local_failure, exhausted };

const char* to_string(WitnessMode mode);

struct AuditResult {
  int degree = 0;
  std::uint64_t homs_checked = 0;
  std::uint64_t failures = 0;
};

/// Outcome of checking x^m = g globally and in finite quotients.
struct WitnessReport {
  Word g;
  int m = 1;
  Equation equation;
  WitnessMode mode = WitnessMode::exhausted;
  std::optional<Word> root{};             // global_solution: x_1 -> root
  std::optional<LocalFailure> failure{};  // local_failure
  int max_degree = 0;
  std::uint64_t homs_tested = 0;
  double elapsed_ms = 0.0;
  std::optional<AuditResult> audit{};
};

struct LocalGlobalOptions {
  int max_degree = 6;
  /// Also check every quotient up to audit_degree when a global root exists.
  bool audit = false;
  std::optional<int> audit_degree;  // defaults to max_degree
  int jobs = 1;
  QuotientLimits limits;
};

/// Decides x^m = g in F_k. With a root: global_solution (plus optional audit).
/// Without: the first quotient, by increasing degree, where x^m = pi(g) has no
/// solution, or exhausted when none exists up to max_degree.
WitnessReport local_global_mpower_check(const Word& g, int m, const LocalGlobalOptions& options = {});

/// 0 = global solution, 10 = local failure, 20 = exhausted.
int exit_code(const WitnessReport& report);

nlohmann::json to_json(const WitnessReport& report);

/// One step of the reduction argument and whether this program verifies it.
struct ProofStep {
  std::string name;
  bool machine_checked;
  std::string detail;
};

struct ReductionReport {
  Word g;
  std::vector<Word> solution_gens;
  DirectedFactor factor;
  std::vector<Word> basis_h0{};
  int rank_h0 = 0;
  int n = 0;
  bool rank_within_bound = false;
  std::vector<ProofStep> steps{};
};

/// Finite-scale run of the rank reduction: H0 from directed_family_factor with
/// S = {g}, its rank, the free-factor certificate, and whether rank(H0) <= n
/// for n = solution_gens.size(). Throws PreconditionViolation when g or a
/// solution generator misses a family member.
ReductionReport reduction_pipeline(const Word& g, std::span<const Word> solution_gens,
                                   std::span<const StallingsGraph> family);

nlohmann::json to_json(const ReductionReport& report);

}  // namespace stallings
