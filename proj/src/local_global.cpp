#include "stallings/local_global.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "stallings/errors.hpp"
#include "stallings/text.hpp"

namespace stallings {
namespace {

constexpr std::uint64_t kChunk = 64;

// Runs body(i) for i in [0, count) on `jobs` threads. body returns false to
// ask the pool to stop handing out indices above `stop_after`.
void parallel_for(std::uint64_t count, int jobs, const std::function<void(std::uint64_t)>& body,
                  const std::atomic<std::uint64_t>* stop_after = nullptr) {
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= count) return;
        const std::uint64_t end = std::min(count, start + kChunk);
        for (std::uint64_t i = start; i < end; ++i) {
          if (stop_after && i > stop_after->load()) return;
          body(i);
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  const int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::optional<Word> is_m_power(const Word& g, int m) { return mth_root(g, m); }

FailureSearch find_local_failure(const Equation& psi, int min_degree, int max_degree, int jobs,
                                 const QuotientLimits& limits) {
  FailureSearch result;
  for (int degree = std::max(1, min_degree); degree <= max_degree; ++degree) {
    const HomEnumerator homs(psi.alphabet(), degree, limits);
    constexpr auto none = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> best{none};
    parallel_for(
        homs.size(), jobs,
        [&](std::uint64_t i) {
          if (!solve_in_quotient(psi, homs.at(i), limits)) {
            std::uint64_t current = best.load();
            while (i < current && !best.compare_exchange_weak(current, i)) {
            }
          }
        },
        &best);
    if (best.load() != none) {
      result.homs_tested += best.load() + 1;
      result.failure = LocalFailure{degree, best.load(), homs.at(best.load())};
      return result;
    }
    result.homs_tested += homs.size();
  }
  return result;
}

std::vector<SweepSummary> sweep(const Equation& psi, int max_degree, int jobs, const QuotientLimits& limits) {
  std::vector<SweepSummary> out;
  for (int degree = 1; degree <= max_degree; ++degree) {
    const HomEnumerator homs(psi.alphabet(), degree, limits);
    std::atomic<std::uint64_t> solvable{0};
    std::atomic<std::uint64_t> first{std::numeric_limits<std::uint64_t>::max()};
    parallel_for(homs.size(), jobs, [&](std::uint64_t i) {
      if (solve_in_quotient(psi, homs.at(i), limits)) {
        ++solvable;
      } else {
        std::uint64_t current = first.load();
        while (i < current && !first.compare_exchange_weak(current, i)) {
        }
      }
    });
    SweepSummary s{degree, homs.size(), solvable.load(), std::nullopt};
    if (first.load() != std::numeric_limits<std::uint64_t>::max()) s.first_unsolvable = first.load();
    out.push_back(s);
  }
  return out;
}

const char* to_string(WitnessMode mode) {
  switch (mode) {
    case WitnessMode::global_solution:
      return "GLOBAL_SOLUTION";
    case WitnessMode::local_failure:
      return "LOCAL_FAILURE";
    case WitnessMode::exhausted:
      return "EXHAUSTED";
  }
  return "?";
}

WitnessReport local_global_mpower_check(const Word& g, int m, const LocalGlobalOptions& options) {
  if (m < 1) throw PreconditionViolation("local_global_mpower_check requires m >= 1");
  if (g.rank() < 1) throw PreconditionViolation("local_global_mpower_check requires rank >= 1");
  if (options.max_degree < 1) throw MalformedInput("max degree must be at least 1");
  if (options.max_degree > options.limits.max_degree) {
    throw GuardViolation("max degree " + std::to_string(options.max_degree) + " exceeds the limit " +
                         std::to_string(options.limits.max_degree));
  }
  const auto started = std::chrono::steady_clock::now();
  WitnessReport report{.g = g, .m = m, .equation = Equation::power_equation(g, m)};
  report.max_degree = options.max_degree;

  if (auto root = is_m_power(g, m)) {
    report.mode = WitnessMode::global_solution;
    report.root = std::move(root);
    if (options.audit) {
      AuditResult audit;
      audit.degree = options.audit_degree.value_or(options.max_degree);
      for (const auto& s : sweep(report.equation, audit.degree, options.jobs, options.limits)) {
        audit.homs_checked += s.homs;
        audit.failures += s.homs - s.solvable;
      }
      report.homs_tested = audit.homs_checked;
      report.audit = audit;
    }
  } else {
    FailureSearch search = find_local_failure(report.equation, 1, options.max_degree, options.jobs, options.limits);
    report.homs_tested = search.homs_tested;
    if (search.failure) {
      report.mode = WitnessMode::local_failure;
      report.failure = std::move(search.failure);
    } else {
      report.mode = WitnessMode::exhausted;
    }
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

int exit_code(const WitnessReport& report) {
  switch (report.mode) {
    case WitnessMode::global_solution:
      return 0;
    case WitnessMode::local_failure:
      return 10;
    case WitnessMode::exhausted:
      return 20;
  }
  return 20;
}

nlohmann::json to_json(const WitnessReport& report) {
  nlohmann::json j;
  j["equation"] = format_equation(report.equation);
  j["g"] = format_word(report.g);
  j["m"] = report.m;
  j["mode"] = to_string(report.mode);
  j["max_degree"] = report.max_degree;
  if (report.root) j["assignment"] = {format_word(*report.root)};
  if (report.failure) {
    j["degree"] = report.failure->degree;
    j["hom_index"] = report.failure->index;
    j["hom"] = quotient_report_json(report.failure->hom, std::nullopt);
  }
  j["stats"] = {{"homs_tested", report.homs_tested}, {"elapsed_ms", report.elapsed_ms}};
  if (report.audit) {
    j["audit"] = {{"degree", report.audit->degree},
                  {"homs_checked", report.audit->homs_checked},
                  {"failures", report.audit->failures}};
  }
  if (report.mode == WitnessMode::exhausted) {
    j["note"] = "no witness quotient up to degree " + std::to_string(report.max_degree) +
                "; this is not a claim of local solvability";
  }
  return j;
}

ReductionReport reduction_pipeline(const Word& g, std::span<const Word> solution_gens,
                                   std::span<const StallingsGraph> family) {
  if (family.empty()) throw PreconditionViolation("reduction_pipeline needs a nonempty family");
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (!membership(family[j], g)) {
      throw PreconditionViolation("g = " + format_word(g) + " is not in family member " + std::to_string(j));
    }
    for (std::size_t i = 0; i < solution_gens.size(); ++i) {
      if (!membership(family[j], solution_gens[i])) {
        throw PreconditionViolation("solution generator " + std::to_string(i) + " = " +
                                    format_word(solution_gens[i]) + " is not in family member " +
                                    std::to_string(j));
      }
    }
  }

  const Word s[] = {g};
  ReductionReport report{.g = g,
                         .solution_gens = {solution_gens.begin(), solution_gens.end()},
                         .factor = directed_family_factor(s, family)};
  const StallingsGraph& h0 = report.factor.subgroup;
  const SpanningTreeBasis basis = spanning_tree_basis(h0);
  report.basis_h0 = basis.words();
  report.rank_h0 = h0.subgroup_rank();
  report.n = static_cast<int>(solution_gens.size());
  report.rank_within_bound = report.rank_h0 <= report.n;

  if (static_cast<int>(basis.basis.size()) != report.rank_h0) {
    throw std::logic_error("cycle basis size differs from |E| - |V| + 1");
  }
  const auto& cert = report.factor.certificate;
  const std::size_t j0 = report.factor.j0;
  bool certificate_ok = cert.basis_h == report.basis_h0;
  for (const Word& w : cert.basis_h) {
    certificate_ok = certificate_ok && membership(h0, w) &&
                     std::find(cert.basis_n.begin(), cert.basis_n.end(), w) != cert.basis_n.end();
  }
  if (!certificate_ok) throw std::logic_error("free-factor certificate failed verification");

  std::string members;
  for (std::size_t b : report.factor.j0_members) members += (members.empty() ? "" : ",") + std::to_string(b);
  report.steps = {
      {"g lies in every family member", true, "membership traced in each Stallings graph"},
      {"family closed under intersection", true,
       "finite stand-in for the directed system of finite-index subgroups containing the solution closure"},
      {"H0 = image of Gamma_{g} in Gamma_N", true,
       "H0 finitely generated; |E| = " + std::to_string(h0.edges().size()) +
           ", |V| = " + std::to_string(h0.num_vertices())},
      {"Gamma_H0 -> Gamma_{N_j0} injective", true,
       "j0 = " + std::to_string(j0) + " (members {" + members + "}); free-factor bases verified"},
      {"rank(H0) = |E| - |V| + 1", true, "rank(H0) = " + std::to_string(report.rank_h0)},
      {"rank(H0) <= n", true,
       std::string(report.rank_within_bound ? "holds" : "fails") + " at the finite level with n = " +
           std::to_string(report.n)},
      {"closure of H0 is topologically generated by n elements", false,
       "profinite step behind the rank bound; not machine-checked"},
      {"projection N -> H0 extends to the closures", false,
       "profinite extension step; not machine-checked"},
  };
  return report;
}

nlohmann::json to_json(const ReductionReport& report) {
  nlohmann::json j;
  j["g"] = format_word(report.g);
  j["n"] = report.n;
  j["solution_gens"] = nlohmann::json::array();
  for (const Word& w : report.solution_gens) j["solution_gens"].push_back(format_word(w));
  j["h0_basis"] = nlohmann::json::array();
  for (const Word& w : report.basis_h0) j["h0_basis"].push_back(format_word(w));
  j["rank_h0"] = report.rank_h0;
  j["rank_within_bound"] = report.rank_within_bound;
  j["j0"] = report.factor.j0;
  j["j0_members"] = report.factor.j0_members;
  j["certificate"] = {{"basis_h", nlohmann::json::array()}, {"basis_n", nlohmann::json::array()}};
  for (const Word& w : report.factor.certificate.basis_h) j["certificate"]["basis_h"].push_back(format_word(w));
  for (const Word& w : report.factor.certificate.basis_n) j["certificate"]["basis_n"].push_back(format_word(w));
  j["steps"] = nlohmann::json::array();
  for (const ProofStep& s : report.steps) {
    j["steps"].push_back({{"step", s.name},
                          {"status", s.machine_checked ? "machine-checked" : "not machine-checked"},
                          {"detail", s.detail}});
  }
  return j;
}

}  // namespace stallings
