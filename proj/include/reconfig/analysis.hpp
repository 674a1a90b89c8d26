// Bounded analyses over the silent-step state space: stuck-state (deadlock)
// detection, termination verdicts, reduction traces and graph export.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reconfig/equivalence.hpp"
#include "reconfig/label.hpp"
#include "reconfig/term.hpp"

namespace reconfig {

/// A silent step: tau or rcf for CCS^dp, any reduction for Webpi.
struct Step {
  Label label;
  std::string rule;  // sync, reconfig, comm, body, trigger
  Term successor;
};

/// Silent steps of `term`, sorted by canonical successor then label.
std::vector<Step> silent_steps(const Term& term, const DefinitionEnv& env, Calculus calculus,
                               const MatchMode& mode);

struct StateSpace {
  Calculus calculus = Calculus::CCSdp;
  Lts lts;
  bool truncated = false;
  bool silent_only = true;
  std::vector<bool> expanded;
  std::vector<bool> pruned;
};

StateSpace explore(const Term& term, const DefinitionEnv& env, Calculus calculus,
                   const MatchMode& mode, std::size_t bound = MatchMode::kDefaultStateBound,
                   unsigned workers = 1);

/// 0, or a parallel composition of fractions only (possibly under
/// restrictions). Such states have finished; they are not stuck.
bool is_inert(const Term& state);

struct DeadlockReport {
  std::vector<std::size_t> states;  // sorted
  /// The space was truncated, so absence of stuck states is only known
  /// within the bound.
  bool within_bound_only = false;
};

/// Expanded, non-inert states without silent successors.
DeadlockReport find_deadlocks(const StateSpace& space);

struct Verdict {
  enum class Kind { Terminates, Diverges, Unknown };
  Kind kind = Kind::Unknown;
  /// For Diverges: a cycle of state indices whose first and last coincide.
  std::vector<std::size_t> witness;

  std::string to_string() const;
};

Verdict check_termination(const StateSpace& space);

enum class Strategy { FirstEnabled, Random };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view text);

struct TraceStep {
  Term term;  // state reached by the step
  std::string rule;
  std::string label;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ReductionTrace {
  Calculus calculus = Calculus::CCSdp;
  Strategy strategy = Strategy::FirstEnabled;
  std::uint64_t seed = 0;
  Term initial;
  std::vector<TraceStep> steps;

  friend bool operator==(const ReductionTrace&, const ReductionTrace&) = default;
};

/// Follows one silent path from `term` for at most `max_steps` steps.
/// FirstEnabled takes the least successor in canonical order; Random draws
/// from a generator seeded with `seed`.
ReductionTrace trace(const Term& term, const DefinitionEnv& env, Calculus calculus,
                     const MatchMode& mode, Strategy strategy, std::uint64_t seed,
                     std::size_t max_steps);

std::string trace_to_json(const ReductionTrace& trace);
ReductionTrace trace_from_json(const std::string& json);
std::string trace_to_text(const ReductionTrace& trace);

std::string export_dot(const Lts& lts);
std::string export_dot(const StateSpace& space);
std::string lts_to_json(const Lts& lts, bool truncated = false);

/// Node caption: the pretty-printed term, cut at 120 characters and suffixed
/// with a hash of the full text when longer.
std::string state_caption(const Term& state);

}  // namespace reconfig
