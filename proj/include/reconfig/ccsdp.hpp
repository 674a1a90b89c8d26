// CCS^dp: structural congruence, labelled transitions and the fraction
// reconfiguration rule.

#pragma once

#include <compare>
#include <vector>

#include "reconfig/label.hpp"
#include "reconfig/term.hpp"

namespace reconfig {

/// Canonical representative of the structural-congruence class of `term`.
///
/// Parallel compositions are flattened, stripped of 0 and sorted; sum
/// branches are sorted (duplicates kept); restrictions of unused names are
/// dropped and restricted names are renamed to depth-indexed canonical names.
/// A restricted name that is free in a constant inside its scope keeps its
/// original spelling, since renaming it would change the constant's meaning.
/// Constants are never unfolded. Works for both calculi.
Term normalize(const Term& term, const DefinitionEnv& env);

struct Transition {
  Label label;
  Term target;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend std::strong_ordering operator<=>(const Transition& a, const Transition& b) {
    if (auto c = a.target <=> b.target; c != 0) return c;
    return a.label <=> b.label;
  }
};

/// All transitions of `term` (input, output, tau and rcf), targets in normal
/// form, sorted and duplicate-free.
std::vector<Transition> transitions(const Term& term, const DefinitionEnv& env,
                                    const MatchMode& mode);

/// The tau and rcf transitions of `term`.
std::vector<Transition> silent_transitions(const Term& term, const DefinitionEnv& env,
                                           const MatchMode& mode);

/// Canonical successors under tau and rcf steps.
std::vector<Term> reduce_step(const Term& term, const DefinitionEnv& env,
                              const MatchMode& mode);

/// Does `candidate` match a fraction denominator under `mode`?
/// Throws StateBoundExceeded when a Bisim-mode comparison outgrows its bound.
bool matches(const Term& candidate, const Term& denominator, const MatchMode& mode,
             const DefinitionEnv& env);

/// Replaces every constant occurrence by its definition, `rounds` times.
Term unfold(const Term& term, const DefinitionEnv& env, unsigned rounds);

/// Throws CalculusViolation unless `term` is legal CCS^dp.
void require_calculus(const Term& term, Calculus calculus);

}  // namespace reconfig
