// Reduction semantics of the Webpi-infinity fragment: asynchronous outputs,
// communication that crosses workunit boundaries, body reductions and
// trigger-driven handler activation. A triggered unit <P;Q>_x becomes Q.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "reconfig/label.hpp"
#include "reconfig/term.hpp"

namespace reconfig {

enum class WpRule { Comm, TransparentComm, Body, Trigger };

/// `COMM`, `TRANSPARENT-COMM`, `BODY`, `TRIGGER`.
std::string_view to_string(WpRule rule);
/// Trace spelling: `comm`, `body`, `trigger`.
std::string_view trace_name(WpRule rule);

struct Interaction {
  WpRule rule;
  Label label;
  Term successor;  // canonical
};

/// Every enabled rule instance, one per distinct canonical successor, sorted
/// by successor.
std::vector<Interaction> wp_step(const Term& term, const DefinitionEnv& env);

std::vector<Term> wp_reduce(const Term& term, const DefinitionEnv& env);

struct EnabledInteraction {
  std::string rule;
  std::string redex;
};

/// Diagnostic view of wp_step: rule name plus the names involved.
std::vector<EnabledInteraction> wp_enabled_interactions(const Term& term,
                                                        const DefinitionEnv& env);

}  // namespace reconfig
