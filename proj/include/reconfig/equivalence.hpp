// Finite labelled transition systems and strong bisimilarity.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "reconfig/ccsdp.hpp"
#include "reconfig/label.hpp"
#include "reconfig/term.hpp"

namespace reconfig {

class StateBoundExceeded : public Error {
 public:
  explicit StateBoundExceeded(std::size_t bound);
  StateBoundExceeded(std::size_t bound, const std::string& message);
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

struct Edge {
  std::size_t source;
  Label label;
  std::size_t target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// States are canonical terms numbered in breadth-first discovery order.
struct Lts {
  std::vector<Term> states;
  std::vector<Edge> edges;
  std::size_t initial = 0;
  /// Start states in the order given to the builder; `initial` is roots[0].
  std::vector<std::size_t> roots;

  std::size_t state_count() const { return states.size(); }
  std::size_t edge_count() const { return edges.size(); }
  /// Outgoing edge indices per state.
  std::vector<std::vector<std::size_t>> out_edges() const;
};

/// All labelled steps of a state: transitions() for CCS^dp, wp_step() for
/// Webpi.
std::vector<Transition> labelled_successors(const Term& state, const DefinitionEnv& env,
                                            Calculus calculus, const MatchMode& mode);

using SuccessorFn = std::function<std::vector<Transition>(const Term&)>;

struct StateGraph {
  Lts lts;
  bool truncated = false;
  /// Successors of the state were computed.
  std::vector<bool> expanded;
  /// Some successor of the state was dropped because of the bound.
  std::vector<bool> pruned;
};

/// Breadth-first closure of `roots` (already canonical) under `successors`.
/// Each frontier layer may be expanded by `workers` threads; the result does
/// not depend on the worker count. When more than `bound` states are found
/// the build either throws StateBoundExceeded or, if `truncate` is set,
/// keeps the first `bound` states and marks the graph truncated.
StateGraph build_state_graph(const std::vector<Term>& roots, const SuccessorFn& successors,
                             std::size_t bound, bool truncate, unsigned workers = 1);

Lts build_lts(const Term& term, const DefinitionEnv& env, Calculus calculus,
              const MatchMode& mode, std::size_t bound);

/// One LTS reachable from several start terms; `roots[i]` is the state of
/// `terms[i]`.
Lts build_lts(const std::vector<Term>& terms, const DefinitionEnv& env, Calculus calculus,
              const MatchMode& mode, std::size_t bound);

/// Coarsest stable partition of the states: block id per state. Block ids
/// are numbered by first occurrence so equal LTSs give equal vectors.
std::vector<std::size_t> bisim_partition(const Lts& lts);

bool strong_bisim(const Lts& lts, std::size_t s1, std::size_t s2);

bool bisim_terms(const Term& t1, const Term& t2, const DefinitionEnv& env, std::size_t bound,
                 Calculus calculus = Calculus::CCSdp,
                 const MatchMode& mode = MatchMode::syntactic());

}  // namespace reconfig
