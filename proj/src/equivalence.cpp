#include "reconfig/equivalence.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <map>
#include <thread>
#include <unordered_map>
#include <utility>

#include "reconfig/webpi.hpp"

namespace reconfig {

StateBoundExceeded::StateBoundExceeded(std::size_t bound)
    : StateBoundExceeded(bound, "state bound of " + std::to_string(bound) + " exceeded") {}

StateBoundExceeded::StateBoundExceeded(std::size_t bound, const std::string& message)
    : Error(message), bound_(bound) {}

std::vector<std::vector<std::size_t>> Lts::out_edges() const {
  std::vector<std::vector<std::size_t>> out(states.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].source].push_back(e);
  return out;
}

std::vector<Transition> labelled_successors(const Term& state, const DefinitionEnv& env,
                                            Calculus calculus, const MatchMode& mode) {
  if (calculus == Calculus::CCSdp) return transitions(state, env, mode);
  std::vector<Transition> out;
  for (Interaction& i : wp_step(state, env))
    out.push_back({std::move(i.label), std::move(i.successor)});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<Transition>> expand_layer(const std::vector<Term>& states,
                                                  std::size_t lo, std::size_t hi,
                                                  const SuccessorFn& successors,
                                                  unsigned workers) {
  std::vector<std::vector<Transition>> out(hi - lo);
  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t s = from; s < to; ++s) {
      auto succ = successors(states[s]);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      out[s - lo] = std::move(succ);
    }
  };
  std::size_t n = hi - lo;
  if (workers <= 1 || n < 2) {
    work(lo, hi);
    return out;
  }
  std::size_t chunks = std::min<std::size_t>(workers, n);
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> pool;
    for (std::size_t c = 0; c < chunks; ++c) {
      std::size_t from = lo + n * c / chunks;
      std::size_t to = lo + n * (c + 1) / chunks;
      pool.emplace_back([&, c, from, to] {
        try {
          work(from, to);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

StateGraph build_state_graph(const std::vector<Term>& roots, const SuccessorFn& successors,
                             std::size_t bound, bool truncate, unsigned workers) {
  if (bound == 0) throw Error("state bound must be positive");
  StateGraph g;
  Lts& lts = g.lts;
  std::unordered_map<Term, std::size_t, TermHash> index;

  auto intern = [&](const Term& t) -> std::optional<std::size_t> {
    if (auto it = index.find(t); it != index.end()) return it->second;
    if (lts.states.size() >= bound) {
      if (!truncate) throw StateBoundExceeded(bound);
      g.truncated = true;
      return std::nullopt;
    }
    index.emplace(t, lts.states.size());
    lts.states.push_back(t);
    g.expanded.push_back(false);
    g.pruned.push_back(false);
    return lts.states.size() - 1;
  };

  for (const Term& r : roots) {
    auto id = intern(r);
    if (!id) throw StateBoundExceeded(bound, "more start states than the state bound");
    lts.roots.push_back(*id);
  }
  lts.initial = lts.roots.empty() ? 0 : lts.roots.front();

  std::size_t lo = 0;
  while (lo < lts.states.size()) {
    std::size_t hi = lts.states.size();
    auto layer = expand_layer(lts.states, lo, hi, successors, workers);
    for (std::size_t s = lo; s < hi; ++s) {
      g.expanded[s] = true;
      for (Transition& tr : layer[s - lo]) {
        auto target = intern(tr.target);
        if (!target) {
          g.pruned[s] = true;
          continue;
        }
        lts.edges.push_back({s, std::move(tr.label), *target});
      }
    }
    lo = hi;
  }
  return g;
}

Lts build_lts(const Term& term, const DefinitionEnv& env, Calculus calculus,
              const MatchMode& mode, std::size_t bound) {
  return build_lts(std::vector<Term>{term}, env, calculus, mode, bound);
}

Lts build_lts(const std::vector<Term>& terms, const DefinitionEnv& env, Calculus calculus,
              const MatchMode& mode, std::size_t bound) {
  std::vector<Term> roots;
  roots.reserve(terms.size());
  for (const Term& t : terms) {
    require_calculus(t, calculus);
    roots.push_back(normalize(t, env));
  }
  SuccessorFn succ = [&](const Term& s) {
    return labelled_successors(s, env, calculus, mode);
  };
  return build_state_graph(roots, succ, bound, /*truncate=*/false).lts;
}

std::vector<std::size_t> bisim_partition(const Lts& lts) {
  const std::size_t n = lts.states.size();
  if (n == 0) return {};

  std::map<std::string, std::size_t> label_ids;
  std::vector<std::size_t> edge_label(lts.edges.size());
  for (std::size_t e = 0; e < lts.edges.size(); ++e)
    edge_label[e] = label_ids.emplace(lts.edges[e].label.serialize(), label_ids.size())
                        .first->second;
  const std::size_t labels = label_ids.size();

  // Predecessors by label: pred[t][l] lists sources s with s -l-> t.
  std::vector<std::vector<std::vector<std::size_t>>> pred(
      n, std::vector<std::vector<std::size_t>>(labels));
  for (std::size_t e = 0; e < lts.edges.size(); ++e)
    pred[lts.edges[e].target][edge_label[e]].push_back(lts.edges[e].source);

  std::vector<std::size_t> block(n, 0);
  std::vector<std::vector<std::size_t>> members{{}};
  for (std::size_t s = 0; s < n; ++s) members[0].push_back(s);

  std::vector<std::size_t> worklist{0};
  std::vector<bool> queued{true};
  std::vector<std::size_t> mark_epoch(n, 0);
  std::size_t epoch = 0;

  while (!worklist.empty()) {
    std::size_t splitter = worklist.back();
    worklist.pop_back();
    queued[splitter] = false;
    const std::vector<std::size_t> targets = members[splitter];

    for (std::size_t l = 0; l < labels; ++l) {
      ++epoch;
      std::vector<std::size_t> marked;
      for (std::size_t t : targets) {
        for (std::size_t s : pred[t][l]) {
          if (mark_epoch[s] != epoch) {
            mark_epoch[s] = epoch;
            marked.push_back(s);
          }
        }
      }
      if (marked.empty()) continue;

      std::map<std::size_t, std::vector<std::size_t>> touched;
      for (std::size_t s : marked) touched[block[s]].push_back(s);
      for (auto& [b, hit] : touched) {
        if (hit.size() == members[b].size()) continue;
        std::size_t fresh = members.size();
        std::vector<std::size_t> rest;
        rest.reserve(members[b].size() - hit.size());
        for (std::size_t s : members[b]) {
          if (mark_epoch[s] != epoch) rest.push_back(s);
        }
        for (std::size_t s : hit) block[s] = fresh;
        members[b] = std::move(rest);
        members.push_back(hit);
        queued.push_back(true);
        worklist.push_back(fresh);
        if (!queued[b]) {
          queued[b] = true;
          worklist.push_back(b);
        }
      }
    }
  }

  // Renumber blocks by first occurrence.
  std::vector<std::size_t> renumber(members.size(), n);
  std::size_t next = 0;
  std::vector<std::size_t> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (renumber[block[s]] == n) renumber[block[s]] = next++;
    out[s] = renumber[block[s]];
  }
  return out;
}

bool strong_bisim(const Lts& lts, std::size_t s1, std::size_t s2) {
  if (s1 >= lts.states.size() || s2 >= lts.states.size())
    throw Error("state index out of range");
  if (s1 == s2) return true;
  auto blocks = bisim_partition(lts);
  return blocks[s1] == blocks[s2];
}

bool bisim_terms(const Term& t1, const Term& t2, const DefinitionEnv& env, std::size_t bound,
                 Calculus calculus, const MatchMode& mode) {
  Lts lts = build_lts(std::vector<Term>{t1, t2}, env, calculus, mode, bound);
  return strong_bisim(lts, lts.roots[0], lts.roots[1]);
}

}  // namespace reconfig
