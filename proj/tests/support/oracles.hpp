// Reference implementations used to cross-check the library. They are
// deliberately simple and share no code with the algorithms they check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reconfig/ccsdp.hpp"
#include "reconfig/equivalence.hpp"
#include "reconfig/syntax.hpp"

namespace reconfig::testing {

/// Greatest bisimulation by iterated refinement of the full relation.
/// rel[p][q] is true iff p and q are bisimilar.
class NaiveBisim {
 public:
  explicit NaiveBisim(const Lts& lts) : n_(lts.states.size()), rel_(n_ * n_, 1) {
    std::map<std::string, int> ids;
    succ_.resize(n_);
    for (const Edge& e : lts.edges) {
      auto [it, _] = ids.emplace(e.label.serialize(), static_cast<int>(ids.size()));
      succ_[e.source].push_back({it->second, e.target});
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t p = 0; p < n_; ++p) {
        for (std::size_t q = p + 1; q < n_; ++q) {
          if (!at(p, q)) continue;
          if (!simulates(p, q) || !simulates(q, p)) {
            rel_[p * n_ + q] = rel_[q * n_ + p] = 0;
            changed = true;
          }
        }
      }
    }
  }

  bool at(std::size_t p, std::size_t q) const { return rel_[p * n_ + q] != 0; }

 private:
  // Every move of p is answered by q.
  bool simulates(std::size_t p, std::size_t q) const {
    for (auto [l, p2] : succ_[p]) {
      bool answered = false;
      for (auto [m, q2] : succ_[q]) {
        if (l == m && at(p2, q2)) {
          answered = true;
          break;
        }
      }
      if (!answered) return false;
    }
    return true;
  }

  std::size_t n_;
  std::vector<std::uint8_t> rel_;
  std::vector<std::vector<std::pair<int, std::size_t>>> succ_;
};

/// Kahn's algorithm: true iff the edge relation has a cycle.
inline bool has_cycle(const Lts& lts) {
  const std::size_t n = lts.states.size();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : lts.edges) {
    adj[e.source].push_back(e.target);
    ++indeg[e.target];
  }
  std::queue<std::size_t> ready;
  for (std::size_t s = 0; s < n; ++s)
    if (indeg[s] == 0) ready.push(s);
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t s = ready.front();
    ready.pop();
    ++removed;
    for (std::size_t t : adj[s])
      if (--indeg[t] == 0) ready.push(t);
  }
  return removed != n;
}

/// Brute-force CCS^dp stepper for restriction-free terms with syntactic
/// fraction matching. Returns (label, printed canonical target) pairs.
class BruteCcs {
 public:
  explicit BruteCcs(const DefinitionEnv& env) : env_(env) {}

  std::set<std::pair<std::string, std::string>> steps(const Term& t) const {
    std::vector<Term> comps;
    flatten(t, comps);
    std::set<std::pair<std::string, std::string>> out;
    auto emit = [&](const std::string& label, std::vector<Term> parts) {
      out.insert({label, pretty_print(normalize(make_parallel(std::move(parts)), env_))});
    };

    std::vector<std::vector<Action>> acts(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) actions(comps[i], acts[i], 0);

    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (const Action& a : acts[i]) {
        auto parts = comps;
        parts[i] = a.next;
        emit(std::string(a.output ? "out " : "in ") + a.channel, parts);
      }
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (i == j) continue;
        for (const Action& a : acts[i]) {
          for (const Action& b : acts[j]) {
            if (a.output || !b.output || a.channel != b.channel) continue;
            auto parts = comps;
            parts[i] = a.next;
            parts[j] = b.next;
            emit("tau", parts);
          }
        }
      }
    }

    for (std::size_t f = 0; f < comps.size(); ++f) {
      if (comps[f].kind() != Kind::Fraction) continue;
      std::vector<Term> den;
      flatten_raw(comps[f].denominator(), den);
      if (den.empty()) continue;
      std::multiset<std::string> want;
      for (const Term& d : den) want.insert(canon(d));
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < comps.size(); ++i)
        if (i != f) others.push_back(i);
      if (others.size() < den.size()) continue;
      // Every subset of the siblings with the denominator's width.
      std::vector<bool> pick(others.size(), false);
      std::fill(pick.end() - static_cast<long>(den.size()), pick.end(), true);
      do {
        std::multiset<std::string> got;
        std::vector<Term> rest;
        for (std::size_t k = 0; k < others.size(); ++k) {
          if (pick[k]) got.insert(canon(comps[others[k]]));
          else rest.push_back(comps[others[k]]);
        }
        if (got == want) {
          rest.push_back(comps[f].numerator());
          emit("rcf", rest);
        }
      } while (std::next_permutation(pick.begin(), pick.end()));
    }
    return out;
  }

 private:
  struct Action {
    bool output;
    std::string channel;
    Term next;
  };

  std::string canon(const Term& t) const { return pretty_print(normalize(t, env_)); }

  static void flatten_raw(const Term& t, std::vector<Term>& out) {
    if (t.kind() == Kind::Parallel) {
      for (const Term& c : t.components()) flatten_raw(c, out);
    } else if (!t.is_nil()) {
      out.push_back(t);
    }
  }

  void flatten(const Term& t, std::vector<Term>& out) const { flatten_raw(t, out); }

  void actions(const Term& t, std::vector<Action>& out, int depth) const {
    if (depth > 64) return;
    switch (t.kind()) {
      case Kind::Input:
        out.push_back({false, t.name().text(), t.continuation()});
        break;
      case Kind::Output:
        out.push_back({true, t.name().text(), t.continuation()});
        break;
      case Kind::Sum:
        for (const Term& b : t.branches()) actions(b, out, depth + 1);
        break;
      case Kind::Constant:
        actions(env_.lookup(t.name().text()), out, depth + 1);
        break;
      default:
        break;
    }
  }

  const DefinitionEnv& env_;
};

}  // namespace reconfig::testing
