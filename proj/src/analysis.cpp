#include "reconfig/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "reconfig/ccsdp.hpp"
#include "reconfig/syntax.hpp"
#include "reconfig/webpi.hpp"

namespace reconfig {

using nlohmann::json;

std::vector<Step> silent_steps(const Term& term, const DefinitionEnv& env, Calculus calculus,
                               const MatchMode& mode) {
  std::vector<Step> out;
  if (calculus == Calculus::CCSdp) {
    for (Transition& t : silent_transitions(term, env, mode)) {
      std::string rule = t.label.kind() == LabelKind::Tau ? "sync" : "reconfig";
      out.push_back({std::move(t.label), std::move(rule), std::move(t.target)});
    }
  } else {
    for (Interaction& i : wp_step(term, env))
      out.push_back({std::move(i.label), std::string(trace_name(i.rule)), std::move(i.successor)});
  }
  std::sort(out.begin(), out.end(), [](const Step& a, const Step& b) {
    if (auto c = a.successor <=> b.successor; c != 0) return c < 0;
    return a.label < b.label;
  });
  return out;
}

StateSpace explore(const Term& term, const DefinitionEnv& env, Calculus calculus,
                   const MatchMode& mode, std::size_t bound, unsigned workers) {
  require_calculus(term, calculus);
  SuccessorFn succ = [&](const Term& s) {
    std::vector<Transition> out;
    for (Step& st : silent_steps(s, env, calculus, mode))
      out.push_back({std::move(st.label), std::move(st.successor)});
    return out;
  };
  StateGraph g = build_state_graph({normalize(term, env)}, succ, bound, /*truncate=*/true,
                                   workers);
  StateSpace space;
  space.calculus = calculus;
  space.lts = std::move(g.lts);
  space.truncated = g.truncated;
  space.expanded = std::move(g.expanded);
  space.pruned = std::move(g.pruned);
  return space;
}

bool is_inert(const Term& state) {
  switch (state.kind()) {
    case Kind::Nil:
    case Kind::Fraction:
      return true;
    case Kind::Restriction:
      return is_inert(state.body());
    case Kind::Parallel:
      return std::all_of(state.components().begin(), state.components().end(),
                         [](const Term& c) { return is_inert(c); });
    default:
      return false;
  }
}

DeadlockReport find_deadlocks(const StateSpace& space) {
  DeadlockReport report;
  report.within_bound_only = space.truncated;
  std::vector<bool> has_out(space.lts.states.size(), false);
  for (const Edge& e : space.lts.edges) has_out[e.source] = true;
  for (std::size_t s = 0; s < space.lts.states.size(); ++s) {
    bool expanded = s < space.expanded.size() ? space.expanded[s] : true;
    bool pruned = s < space.pruned.size() && space.pruned[s];
    if (!expanded || pruned || has_out[s]) continue;
    if (!is_inert(space.lts.states[s])) report.states.push_back(s);
  }
  return report;
}

std::string Verdict::to_string() const {
  switch (kind) {
    case Kind::Terminates: return "Terminates";
    case Kind::Diverges: return "Diverges";
    case Kind::Unknown: return "Unknown";
  }
  return "?";
}

Verdict check_termination(const StateSpace& space) {
  const Lts& lts = space.lts;
  const std::size_t n = lts.states.size();
  auto out = lts.out_edges();

  // Iterative depth-first search; a grey target closes a cycle.
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(n, White);
  std::vector<std::size_t> order;
  if (n > 0) order.push_back(lts.initial);
  for (std::size_t s = 0; s < n; ++s) order.push_back(s);

  for (std::size_t root : order) {
    if (colour[root] != White) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [s, next] = stack.back();
      if (next == out[s].size()) {
        colour[s] = Black;
        stack.pop_back();
        continue;
      }
      std::size_t t = lts.edges[out[s][next++]].target;
      if (colour[t] == Grey) {
        Verdict v;
        v.kind = Verdict::Kind::Diverges;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const auto& frame) { return frame.first == t; });
        for (; it != stack.end(); ++it) v.witness.push_back(it->first);
        v.witness.push_back(t);
        return v;
      }
      if (colour[t] == White) {
        colour[t] = Grey;
        stack.push_back({t, 0});
      }
    }
  }
  Verdict v;
  v.kind = space.truncated ? Verdict::Kind::Unknown : Verdict::Kind::Terminates;
  return v;
}

std::string_view to_string(Strategy s) {
  return s == Strategy::FirstEnabled ? "first" : "random";
}

Strategy strategy_from_string(std::string_view text) {
  if (text == "first") return Strategy::FirstEnabled;
  if (text == "random") return Strategy::Random;
  throw Error("unknown strategy '" + std::string(text) + "'");
}

ReductionTrace trace(const Term& term, const DefinitionEnv& env, Calculus calculus,
                     const MatchMode& mode, Strategy strategy, std::uint64_t seed,
                     std::size_t max_steps) {
  require_calculus(term, calculus);
  ReductionTrace out;
  out.calculus = calculus;
  out.strategy = strategy;
  out.seed = seed;
  out.initial = normalize(term, env);
  std::mt19937_64 rng(seed);
  Term current = out.initial;
  while (out.steps.size() < max_steps) {
    auto steps = silent_steps(current, env, calculus, mode);
    if (steps.empty()) break;
    std::size_t pick = strategy == Strategy::FirstEnabled ? 0 : rng() % steps.size();
    Step& chosen = steps[pick];
    out.steps.push_back({chosen.successor, chosen.rule, chosen.label.describe()});
    current = chosen.successor;
  }
  return out;
}

std::string trace_to_json(const ReductionTrace& t) {
  json steps = json::array();
  for (const TraceStep& s : t.steps)
    steps.push_back({{"term", pretty_print(s.term)}, {"rule", s.rule}, {"label", s.label}});
  json doc = {{"calculus", std::string(to_string(t.calculus))},
              {"seed", t.seed},
              {"strategy", std::string(to_string(t.strategy))},
              {"initial", pretty_print(t.initial)},
              {"steps", std::move(steps)}};
  return doc.dump(2) + "\n";
}

ReductionTrace trace_from_json(const std::string& text) {
  json doc = json::parse(text);
  ReductionTrace t;
  t.calculus = calculus_from_string(doc.at("calculus").get<std::string>());
  t.seed = doc.at("seed").get<std::uint64_t>();
  t.strategy = strategy_from_string(doc.value("strategy", std::string("random")));
  if (doc.contains("initial"))
    t.initial = parse_term(doc.at("initial").get<std::string>(), t.calculus);
  for (const json& s : doc.at("steps")) {
    t.steps.push_back({parse_term(s.at("term").get<std::string>(), t.calculus),
                       s.at("rule").get<std::string>(), s.at("label").get<std::string>()});
  }
  return t;
}

std::string trace_to_text(const ReductionTrace& t) {
  std::ostringstream os;
  os << "calculus: " << to_string(t.calculus) << "  strategy: " << to_string(t.strategy)
     << "  seed: " << t.seed << "\n";
  os << "   " << pretty_print(t.initial) << "\n";
  for (const TraceStep& s : t.steps) {
    os << "-> " << pretty_print(s.term) << "    [" << s.rule << ": " << s.label << "]\n";
  }
  os << t.steps.size() << " step(s)\n";
  return os.str();
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string state_caption(const Term& state) {
  constexpr std::size_t kMaxCaption = 120;
  std::string text = pretty_print(state);
  if (text.size() <= kMaxCaption) return text;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(text)));
  return text.substr(0, kMaxCaption) + "...#" + std::string(hash, 8);
}

std::string export_dot(const Lts& lts) {
  std::ostringstream os;
  os << "digraph lts {\n";
  os << "  node [shape=box];\n";
  for (std::size_t s = 0; s < lts.states.size(); ++s) {
    os << "  s" << s << " [label=\"" << dot_escape(state_caption(lts.states[s])) << "\"";
    if (s == lts.initial) os << ", peripheries=2";
    os << "];\n";
  }
  for (const Edge& e : lts.edges) {
    os << "  s" << e.source << " -> s" << e.target << " [label=\""
       << dot_escape(e.label.serialize()) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const StateSpace& space) { return export_dot(space.lts); }

std::string lts_to_json(const Lts& lts, bool truncated) {
  json states = json::array();
  for (const Term& s : lts.states) states.push_back(pretty_print(s));
  json edges = json::array();
  for (const Edge& e : lts.edges)
    edges.push_back({{"source", e.source}, {"label", e.label.serialize()}, {"target", e.target}});
  json doc = {{"initial", lts.initial},
              {"states", std::move(states)},
              {"edges", std::move(edges)},
              {"truncated", truncated}};
  return doc.dump(2) + "\n";
}

}  // namespace reconfig
