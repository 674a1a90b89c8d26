#include "reconfig/ccsdp.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "reconfig/equivalence.hpp"
#include "reconfig/syntax.hpp"

namespace reconfig {

namespace {

// ---------------------------------------------------------------------------
// Normalisation

class Normalizer {
 public:
  Normalizer(const Term& root, const DefinitionEnv& env) : env_(env) {
    NameSet avoid = free_names(root, env);
    avoid.insert(env.all_free_names().begin(), env.all_free_names().end());
    base_ = pick_base(avoid);
  }

  Term run(const Term& t, unsigned depth) {
    switch (t.kind()) {
      case Kind::Nil:
      case Kind::Constant:
      case Kind::OutputAtom:
        return t;
      case Kind::Input:
        return Term::input(t.name(), run(t.continuation(), depth));
      case Kind::Output:
        return Term::output(t.name(), run(t.continuation(), depth));
      case Kind::Sum: {
        std::vector<Term> branches;
        for (const Term& b : t.branches()) branches.push_back(run(b, depth));
        if (branches.size() == 1) return branches.front();
        std::sort(branches.begin(), branches.end());
        return Term::sum(std::move(branches));
      }
      case Kind::Parallel: {
        std::vector<Term> parts;
        for (const Term& c : t.components()) {
          for (Term& p : parallel_components(run(c, depth))) parts.push_back(std::move(p));
        }
        std::sort(parts.begin(), parts.end());
        if (parts.empty()) return Term::nil();
        if (parts.size() == 1) return parts.front();
        return Term::parallel(std::move(parts));
      }
      case Kind::Fraction:
        return Term::fraction(run(t.numerator(), depth), run(t.denominator(), depth));
      case Kind::Workunit:
        return Term::workunit(run(t.body(), depth), run(t.handler(), depth), t.name());
      case Kind::Restriction: {
        const Name& bound = t.name();
        if (free_names(t.body(), env_).count(bound) == 0) return run(t.body(), depth);
        if (pinned(bound, t.body())) {
          return Term::restriction(bound, run(t.body(), depth + 1));
        }
        Name canonical(base_ + std::to_string(depth));
        Term body = bound == canonical ? t.body() : substitute(t.body(), bound, canonical);
        return Term::restriction(canonical, run(body, depth + 1));
      }
    }
    return t;
  }

 private:
  // Canonical names are `<base><depth>`; the base is chosen so that no name
  // visible to the term or the environment has that shape.
  static std::string pick_base(const NameSet& avoid) {
    for (std::string base = "nu";; base += '_') {
      bool clash = std::any_of(avoid.begin(), avoid.end(), [&](const Name& n) {
        const std::string& s = n.text();
        return s.size() > base.size() && s.compare(0, base.size(), base) == 0 &&
               std::all_of(s.begin() + static_cast<long>(base.size()), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
      });
      if (!clash) return base;
    }
  }

  bool pinned(const Name& bound, const Term& body) const {
    if (body.kind() == Kind::Constant)
      return env_.constant_free_names(body.name().text()).count(bound) != 0;
    if (body.kind() == Kind::Restriction && body.name() == bound) return false;
    return std::any_of(body.children().begin(), body.children().end(),
                       [&](const Term& k) { return pinned(bound, k); });
  }

  const DefinitionEnv& env_;
  std::string base_;
};

// ---------------------------------------------------------------------------
// Transitions

bool is_complement(const Label& a, const Label& b) {
  return a.kind() == LabelKind::Output && b.kind() == LabelKind::Input &&
         a.channel() == b.channel();
}

Term replace_components(const std::vector<Term>& comps,
                        const std::vector<std::pair<std::size_t, Term>>& replacements,
                        const std::vector<std::size_t>& removed = {}) {
  std::vector<Term> out;
  out.reserve(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (std::find(removed.begin(), removed.end(), k) != removed.end()) continue;
    auto it = std::find_if(replacements.begin(), replacements.end(),
                           [&](const auto& r) { return r.first == k; });
    out.push_back(it == replacements.end() ? comps[k] : it->second);
  }
  return make_parallel(std::move(out));
}

// Calls `visit` with every size-`k` subset of `pool`, in lexicographic order.
void for_each_subset(const std::vector<std::size_t>& pool, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > pool.size()) return;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() == k) {
      visit(chosen);
      return;
    }
    for (std::size_t i = start; i + (k - chosen.size()) <= pool.size(); ++i) {
      chosen.push_back(pool[i]);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

class CcsStepper {
 public:
  CcsStepper(const DefinitionEnv& env, const MatchMode& mode) : env_(env), mode_(mode) {}

  // Transitions of a term whose parallel components are in normal form.
  // Targets are not normalised.
  std::vector<Transition> step(const Term& t) {
    switch (t.kind()) {
      case Kind::Nil:
      case Kind::Fraction:
      case Kind::OutputAtom:
      case Kind::Workunit:
        return {};
      case Kind::Input:
        return {{Label::input(t.name()), t.continuation()}};
      case Kind::Output:
        return {{Label::output(t.name()), t.continuation()}};
      case Kind::Sum: {
        std::vector<Transition> out;
        for (const Term& b : t.branches()) {
          auto bt = step(b);
          out.insert(out.end(), bt.begin(), bt.end());
        }
        return out;
      }
      case Kind::Constant:
        return step(normalize(env_.lookup(t.name().text()), env_));
      case Kind::Restriction: {
        std::vector<Transition> out;
        for (Transition& tr : step(t.body())) {
          bool visible = tr.label.kind() == LabelKind::Input ||
                         tr.label.kind() == LabelKind::Output;
          if (visible && tr.label.channel() == t.name()) continue;
          out.push_back({std::move(tr.label), Term::restriction(t.name(), tr.target)});
        }
        return out;
      }
      case Kind::Parallel:
        return step_parallel(parallel_components(t));
    }
    return {};
  }

 private:
  std::vector<Transition> step_parallel(const std::vector<Term>& comps) {
    std::vector<std::vector<Transition>> local;
    local.reserve(comps.size());
    for (const Term& c : comps) local.push_back(step(c));

    std::vector<Transition> out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (const Transition& tr : local[i])
        out.push_back({tr.label, replace_components(comps, {{i, tr.target}})});
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (i == j) continue;
        for (const Transition& a : local[i]) {
          for (const Transition& b : local[j]) {
            if (!is_complement(a.label, b.label)) continue;
            out.push_back({Label::tau(),
                           replace_components(comps, {{i, a.target}, {j, b.target}})});
          }
        }
      }
    }
    for (std::size_t f = 0; f < comps.size(); ++f) {
      if (comps[f].kind() != Kind::Fraction) continue;
      const Term& numerator = comps[f].numerator();
      const Term& denominator = comps[f].denominator();
      std::size_t width = parallel_components(denominator).size();
      if (width == 0) continue;
      std::vector<std::size_t> siblings;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        if (k != f) siblings.push_back(k);
      }
      for_each_subset(siblings, width, [&](const std::vector<std::size_t>& group) {
        std::vector<Term> parts;
        for (std::size_t k : group) parts.push_back(comps[k]);
        Term target = make_parallel(std::move(parts));
        if (!matches(target, denominator, mode_, env_)) return;
        std::vector<std::size_t> removed = group;
        removed.push_back(f);
        std::vector<Term> rest;
        for (std::size_t k = 0; k < comps.size(); ++k) {
          if (std::find(removed.begin(), removed.end(), k) == removed.end())
            rest.push_back(comps[k]);
        }
        rest.push_back(numerator);
        out.push_back({Label::reconfig(numerator, target), make_parallel(std::move(rest))});
      });
    }
    return out;
  }

  const DefinitionEnv& env_;
  const MatchMode& mode_;
};

std::vector<Transition> finish(std::vector<Transition> raw, const DefinitionEnv& env) {
  for (Transition& tr : raw) tr.target = normalize(tr.target, env);
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  return raw;
}

bool congruent_up_to_unfolding(const Term& a, const Term& b, const DefinitionEnv& env,
                               unsigned depth) {
  constexpr std::size_t kMaxUnfoldedSize = 200000;
  std::vector<Term> left{normalize(a, env)};
  std::vector<Term> right{normalize(b, env)};
  auto extend = [&](std::vector<Term>& seq, std::size_t want) {
    while (seq.size() <= want) {
      if (seq.back().size() > kMaxUnfoldedSize) return false;
      seq.push_back(normalize(unfold(seq.back(), env, 1), env));
    }
    return true;
  };
  for (unsigned total = 0; total <= 2 * depth; ++total) {
    for (unsigned i = total > depth ? total - depth : 0; i <= std::min(total, depth); ++i) {
      unsigned j = total - i;
      if (!extend(left, i) || !extend(right, j)) continue;
      if (alpha_equivalent(left[i], right[j], env)) return true;
    }
  }
  return false;
}

thread_local unsigned bisim_nesting = 0;

}  // namespace

Term normalize(const Term& term, const DefinitionEnv& env) {
  Normalizer n(term, env);
  return n.run(term, 0);
}

void require_calculus(const Term& term, Calculus calculus) {
  auto violations = validate_calculus(term, calculus);
  if (!violations.empty())
    throw CalculusViolation("calculus violation: " + violations.front().message);
}

std::vector<Transition> transitions(const Term& term, const DefinitionEnv& env,
                                    const MatchMode& mode) {
  require_calculus(term, Calculus::CCSdp);
  CcsStepper stepper(env, mode);
  return finish(stepper.step(normalize(term, env)), env);
}

std::vector<Transition> silent_transitions(const Term& term, const DefinitionEnv& env,
                                           const MatchMode& mode) {
  auto all = transitions(term, env, mode);
  std::erase_if(all, [](const Transition& t) { return !t.label.is_silent(); });
  return all;
}

std::vector<Term> reduce_step(const Term& term, const DefinitionEnv& env,
                              const MatchMode& mode) {
  std::vector<Term> out;
  for (Transition& t : silent_transitions(term, env, mode)) out.push_back(std::move(t.target));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool matches(const Term& candidate, const Term& denominator, const MatchMode& mode,
             const DefinitionEnv& env) {
  switch (mode.kind()) {
    case MatchMode::Kind::Syntactic:
      return alpha_equivalent(candidate, denominator, env);
    case MatchMode::Kind::Congruence:
      return congruent_up_to_unfolding(candidate, denominator, env, mode.unfold_depth());
    case MatchMode::Kind::Bisim: {
      constexpr unsigned kMaxNesting = 8;
      if (bisim_nesting >= kMaxNesting)
        throw StateBoundExceeded(mode.state_bound(),
                                 "bisimulation matching nested more than " +
                                     std::to_string(kMaxNesting) + " levels deep");
      ++bisim_nesting;
      try {
        bool result = bisim_terms(candidate, denominator, env, mode.state_bound(),
                                  Calculus::CCSdp, mode);
        --bisim_nesting;
        return result;
      } catch (...) {
        --bisim_nesting;
        throw;
      }
    }
  }
  return false;
}

Term unfold(const Term& term, const DefinitionEnv& env, unsigned rounds) {
  if (rounds == 0) return term;
  std::function<Term(const Term&)> once = [&](const Term& t) -> Term {
    switch (t.kind()) {
      case Kind::Nil:
      case Kind::OutputAtom:
        return t;
      case Kind::Constant:
        return env.lookup(t.name().text());
      case Kind::Input:
        return Term::input(t.name(), once(t.continuation()));
      case Kind::Output:
        return Term::output(t.name(), once(t.continuation()));
      case Kind::Sum:
      case Kind::Parallel: {
        std::vector<Term> kids;
        for (const Term& k : t.children()) kids.push_back(once(k));
        return t.kind() == Kind::Sum ? Term::sum(std::move(kids))
                                     : Term::parallel(std::move(kids));
      }
      case Kind::Restriction:
        return Term::restriction(t.name(), once(t.body()));
      case Kind::Fraction:
        return Term::fraction(once(t.numerator()), once(t.denominator()));
      case Kind::Workunit:
        return Term::workunit(once(t.body()), once(t.handler()), t.name());
    }
    return t;
  };
  Term out = term;
  for (unsigned r = 0; r < rounds; ++r) out = once(out);
  return out;
}

}  // namespace reconfig
