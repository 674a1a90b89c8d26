#include "support/generators.hpp"

#include <algorithm>

#include "reconfig/ccsdp.hpp"

namespace reconfig::testing {

Term TermGen::guarded(int depth) {
  Name ch = name();
  if (cfg_.calculus == Calculus::WebPi) {
    if (coin(40)) return Term::output_atom(ch);
    return Term::input(ch, proc(depth - 1));
  }
  Term cont = proc(depth - 1);
  return coin(50) ? Term::input(ch, cont) : Term::output(ch, cont);
}

Term TermGen::proc(int depth) {
  if (depth <= 0) {
    switch (below(4)) {
      case 0:
        return Term::nil();
      case 1:
        if (!cfg_.constants.empty()) return Term::constant(Name(pick(cfg_.constants)));
        return Term::nil();
      default:
        if (cfg_.calculus == Calculus::WebPi && coin(50)) return Term::output_atom(name());
        return Term::input(name(), Term::nil());
    }
  }
  unsigned roll = static_cast<unsigned>(below(100));
  if (roll < 35) {
    std::size_t k = 1 + below(3);
    if (k == 1) return guarded(depth);
    std::vector<Term> branches;
    for (std::size_t i = 0; i < k; ++i) branches.push_back(guarded(depth));
    return Term::sum(std::move(branches));
  }
  if (roll < 55) {
    std::size_t k = 2 + below(2);
    std::vector<Term> comps;
    for (std::size_t i = 0; i < k; ++i) comps.push_back(proc(depth - 1));
    return Term::parallel(std::move(comps));
  }
  if (roll < 65 && cfg_.restrictions) return Term::restriction(name(), proc(depth - 1));
  if (roll < 75) {
    if (cfg_.calculus == Calculus::CCSdp && cfg_.fractions)
      return Term::fraction(proc(depth - 1), proc(depth - 1));
    if (cfg_.calculus == Calculus::WebPi && cfg_.workunits)
      return Term::workunit(proc(depth - 1), proc(depth - 1), name());
  }
  if (roll < 85 && !cfg_.constants.empty()) return Term::constant(Name(pick(cfg_.constants)));
  if (roll < 92) return Term::nil();
  return guarded(depth);
}

Term TermGen::nonzero_term(const DefinitionEnv& env) {
  for (;;) {
    Term t = term();
    if (!normalize(t, env).is_nil()) return t;
  }
}

namespace {

bool has_constant(const Term& t) {
  if (t.kind() == Kind::Constant) return true;
  return std::any_of(t.children().begin(), t.children().end(), has_constant);
}

}  // namespace

Term congruent_variant(const Term& t, std::mt19937_64& rng) {
  auto coin = [&](unsigned percent) { return rng() % 100 < percent; };
  Term out;
  switch (t.kind()) {
    case Kind::Nil:
    case Kind::Constant:
    case Kind::OutputAtom:
      out = t;
      break;
    case Kind::Input:
      out = Term::input(t.name(), congruent_variant(t.continuation(), rng));
      break;
    case Kind::Output:
      out = Term::output(t.name(), congruent_variant(t.continuation(), rng));
      break;
    case Kind::Sum: {
      std::vector<Term> kids;
      // Branches must stay prefixes, so only their continuations vary.
      for (const Term& b : t.branches()) {
        if (b.kind() == Kind::OutputAtom) {
          kids.push_back(b);
          continue;
        }
        Term cont = congruent_variant(b.continuation(), rng);
        kids.push_back(b.kind() == Kind::Input ? Term::input(b.name(), cont)
                                               : Term::output(b.name(), cont));
      }
      std::shuffle(kids.begin(), kids.end(), rng);
      out = Term::sum(std::move(kids));
      break;
    }
    case Kind::Parallel: {
      std::vector<Term> kids;
      for (const Term& c : t.components()) kids.push_back(congruent_variant(c, rng));
      if (coin(30)) kids.push_back(Term::nil());
      std::shuffle(kids.begin(), kids.end(), rng);
      if (kids.size() >= 3 && coin(50)) {
        Term inner = Term::parallel({kids[0], kids[1]});
        kids.erase(kids.begin(), kids.begin() + 2);
        kids.push_back(inner);
      }
      out = Term::parallel(std::move(kids));
      break;
    }
    case Kind::Restriction: {
      Term body = congruent_variant(t.body(), rng);
      Name bound = t.name();
      if (!has_constant(body) && coin(60)) {
        Name fresh(bound.text() + "x");
        NameSet fn = free_names(body, DefinitionEnv());
        if (fn.count(fresh) == 0) {
          body = substitute(body, bound, fresh);
          bound = fresh;
        }
      }
      out = Term::restriction(bound, body);
      break;
    }
    case Kind::Fraction:
      out = Term::fraction(congruent_variant(t.numerator(), rng),
                           congruent_variant(t.denominator(), rng));
      break;
    case Kind::Workunit:
      out = Term::workunit(congruent_variant(t.body(), rng), congruent_variant(t.handler(), rng),
                           t.name());
      break;
  }
  if (coin(10)) out = Term::parallel({out, Term::nil()});
  if (coin(5)) out = Term::restriction(Name("unusedz"), out);
  return out;
}

std::vector<Term> enumerate_ccs_terms(int max_ops, const std::vector<std::string>& names) {
  std::vector<std::vector<Term>> terms(max_ops + 1);
  std::vector<std::vector<Term>> prefixes(max_ops + 1);
  // Non-empty lists of prefixes joined by '+'; ops include the joins.
  std::vector<std::vector<std::vector<Term>>> branch_lists(max_ops + 1);

  terms[0].push_back(Term::nil());
  for (int n = 1; n <= max_ops; ++n) {
    for (const Term& cont : terms[n - 1]) {
      for (const std::string& x : names) {
        prefixes[n].push_back(Term::input(Name(x), cont));
        prefixes[n].push_back(Term::output(Name(x), cont));
      }
    }
    for (const Term& p : prefixes[n]) branch_lists[n].push_back({p});
    for (int i = 1; i + 1 < n; ++i) {
      for (const Term& p : prefixes[i]) {
        for (const auto& rest : branch_lists[n - i - 1]) {
          std::vector<Term> list{p};
          list.insert(list.end(), rest.begin(), rest.end());
          branch_lists[n].push_back(std::move(list));
        }
      }
    }

    std::vector<Term>& out = terms[n];
    out.insert(out.end(), prefixes[n].begin(), prefixes[n].end());
    for (const auto& list : branch_lists[n]) {
      if (list.size() >= 2) out.push_back(Term::sum(list));
    }
    for (int i = 0; i <= n - 1; ++i) {
      for (const Term& l : terms[i]) {
        for (const Term& r : terms[n - 1 - i]) out.push_back(Term::parallel({l, r}));
      }
    }
    for (const Term& body : terms[n - 1]) {
      for (const std::string& x : names) out.push_back(Term::restriction(Name(x), body));
    }
  }
  std::vector<Term> all;
  for (auto& level : terms) all.insert(all.end(), level.begin(), level.end());
  return all;
}

DefinitionEnv ccs_env() {
  return parse("A = a!.A + b?.0; B = a?.B + c!.0; main = 0", Calculus::CCSdp).env;
}

DefinitionEnv webpi_env() {
  return parse("W = a?.(W | a!) + b?.0; V = c?.b!; main = 0", Calculus::WebPi).env;
}

}  // namespace reconfig::testing
