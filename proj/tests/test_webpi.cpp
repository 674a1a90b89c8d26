#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "reconfig/ccsdp.hpp"
#include "reconfig/syntax.hpp"
#include "reconfig/webpi.hpp"
#include "support/generators.hpp"

using namespace reconfig;
using reconfig::testing::GenConfig;
using reconfig::testing::TermGen;

namespace {

Term wp(const char* text) { return parse_term(text, Calculus::WebPi); }

Program sensor() {
  return parse("S = v?.e?.S + e?.v?.e'!; R = wu(S ; S ; e') | v! | e!; main = R",
               Calculus::WebPi);
}

std::set<Term> successors(const Term& t, const DefinitionEnv& env) {
  auto v = wp_reduce(t, env);
  return {v.begin(), v.end()};
}

std::set<Term> canon(std::initializer_list<const char*> texts, const DefinitionEnv& env) {
  std::set<Term> out;
  for (const char* t : texts) out.insert(normalize(wp(t), env));
  return out;
}

// Output atoms on `x` that can fire now: not under an input prefix and not
// inside a dormant handler.
int active_atoms(const Term& t, const Name& x) {
  switch (t.kind()) {
    case Kind::OutputAtom:
      return t.name() == x ? 1 : 0;
    case Kind::Parallel: {
      int n = 0;
      for (const Term& c : t.components()) n += active_atoms(c, x);
      return n;
    }
    case Kind::Restriction:
      return t.name() == x ? 0 : active_atoms(t.body(), x);
    case Kind::Workunit:
      return active_atoms(t.body(), x);
    default:
      return 0;
  }
}

bool has_unit_on(const Term& t, const Name& x) {
  if (t.kind() == Kind::Workunit && t.name() == x) return true;
  return std::any_of(t.children().begin(), t.children().end(),
                     [&](const Term& c) { return has_unit_on(c, x); });
}

GenConfig wp_config() {
  GenConfig cfg;
  cfg.calculus = Calculus::WebPi;
  cfg.constants = {"W", "V"};
  return cfg;
}

}  // namespace

TEST_CASE("trigger activates the handler") {
  DefinitionEnv env;
  CHECK(successors(wp("x! | wu(a?.0 ; b! ; x)"), env) == canon({"b!"}, env));
  auto steps = wp_step(wp("x! | wu(a?.0 ; b! ; x)"), env);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == WpRule::Trigger);
  CHECK(steps[0].label == Label::trigger(Name("x")));
}

TEST_CASE("case study first steps") {
  Program p = sensor();
  Term start = wp("wu(v?.e?.S + e?.v?.e'! ; S ; e') | v! | e!");
  CHECK(successors(start, p.env) ==
        canon({"wu(e?.S ; S ; e') | e!", "wu(v?.e'! ; S ; e') | v!"}, p.env));
  for (const Interaction& i : wp_step(start, p.env)) {
    CHECK(i.rule == WpRule::TransparentComm);
    CHECK(i.label.kind() == LabelKind::Comm);
    CHECK(i.label.across_workunit());
  }
  CHECK(successors(p.main, p.env) == successors(start, p.env));
}

TEST_CASE("self trigger from inside the body") {
  Program p = sensor();
  auto steps = wp_step(wp("wu(e'! ; S ; e')"), p.env);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == WpRule::Trigger);
  CHECK(steps[0].successor == Term::constant(Name("S")));
}

TEST_CASE("inert and blocked states") {
  DefinitionEnv env;
  CHECK(wp_reduce(Term::nil(), env).empty());
  CHECK(wp_reduce(wp("a! | b?.0"), env).empty());
  CHECK(wp_reduce(wp("wu(a?.0 ; 0 ; x)"), env).empty());
}

TEST_CASE("rule families") {
  DefinitionEnv env;
  SUBCASE("plain comm") {
    auto s = wp_step(wp("a! | a?.b!"), env);
    REQUIRE(s.size() == 1);
    CHECK(s[0].rule == WpRule::Comm);
    CHECK_FALSE(s[0].label.across_workunit());
    CHECK(s[0].successor == wp("b!"));
  }
  SUBCASE("output leaving a body") {
    auto s = wp_step(wp("wu(a! ; 0 ; x) | a?.b!"), env);
    REQUIRE(s.size() == 1);
    CHECK(s[0].rule == WpRule::TransparentComm);
    CHECK(s[0].successor == normalize(wp("wu(0 ; 0 ; x) | b!"), env));
  }
  SUBCASE("body reduction") {
    auto s = wp_step(wp("wu(a! | a?.b! ; 0 ; x)"), env);
    REQUIRE(s.size() == 1);
    CHECK(s[0].rule == WpRule::Body);
    CHECK(s[0].label.kind() == LabelKind::Body);
    CHECK(s[0].successor == wp("wu(b! ; 0 ; x)"));
  }
  SUBCASE("transparency through nested units") {
    auto s = wp_step(wp("a! | wu(wu(a?.b! ; 0 ; y) ; 0 ; x)"), env);
    REQUIRE(s.size() == 1);
    CHECK(s[0].successor == wp("wu(wu(b! ; 0 ; y) ; 0 ; x)"));
  }
  SUBCASE("inner trigger may activate inner or outer unit") {
    auto s = successors(wp("wu(x! | wu(0 ; a! ; x) ; b! ; x)"), env);
    CHECK(s == canon({"b!", "wu(a! ; b! ; x)"}, env));
  }
  SUBCASE("restriction confines triggers") {
    CHECK(wp_reduce(wp("x! | new x in wu(0 ; b! ; x)"), env).empty());
    CHECK(successors(wp("new x in (x! | wu(0 ; b! ; x))"), env) == canon({"b!"}, env));
  }
  SUBCASE("a handler fires once") {
    Term t = wp("x! | x! | wu(0 ; 0 ; x)");
    CHECK(successors(t, env) == canon({"x!"}, env));
    CHECK(wp_reduce(wp("x!"), env).empty());
  }
  SUBCASE("constants unfold") {
    Program p = parse("K = a?.K; main = a! | K", Calculus::WebPi);
    CHECK(successors(p.main, p.env) == std::set<Term>{Term::constant(Name("K"))});
  }
  SUBCASE("ccs terms are rejected") {
    CHECK_THROWS_AS(wp_step(Term::fraction(Term::nil(), Term::nil()), env), CalculusViolation);
    CHECK_THROWS_AS(wp_step(Term::output(Name("a"), wp("b?.0")), env), CalculusViolation);
  }
}

TEST_CASE("trigger atoms left in a discarded body go with it") {
  DefinitionEnv env;
  auto s = successors(wp("x! | wu(x! | a?.0 ; b! ; x)"), env);
  // The outer atom fires and the inner one is dropped with the body, or the
  // inner one fires and the outer one stays.
  CHECK(s == canon({"b!", "x! | b!"}, env));
}

TEST_CASE("enabled interactions") {
  DefinitionEnv env;
  auto trig = wp_enabled_interactions(wp("x! | wu(0 ; b! ; x)"), env);
  REQUIRE(trig.size() == 1);
  CHECK(trig[0].rule == "TRIGGER");
  CHECK(trig[0].redex == "on x");

  auto comm = wp_enabled_interactions(wp("a! | a?.0"), env);
  REQUIRE(comm.size() == 1);
  CHECK(comm[0].rule == "COMM");
  CHECK(comm[0].redex == "on a");

  Program p = sensor();
  auto start = wp_enabled_interactions(p.main, p.env);
  REQUIRE(start.size() == 2);
  std::set<std::string> seen;
  for (const auto& e : start) {
    CHECK(e.rule == "TRANSPARENT-COMM");
    seen.insert(e.redex);
  }
  CHECK(seen == std::set<std::string>{"on e", "on v"});
}

TEST_CASE("case study traces") {
  Program p = sensor();
  auto step_on = [&](const Term& t, WpRule rule, const char* channel) {
    auto s = wp_step(t, p.env);
    auto it = std::find_if(s.begin(), s.end(), [&](const Interaction& i) {
      return i.rule == rule && i.label.channel() == Name(channel);
    });
    REQUIRE(it != s.end());
    return it->successor;
  };
  Term s0 = normalize(p.main, p.env);

  // Normal case: v then e, back to the unit running S.
  Term n1 = step_on(s0, WpRule::TransparentComm, "v");
  Term n2 = step_on(n1, WpRule::TransparentComm, "e");
  CHECK(n1 == normalize(wp("e! | wu(e?.S ; S ; e')"), p.env));
  CHECK(n2 == wp("wu(S ; S ; e')"));

  // Erroneous case: e, then v, then the handler takes over.
  Term e1 = step_on(s0, WpRule::TransparentComm, "e");
  Term e2 = step_on(e1, WpRule::TransparentComm, "v");
  Term e3 = step_on(e2, WpRule::Trigger, "e'");
  CHECK(e2 == wp("wu(e'! ; S ; e')"));
  CHECK(e3 == Term::constant(Name("S")));
}

TEST_CASE("property: trigger consumption and workunit erasure") {
  DefinitionEnv env = reconfig::testing::webpi_env();
  TermGen gen(wp_config(), 91);
  const Name x("x");
  int triggers = 0;
  for (int i = 0; i < 1000; ++i) {
    // One active atom on x, either inside the body or outside the unit.
    bool inside = gen.coin(50);
    Term body = gen.term(2);
    if (inside) body = Term::parallel({body, Term::output_atom(x)});
    Term unit = Term::workunit(body, gen.term(2), x);
    Term t = Term::parallel({unit, gen.term(2)});
    if (!inside) t = Term::parallel({t, Term::output_atom(x)});
    INFO(pretty_print(t));
    int before = active_atoms(normalize(t, env), x);
    for (const Interaction& s : wp_step(t, env)) {
      if (s.rule != WpRule::Trigger || s.label.channel() != x) continue;
      ++triggers;
      INFO(pretty_print(s.successor));
      REQUIRE(before >= 1);
      REQUIRE(active_atoms(s.successor, x) == before - 1);
      REQUIRE_FALSE(has_unit_on(s.successor, x));
    }
  }
  CHECK(triggers > 300);
}

TEST_CASE("property: comm symmetry, canonical successors, diagnostics") {
  DefinitionEnv env = reconfig::testing::webpi_env();
  TermGen gen(wp_config(), 92);
  for (int i = 0; i < 1000; ++i) {
    Term P = gen.term();
    Term x = Term::output_atom(gen.name());
    INFO(pretty_print(P));
    auto left = wp_reduce(Term::parallel({x, P}), env);
    auto right = wp_reduce(Term::parallel({P, x}), env);
    REQUIRE(left == right);

    auto steps = wp_step(P, env);
    REQUIRE(wp_enabled_interactions(P, env).size() == steps.size());
    std::set<Term> distinct;
    for (const Interaction& s : steps) {
      REQUIRE(normalize(s.successor, env) == s.successor);
      REQUIRE(validate_calculus(s.successor, Calculus::WebPi).empty());
      distinct.insert(s.successor);
    }
    REQUIRE(distinct.size() == steps.size());
  }
}
