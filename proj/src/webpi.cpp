#include "reconfig/webpi.hpp"

#include <algorithm>
#include <utility>

#include "reconfig/ccsdp.hpp"

namespace reconfig {

std::string_view to_string(WpRule rule) {
  switch (rule) {
    case WpRule::Comm: return "COMM";
    case WpRule::TransparentComm: return "TRANSPARENT-COMM";
    case WpRule::Body: return "BODY";
    case WpRule::Trigger: return "TRIGGER";
  }
  return "?";
}

std::string_view trace_name(WpRule rule) {
  switch (rule) {
    case WpRule::Comm:
    case WpRule::TransparentComm: return "comm";
    case WpRule::Body: return "body";
    case WpRule::Trigger: return "trigger";
  }
  return "?";
}

namespace {

// An action a term can contribute to an enclosing parallel composition,
// with what remains of the term once the action is taken.
struct Offer {
  Name name;
  Term residual;
  bool across_workunit;
};

struct Reduction {
  WpRule rule;
  Label label;
  Term residual;
};

struct Offers {
  std::vector<Offer> outputs;
  std::vector<Offer> inputs;
  std::vector<Offer> units;  // workunits by trigger; residual has the handler in place
  std::vector<Reduction> reductions;
};

Term replace(const std::vector<Term>& comps, std::size_t i, const Term& ti) {
  std::vector<Term> out = comps;
  out[i] = ti;
  return make_parallel(std::move(out));
}

Term replace(const std::vector<Term>& comps, std::size_t i, const Term& ti, std::size_t j,
             const Term& tj) {
  std::vector<Term> out = comps;
  out[i] = ti;
  out[j] = tj;
  return make_parallel(std::move(out));
}

class WebPiStepper {
 public:
  explicit WebPiStepper(const DefinitionEnv& env) : env_(env) {}

  Offers offers(const Term& t) {
    Offers o;
    switch (t.kind()) {
      case Kind::Nil:
      case Kind::Fraction:
        break;
      case Kind::OutputAtom:
        o.outputs.push_back({t.name(), Term::nil(), false});
        break;
      case Kind::Output:
        o.outputs.push_back({t.name(), t.continuation(), false});
        break;
      case Kind::Input:
        o.inputs.push_back({t.name(), t.continuation(), false});
        break;
      case Kind::Sum:
        for (const Term& b : t.branches()) {
          Offers ob = offers(b);
          o.outputs.insert(o.outputs.end(), ob.outputs.begin(), ob.outputs.end());
          o.inputs.insert(o.inputs.end(), ob.inputs.begin(), ob.inputs.end());
        }
        break;
      case Kind::Constant:
        return offers(normalize(env_.lookup(t.name().text()), env_));
      case Kind::Restriction:
        return restrict(t.name(), offers(t.body()));
      case Kind::Workunit:
        return workunit(t);
      case Kind::Parallel:
        return parallel(parallel_components(t));
    }
    return o;
  }

 private:
  static Offers restrict(const Name& x, Offers inner) {
    Offers o;
    auto keep = [&](std::vector<Offer>& from, std::vector<Offer>& to) {
      for (Offer& f : from) {
        if (f.name == x) continue;
        to.push_back({f.name, Term::restriction(x, f.residual), f.across_workunit});
      }
    };
    keep(inner.outputs, o.outputs);
    keep(inner.inputs, o.inputs);
    keep(inner.units, o.units);
    for (Reduction& r : inner.reductions)
      o.reductions.push_back({r.rule, r.label, Term::restriction(x, r.residual)});
    return o;
  }

  Offers workunit(const Term& t) {
    const Term& handler = t.handler();
    const Name& trigger = t.name();
    auto wrap = [&](const Term& body) { return Term::workunit(body, handler, trigger); };

    Offers inner = offers(t.body());
    Offers o;
    for (const Offer& f : inner.outputs) o.outputs.push_back({f.name, wrap(f.residual), true});
    for (const Offer& f : inner.inputs) o.inputs.push_back({f.name, wrap(f.residual), true});
    o.units.push_back({trigger, handler, false});
    for (const Offer& f : inner.units) o.units.push_back({f.name, wrap(f.residual), true});
    for (const Reduction& r : inner.reductions)
      o.reductions.push_back({WpRule::Body, Label::body(r.label), wrap(r.residual)});
    // A trigger output at the top level of the body activates the handler.
    for (const Offer& f : inner.outputs) {
      if (f.name == trigger)
        o.reductions.push_back({WpRule::Trigger, Label::trigger(trigger), handler});
    }
    return o;
  }

  Offers parallel(const std::vector<Term>& comps) {
    std::vector<Offers> local;
    local.reserve(comps.size());
    for (const Term& c : comps) local.push_back(offers(c));

    Offers o;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (const Offer& f : local[i].outputs)
        o.outputs.push_back({f.name, replace(comps, i, f.residual), f.across_workunit});
      for (const Offer& f : local[i].inputs)
        o.inputs.push_back({f.name, replace(comps, i, f.residual), f.across_workunit});
      for (const Offer& f : local[i].units)
        o.units.push_back({f.name, replace(comps, i, f.residual), f.across_workunit});
      for (const Reduction& r : local[i].reductions)
        o.reductions.push_back({r.rule, r.label, replace(comps, i, r.residual)});
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (i == j) continue;
        for (const Offer& out : local[i].outputs) {
          for (const Offer& in : local[j].inputs) {
            if (out.name != in.name) continue;
            bool across = out.across_workunit || in.across_workunit;
            o.reductions.push_back({across ? WpRule::TransparentComm : WpRule::Comm,
                                    Label::comm(out.name, across),
                                    replace(comps, i, out.residual, j, in.residual)});
          }
          for (const Offer& unit : local[j].units) {
            if (out.name != unit.name) continue;
            o.reductions.push_back({WpRule::Trigger, Label::trigger(out.name),
                                    replace(comps, i, out.residual, j, unit.residual)});
          }
        }
      }
    }
    return o;
  }

  const DefinitionEnv& env_;
};

}  // namespace

std::vector<Interaction> wp_step(const Term& term, const DefinitionEnv& env) {
  require_calculus(term, Calculus::WebPi);
  WebPiStepper stepper(env);
  Offers o = stepper.offers(normalize(term, env));
  std::vector<Interaction> all;
  all.reserve(o.reductions.size());
  for (Reduction& r : o.reductions)
    all.push_back({r.rule, std::move(r.label), normalize(r.residual, env)});
  std::sort(all.begin(), all.end(), [](const Interaction& a, const Interaction& b) {
    if (auto c = a.successor <=> b.successor; c != 0) return c < 0;
    if (a.rule != b.rule) return a.rule < b.rule;
    return a.label < b.label;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Interaction& a, const Interaction& b) {
                          return a.successor == b.successor;
                        }),
            all.end());
  return all;
}

std::vector<Term> wp_reduce(const Term& term, const DefinitionEnv& env) {
  std::vector<Term> out;
  for (Interaction& i : wp_step(term, env)) out.push_back(std::move(i.successor));
  return out;
}

std::vector<EnabledInteraction> wp_enabled_interactions(const Term& term,
                                                        const DefinitionEnv& env) {
  std::vector<EnabledInteraction> out;
  for (const Interaction& i : wp_step(term, env)) {
    std::string redex = i.label.kind() == LabelKind::Body ? i.label.describe()
                                                          : "on " + i.label.channel().text();
    out.push_back({std::string(to_string(i.rule)), std::move(redex)});
  }
  return out;
}

}  // namespace reconfig
