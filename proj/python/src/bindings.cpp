// Python bindings for the reconfig-calc core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reconfig/analysis.hpp"
#include "reconfig/ccsdp.hpp"
#include "reconfig/equivalence.hpp"
#include "reconfig/syntax.hpp"
#include "reconfig/webpi.hpp"

namespace py = pybind11;
using namespace reconfig;

namespace {

MatchMode mode_from_string(const std::string& mode) {
  if (mode == "syntactic") return MatchMode::syntactic();
  if (mode == "congruence") return MatchMode::congruence();
  if (mode == "bisim") return MatchMode::bisim();
  throw Error("unknown match mode '" + mode + "' (expected syntactic, congruence or bisim)");
}

Calculus calc(const std::string& name) { return calculus_from_string(name); }

const DefinitionEnv& env_of(const std::optional<Program>& program) {
  static const DefinitionEnv empty;
  return program ? program->env : empty;
}

py::list edges_of(const Lts& lts) {
  py::list out;
  for (const Edge& e : lts.edges) out.append(py::make_tuple(e.source, e.label.describe(), e.target));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Process terms, reconfiguration semantics, bisimulation and analyses";

  static py::exception<Error> error(m, "ReconfigError");
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<StateBoundExceeded> bound_error(m, "StateBoundExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const StateBoundExceeded& e) {
      py::set_error(bound_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Term>(m, "Term")
      .def_property_readonly("kind", [](const Term& t) { return std::string(to_string(t.kind())); })
      .def("__str__", [](const Term& t) { return pretty_print(t); })
      .def("__repr__", [](const Term& t) { return "Term('" + pretty_print(t) + "')"; })
      .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
      .def("__lt__", [](const Term& a, const Term& b) { return a < b; })
      .def("__hash__", [](const Term& t) { return t.hash(); });

  py::class_<Program>(m, "Program")
      .def_readonly("main", &Program::main)
      .def_property_readonly("calculus",
                             [](const Program& p) { return std::string(to_string(p.calculus)); })
      .def_property_readonly("definitions", [](const Program& p) { return p.env.bindings(); })
      .def("__str__", [](const Program& p) { return pretty_print(p); });

  m.def("parse", [](const std::string& text, const std::string& calculus) {
    return parse(text, calc(calculus));
  }, py::arg("text"), py::arg("calculus") = "ccsdp");
  m.def("parse_term", [](const std::string& text, const std::string& calculus) {
    return parse_term(text, calc(calculus));
  }, py::arg("text"), py::arg("calculus") = "ccsdp");
  m.def("pretty_print", py::overload_cast<const Term&>(&pretty_print));
  m.def("alpha_equivalent", [](const Term& a, const Term& b, const std::optional<Program>& p) {
    return p ? alpha_equivalent(a, b, p->env) : alpha_equivalent(a, b);
  }, py::arg("a"), py::arg("b"), py::arg("program") = py::none());
  m.def("normalize", [](const Term& t, const std::optional<Program>& p) {
    return normalize(t, env_of(p));
  }, py::arg("term"), py::arg("program") = py::none());

  m.def("transitions", [](const Term& t, const std::optional<Program>& p, const std::string& mode) {
    py::list out;
    for (const Transition& tr : transitions(t, env_of(p), mode_from_string(mode)))
      out.append(py::make_tuple(tr.label.describe(), tr.target));
    return out;
  }, py::arg("term"), py::arg("program") = py::none(), py::arg("mode") = "syntactic",
     "CCS^dp transitions as (label, target) pairs.");
  m.def("reduce_step", [](const Term& t, const std::optional<Program>& p, const std::string& mode) {
    return reduce_step(t, env_of(p), mode_from_string(mode));
  }, py::arg("term"), py::arg("program") = py::none(), py::arg("mode") = "syntactic");

  m.def("wp_step", [](const Term& t, const std::optional<Program>& p) {
    py::list out;
    for (const Interaction& i : wp_step(t, env_of(p)))
      out.append(py::make_tuple(std::string(to_string(i.rule)), i.label.describe(), i.successor));
    return out;
  }, py::arg("term"), py::arg("program") = py::none(),
     "Webpi reductions as (rule, label, successor) triples.");
  m.def("wp_reduce", [](const Term& t, const std::optional<Program>& p) {
    return wp_reduce(t, env_of(p));
  }, py::arg("term"), py::arg("program") = py::none());

  m.def("bisim_terms",
        [](const Term& a, const Term& b, const std::optional<Program>& p,
           const std::string& calculus, std::size_t bound, const std::string& mode) {
          return bisim_terms(a, b, env_of(p), bound, calc(calculus), mode_from_string(mode));
        },
        py::arg("a"), py::arg("b"), py::arg("program") = py::none(),
        py::arg("calculus") = "ccsdp", py::arg("bound") = MatchMode::kDefaultStateBound,
        py::arg("mode") = "syntactic");

  py::class_<StateSpace>(m, "StateSpace")
      .def_readonly("truncated", &StateSpace::truncated)
      .def_property_readonly("states", [](const StateSpace& s) { return s.lts.states; })
      .def_property_readonly("edges", [](const StateSpace& s) { return edges_of(s.lts); })
      .def("deadlocks", [](const StateSpace& s) { return find_deadlocks(s).states; })
      .def("termination", [](const StateSpace& s) {
        Verdict v = check_termination(s);
        return py::make_tuple(v.to_string(), v.witness);
      }, "Verdict name and, for divergence, a cycle of state indices.")
      .def("to_dot", [](const StateSpace& s) { return export_dot(s); })
      .def("to_json", [](const StateSpace& s) { return lts_to_json(s.lts, s.truncated); });

  m.def("explore",
        [](const Program& p, const std::string& mode, std::size_t bound, unsigned workers) {
          return explore(p.main, p.env, p.calculus, mode_from_string(mode), bound, workers);
        },
        py::arg("program"), py::arg("mode") = "syntactic",
        py::arg("bound") = MatchMode::kDefaultStateBound, py::arg("workers") = 1,
        "Silent-step state space reachable from the program's main term.");

  m.def("trace",
        [](const Program& p, std::size_t steps, const std::string& strategy, std::uint64_t seed,
           const std::string& mode) {
          return trace_to_json(trace(p.main, p.env, p.calculus, mode_from_string(mode),
                                     strategy_from_string(strategy), seed, steps));
        },
        py::arg("program"), py::arg("steps") = 100, py::arg("strategy") = "random",
        py::arg("seed") = 0, py::arg("mode") = "syntactic",
        "One reduction path from the program's main term, as JSON text.");
}
