// Python bindings for the main operations. Structured results cross the
// boundary as JSON strings; formulae, sequents, programs, and atomic
// systems travel in their concrete text syntaxes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "hhbes/bes.hpp"
#include "hhbes/fixpoint.hpp"
#include "hhbes/oracle.hpp"
#include "hhbes/suite.hpp"

namespace py = pybind11;
using namespace hhbes;

namespace {

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Neither: return "Neither";
    case Classification::DefiniteOnly: return "DefiniteOnly";
    case Classification::GoalOnly: return "GoalOnly";
    case Classification::Both: return "Both";
  }
  return "?";
}

Sequent sequent_of(const std::string& text) {
  return text.find("|-") != std::string::npos ? parse_sequent(text)
                                              : make_sequent({}, parse_formula(text));
}

AtomicSystem base_of(const std::string& json_text) {
  if (json_text.empty()) return {};
  return system_from_json(json_text);
}

std::vector<FormulaId> context_of(const std::vector<std::string>& texts) {
  std::vector<FormulaId> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_formula(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_hhbes, m) {
  m.doc() =
      "Hereditary Harrop proof search, intuitionistic decision oracle, and "
      "base-extension semantics";

  m.def(
      "parse",
      [](const std::string& text) { return render(parse_formula(text)); },
      py::arg("formula"), "Parse a formula and return its canonical rendering.");

  m.def(
      "classify",
      [](const std::string& text) {
        return std::string(classification_name(classify(parse_formula(text))));
      },
      py::arg("formula"),
      "Hereditary Harrop classification: Neither, DefiniteOnly, GoalOnly or Both.");

  m.def(
      "decompose",
      [](const std::string& program_text) {
        Program p = parse_program(program_text);
        std::vector<std::string> out;
        for (FormulaId f : p.decomposition()) out.push_back(render(f));
        return out;
      },
      py::arg("program"),
      "Decomposition of a program (one clause per line), conjunctions unpacked.");

  m.def(
      "solve",
      [](const std::string& program_text, const std::string& goal_text,
         bool want_trace) {
        SolveResult res = solve(parse_program(program_text), parse_formula(goal_text));
        py::dict out;
        out["success"] = res.success;
        if (res.success && want_trace) out["trace"] = trace_to_json(*res.trace);
        return out;
      },
      py::arg("program"), py::arg("goal"), py::arg("want_trace") = false,
      "Uniform proof search for a query.");

  m.def(
      "oracle",
      [](const std::string& sequent_text) {
        Verdict v = decide(sequent_of(sequent_text));
        py::dict out;
        out["provable"] = v.status == Status::Provable;
        if (v.witness) out["countermodel"] = v.witness->to_json();
        return out;
      },
      py::arg("sequent"),
      "Decide intuitionistic consequence; refutations carry a countermodel.");

  m.def(
      "fixpoint",
      [](const std::string& program_text, const std::string& goal_text) {
        Program p = parse_program(program_text);
        FormulaId g = parse_formula(goal_text);
        Interpretation table = least_fixpoint(p, g);
        py::dict out;
        out["satisfied"] = satisfies(table, p, g);
        out["table"] = interpretation_to_json(table);
        return out;
      },
      py::arg("program"), py::arg("goal"),
      "Least fixed point of a query and whether it satisfies the goal.");

  m.def(
      "encode",
      [](const std::string& system_json) {
        return render(encode(system_from_json(system_json)));
      },
      py::arg("system"), "Encode an atomic system (JSON) as a program.");

  m.def(
      "flatten",
      [](const std::string& sequent_text) {
        FlatBase fb = build_flat_base(parse_sequent(sequent_text), {});
        nlohmann::json map_json;
        for (FormulaId f : fb.map.subformulae())
          map_json[render(f)] = atom_name(fb.map.flat(f));
        py::dict out;
        out["program"] = render(fb.program);
        out["map"] = map_json.dump();
        return out;
      },
      py::arg("sequent"), "Derived base and flat map for a sequent.");

  m.def(
      "support",
      [](const std::string& goal, const std::vector<std::string>& context,
         const std::string& base_json) {
        return support(base_of(base_json), context_of(context), parse_formula(goal));
      },
      py::arg("goal"), py::arg("context") = std::vector<std::string>{},
      py::arg("base") = std::string(),
      "Support of a goal under a context over a base.");

  m.def(
      "valid",
      [](const std::string& sequent_text) { return valid(sequent_of(sequent_text)); },
      py::arg("sequent"), "Validity: support over the empty base.");

  m.def(
      "extract",
      [](const std::string& sequent_text) -> py::object {
        Sequent s = sequent_of(sequent_text);
        auto d = derive_sequent(s);
        if (!d) return py::none();
        if (auto check = check_derivation(*d, s); !check)
          throw std::runtime_error("extracted derivation rejected: " + check.message);
        return py::str(nj_to_json(*d));
      },
      py::arg("sequent"),
      "Natural-deduction derivation (JSON) for a valid sequent, else None.");

  m.def(
      "check_derivation",
      [](const std::string& nj_json, const std::string& sequent_text) {
        auto res = check_derivation(nj_from_json(nj_json), sequent_of(sequent_text));
        py::dict out;
        out["ok"] = res.ok;
        out["message"] = res.message;
        return out;
      },
      py::arg("derivation"), py::arg("sequent"),
      "Check a natural-deduction derivation (JSON) against a sequent.");

  m.def(
      "derive_atomic",
      [](const std::string& system_json, const std::string& goal,
         const std::vector<std::string>& assumptions) {
        return derive_atomic(base_of(system_json), assumptions, goal);
      },
      py::arg("system"), py::arg("goal"),
      py::arg("assumptions") = std::vector<std::string>{},
      "Derivability of an atom in an atomic system.");

  m.def(
      "is_degenerate",
      [](const std::string& base_json, const std::vector<std::string>& alphabet) {
        return is_degenerate(base_of(base_json),
                             std::set<std::string>(alphabet.begin(), alphabet.end()));
      },
      py::arg("base"), py::arg("alphabet"));

  m.def(
      "naf",
      [](const std::string& base_json, const std::string& formula,
         const std::vector<std::string>& alphabet) {
        return std::string(naf_verdict_name(
            naf(base_of(base_json), parse_formula(formula),
                std::set<std::string>(alphabet.begin(), alphabet.end()))));
      },
      py::arg("base"), py::arg("formula"), py::arg("alphabet"),
      "Negation-as-failure verdict: Supported, NotSupported or Degenerate.");

  m.def(
      "acceptance",
      [](const std::string& corpus) {
        py::list out;
        for (const auto& r : run_acceptance(corpus, nullptr)) {
          py::dict item;
          item["id"] = r.id;
          item["name"] = r.name;
          item["passed"] = r.passed;
          item["detail"] = r.detail;
          item["seconds"] = r.seconds;
          out.append(std::move(item));
        }
        return out;
      },
      py::arg("corpus") = std::string("desk"), "Run the acceptance corpus.");

  m.attr("ABSURDITY_ATOM") = kAbsurdityAtom;
}
