// hhbes: command-line front end for the hereditary Harrop engine and the
// base-extension semantics toolkit.
//
// Exit codes: 0 = positive answer or success, 1 = negative answer
// (refuted / failure / not supported / degenerate), 2 = usage or internal
// error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hhbes/bes.hpp"
#include "hhbes/corpus.hpp"
#include "hhbes/fixpoint.hpp"
#include "hhbes/oracle.hpp"
#include "hhbes/suite.hpp"

namespace {

using namespace hhbes;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Neither: return "Neither";
    case Classification::DefiniteOnly: return "DefiniteOnly";
    case Classification::GoalOnly: return "GoalOnly";
    case Classification::Both: return "Both";
  }
  return "?";
}

std::set<std::string> parse_alphabet(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto begin = item.find_first_not_of(" \t");
    auto end = item.find_last_not_of(" \t");
    if (begin == std::string::npos) continue;
    out.insert(item.substr(begin, end - begin + 1));
  }
  return out;
}

std::vector<FormulaId> parse_context(const std::string& csv) {
  // Reuse the sequent parser: "<csv> |- false" carries the context.
  if (csv.empty()) return {};
  return parse_sequent(csv + " |- false").context;
}

struct Args {
  bool json = false;
  std::string program_path;
  std::string goal_text;
  std::string trace_path;
  std::string dump_path;
  std::string sequent_text;
  std::string system_path;
  std::string ctx_text;
  std::string formula_text;
  std::string alphabet_text;
  std::string out_path;
  std::string corpus = "desk";
  long long budget = 0;
};

int run_parse(const Args& a) {
  FormulaId f = parse_formula(a.formula_text);
  if (a.json) {
    nlohmann::json j;
    j["formula"] = render(f);
    j["classification"] = classification_name(classify(f));
    j["depth"] = depth(f);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render(f) << "\n"
              << classification_name(classify(f)) << "\n";
  }
  return 0;
}

SolveOptions solve_options(const Args& a) {
  SolveOptions opts = default_solve_options();
  if (a.budget > 0) opts.budget = a.budget;
  return opts;
}

OracleOptions oracle_options(const Args& a) {
  OracleOptions opts = default_oracle_options();
  if (a.budget > 0) opts.budget = a.budget;
  return opts;
}

int run_solve(const Args& a) {
  Program p = parse_program(slurp(a.program_path));
  FormulaId goal = parse_formula(a.goal_text);
  SolveResult res = solve(p, goal, solve_options(a));
  if (res.success && !a.trace_path.empty())
    spill(a.trace_path, trace_to_json(*res.trace) + "\n");
  if (a.json) {
    nlohmann::json j;
    j["success"] = res.success;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (res.success ? "success" : "failure") << "\n";
  }
  return res.success ? 0 : 1;
}

int run_fixpoint(const Args& a) {
  Program p = parse_program(slurp(a.program_path));
  FormulaId goal = parse_formula(a.goal_text);
  Interpretation table = least_fixpoint(p, goal);
  std::string dump = interpretation_to_json(table);
  if (!a.dump_path.empty()) spill(a.dump_path, dump + "\n");
  bool sat = satisfies(table, p, goal);
  if (a.json) {
    nlohmann::json j;
    j["satisfied"] = sat;
    j["table"] = nlohmann::json::parse(dump);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << dump << "\n" << (sat ? "satisfied" : "not satisfied") << "\n";
  }
  return sat ? 0 : 1;
}

int run_oracle(const Args& a) {
  Sequent s = a.sequent_text.find("|-") != std::string::npos
                  ? parse_sequent(a.sequent_text)
                  : make_sequent({}, parse_formula(a.sequent_text));
  Verdict v = decide(s, oracle_options(a));
  if (v.status == Status::Provable) {
    std::cout << (a.json ? "{\"status\": \"provable\"}" : "provable") << "\n";
    return 0;
  }
  if (v.witness)
    std::cout << v.witness->to_json() << "\n";
  else
    std::cout << (a.json ? "{\"status\": \"refuted\"}" : "refuted") << "\n";
  return 1;
}

int run_encode(const Args& a) {
  AtomicSystem sys = system_from_json(slurp(a.system_path));
  std::string prog = render(encode(sys));
  if (!a.out_path.empty())
    spill(a.out_path, prog);
  else
    std::cout << prog;
  return 0;
}

int run_flatten(const Args& a) {
  Sequent s = parse_sequent(a.sequent_text);
  FlatBase fb = build_flat_base(s, {});
  nlohmann::json map_json;
  for (FormulaId f : fb.map.subformulae())
    map_json[render(f)] = atom_name(fb.map.flat(f));
  std::string prog = render(fb.program);
  if (!a.out_path.empty()) {
    spill(a.out_path, prog);
    spill(a.out_path + ".map.json", map_json.dump(2) + "\n");
  } else if (a.json) {
    nlohmann::json j;
    j["program"] = nlohmann::json::array();
    for (FormulaId c : fb.program.clauses()) j["program"].push_back(render(c));
    j["map"] = map_json;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << prog << "---\n" << map_json.dump(2) << "\n";
  }
  return 0;
}

int run_support(const Args& a) {
  AtomicSystem base;
  if (!a.system_path.empty()) base = system_from_json(slurp(a.system_path));
  std::vector<FormulaId> ctx = parse_context(a.ctx_text);
  FormulaId goal = parse_formula(a.goal_text);
  bool supported = support(base, ctx, goal);
  std::cout << (supported ? "supported" : "not supported") << "\n";
  return supported ? 0 : 1;
}

int run_extract(const Args& a) {
  Sequent s = parse_sequent(a.sequent_text);
  auto derivation = derive_sequent(s);
  if (!derivation) {
    std::cout << "no derivation\n";
    return 1;
  }
  auto check = check_derivation(*derivation, s);
  if (!check) {
    std::cerr << "internal error: extracted derivation rejected: " << check.message
              << "\n";
    return 2;
  }
  std::string out = nj_to_json(*derivation) + "\n";
  if (!a.out_path.empty())
    spill(a.out_path, out);
  else
    std::cout << out;
  return 0;
}

int run_naf(const Args& a) {
  AtomicSystem base;
  if (!a.system_path.empty()) base = system_from_json(slurp(a.system_path));
  FormulaId phi = parse_formula(a.formula_text);
  std::set<std::string> alphabet = parse_alphabet(a.alphabet_text);
  NafVerdict v = naf(base, phi, alphabet);
  std::cout << naf_verdict_name(v) << "\n";
  return v == NafVerdict::Supported ? 0 : 1;
}

int run_suite(const Args& a) {
  auto results = run_acceptance(a.corpus, &std::cerr);
  return report(results, std::cout) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hereditary Harrop proof search and base-extension semantics"};
  app.require_subcommand(1);
  Args a;

  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", a.budget, "search node limit (overrides HHBES_BUDGET)");
  };

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula and classify it");
  parse_cmd->add_option("formula", a.formula_text, "formula text")->required();
  parse_cmd->add_flag("--json", a.json, "JSON output");

  auto* solve_cmd = app.add_subcommand("solve", "run the engine on a query");
  solve_cmd->add_option("--program", a.program_path, "program file, one clause per line")
      ->required();
  solve_cmd->add_option("--goal", a.goal_text, "goal formula")->required();
  solve_cmd->add_option("--trace", a.trace_path, "write the success trace as JSON");
  solve_cmd->add_flag("--json", a.json, "JSON output");
  add_budget(solve_cmd);

  auto* fix_cmd = app.add_subcommand("fixpoint", "least fixed point of a query");
  fix_cmd->add_option("--program", a.program_path, "program file")->required();
  fix_cmd->add_option("--goal", a.goal_text, "goal formula")->required();
  fix_cmd->add_option("--dump", a.dump_path, "write the table as JSON");
  fix_cmd->add_flag("--json", a.json, "JSON output");

  auto* oracle_cmd = app.add_subcommand("oracle", "decide intuitionistic consequence");
  oracle_cmd->add_option("sequent", a.sequent_text, "sequent 'ctx |- concl' or formula")
      ->required();
  oracle_cmd->add_flag("--json", a.json, "JSON output");
  add_budget(oracle_cmd);

  auto* encode_cmd = app.add_subcommand("encode", "encode an atomic system as a program");
  encode_cmd->add_option("--system", a.system_path, "atomic system JSON")->required();
  encode_cmd->add_option("--out", a.out_path, "output program file (default stdout)");

  auto* flatten_cmd = app.add_subcommand("flatten", "derived base and flat map for a sequent");
  flatten_cmd->add_option("--sequent", a.sequent_text, "sequent 'ctx |- concl'")
      ->required();
  flatten_cmd->add_option("--out", a.out_path, "program file; map goes to <out>.map.json");
  flatten_cmd->add_flag("--json", a.json, "JSON output");

  auto* support_cmd = app.add_subcommand("support", "support of a goal over a base");
  support_cmd->add_option("--base", a.system_path, "base as atomic system JSON");
  support_cmd->add_option("--ctx", a.ctx_text, "comma-separated context formulae");
  support_cmd->add_option("--goal", a.goal_text, "goal formula")->required();

  auto* extract_cmd = app.add_subcommand("extract", "natural deduction for a valid sequent");
  extract_cmd->add_option("--sequent", a.sequent_text, "sequent 'ctx |- concl'")
      ->required();
  extract_cmd->add_option("--out", a.out_path, "output JSON file (default stdout)");

  auto* naf_cmd = app.add_subcommand("naf", "negation-as-failure verdict");
  naf_cmd->add_option("--base", a.system_path, "base as atomic system JSON");
  naf_cmd->add_option("--formula", a.formula_text, "formula to negate")->required();
  naf_cmd->add_option("--alphabet", a.alphabet_text, "comma-separated atoms")
      ->required();

  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance corpus");
  suite_cmd->add_option("--corpus", a.corpus, "corpus profile (desk)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (parse_cmd->parsed()) return run_parse(a);
    if (solve_cmd->parsed()) return run_solve(a);
    if (fix_cmd->parsed()) return run_fixpoint(a);
    if (oracle_cmd->parsed()) return run_oracle(a);
    if (encode_cmd->parsed()) return run_encode(a);
    if (flatten_cmd->parsed()) return run_flatten(a);
    if (support_cmd->parsed()) return run_support(a);
    if (extract_cmd->parsed()) return run_extract(a);
    if (naf_cmd->parsed()) return run_naf(a);
    if (suite_cmd->parsed()) return run_suite(a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "no subcommand\n";
  return 2;
}
