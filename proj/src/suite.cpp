#include "hhbes/suite.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hhbes/bes.hpp"
#include "hhbes/corpus.hpp"
#include "hhbes/fixpoint.hpp"
#include "hhbes/oracle.hpp"

namespace hhbes {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
  std::ostream* progress;
  std::vector<CriterionResult> results;

  template <typename F>
  void run(int id, const std::string& name, double time_budget, F&& body) {
    if (progress) *progress << "criterion " << id << ": " << name << "...\n" << std::flush;
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto start = Clock::now();
    try {
      r.detail = body();
      r.passed = true;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.passed && time_budget > 0 && r.seconds > time_budget) {
      r.passed = false;
      r.detail += " [overran " + std::to_string(time_budget) + " s budget]";
    }
    results.push_back(std::move(r));
  }
};

struct Disagreement : std::runtime_error {
  explicit Disagreement(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] void disagree(const std::string& what) { throw Disagreement(what); }

OracleOptions quiet_oracle() {
  OracleOptions opts = default_oracle_options();
  opts.want_witness = false;
  return opts;
}

// Shared corpus for criteria 1 and 2: every goal of depth <= 3 over {a, b}
// paired with every program of at most two clauses drawn from the definite
// formulae of depth <= 2 over {a, b}, optionally extended by a bare falsum
// clause.
struct EngineCorpus {
  std::vector<FormulaId> goals;
  std::vector<Program> programs;
};

EngineCorpus engine_corpus() {
  EngineCorpus c;
  c.goals = enumerate_formulae(3, {"a", "b"}, Shape::Goal, true);
  auto clauses = enumerate_formulae(2, {"a", "b"}, Shape::Definite, false);
  for (const auto& subset : enumerate_subsets(clauses, 2)) {
    c.programs.push_back(Program::of(subset));
    auto with_falsum = subset;
    with_falsum.push_back(falsum());
    c.programs.push_back(Program::of(with_falsum));
  }
  return c;
}

// Criterion 3 corpus: exhaustive sequents with |ctx| <= 2 over the depth-2
// formulae on {a, b}, plus 1000 seeded random sequents of depth <= 3 over
// {a, b, c}.
std::vector<Sequent> theorem_corpus() {
  std::vector<Sequent> out;
  auto formulae = enumerate_formulae(2, {"a", "b"}, Shape::Any, true);
  for (const auto& ctx : enumerate_subsets(formulae, 2))
    for (FormulaId concl : formulae) out.push_back(make_sequent(ctx, concl));
  std::mt19937 rng(20260810);
  std::vector<std::string> atoms{"a", "b", "c"};
  for (int i = 0; i < 1000; ++i) {
    std::vector<FormulaId> ctx;
    int n = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < n; ++k) ctx.push_back(random_formula(rng, 3, atoms));
    out.push_back(make_sequent(std::move(ctx), random_formula(rng, 3, atoms)));
  }
  return out;
}

std::string criterion_lemma1() {
  auto corpus = engine_corpus();
  long long checked = 0;
  for (const Program& p : corpus.programs)
    for (FormulaId g : corpus.goals) {
      bool operational = solve(p, g).success;
      bool denotational = satisfies(least_fixpoint(p, g), p, g);
      if (operational != denotational)
        disagree("engine/fixpoint disagree on " + render(Sequent{p.clauses(), g}) +
                 ": engine says " + (operational ? "success" : "failure"));
      ++checked;
    }
  return std::to_string(checked) + " query pairs agree";
}

std::string criterion_completeness_hh() {
  auto corpus = engine_corpus();
  auto opts = quiet_oracle();
  long long checked = 0;
  for (const Program& p : corpus.programs)
    for (FormulaId g : corpus.goals) {
      bool operational = solve(p, g).success;
      Sequent s{p.clauses(), g};
      bool provable = decide(s, opts).status == Status::Provable;
      if (operational != provable)
        disagree("engine/oracle disagree on " + render(s));
      ++checked;
    }
  return std::to_string(checked) + " query pairs agree";
}

std::string criterion_theorem1() {
  auto corpus = theorem_corpus();
  auto opts = quiet_oracle();
  long long provable_count = 0;
  for (const Sequent& s : corpus) {
    bool supported = valid(s);
    bool provable = decide(s, opts).status == Status::Provable;
    if (supported != provable)
      disagree("validity/oracle disagree on " + render(s) + ": valid says " +
               (supported ? "yes" : "no"));
    if (provable) ++provable_count;
  }
  return std::to_string(corpus.size()) + " sequents agree (" +
         std::to_string(provable_count) + " provable)";
}

std::string criterion_simulation() {
  auto corpus = theorem_corpus();
  auto opts = quiet_oracle();
  long long extracted = 0;
  for (const Sequent& s : corpus) {
    if (decide(s, opts).status != Status::Provable) continue;
    auto derivation = derive_sequent(s);
    if (!derivation)
      disagree("no successful execution for provable sequent " + render(s));
    if (auto check = check_derivation(*derivation, s); !check)
      disagree("extracted derivation rejected for " + render(s) + ": " +
               check.message);
    ++extracted;
  }
  return std::to_string(extracted) + " derivations extracted and checked";
}

std::string criterion_encoding() {
  std::mt19937 rng(4214);
  std::vector<std::string> atoms{"p", "q", "r"};
  long long checked = 0;
  for (int i = 0; i < 500; ++i) {
    AtomicSystem sys = random_system(rng, atoms, 5);
    Program encoded = encode(sys);
    for (const std::string& a : atoms) {
      bool direct = derive_atomic(sys, {}, a);
      bool via_program = solve(encoded, atom(a)).success;
      if (direct != via_program)
        disagree("encoding infidelity for atom " + a + " in system " +
                 system_to_json(sys));
      ++checked;
    }
  }
  return std::to_string(checked) + " derivability checks agree";
}

std::string criterion_example_4_1() {
  Sequent s = parse_sequent("|- (a -> b | c) -> ((a -> b) | (a -> c))");
  if (decide(s, quiet_oracle()).status != Status::Refuted)
    disagree("oracle accepts the distribution formula");
  if (valid(s)) disagree("validity accepts the distribution formula");

  FlatBase fb = build_flat_base(s, {});
  FormulaId antecedent = parse_formula("a -> b | c");
  FormulaId consequent = parse_formula("(a -> b) | (a -> c)");
  AtomicSystem base({axiom_rule(atom_name(fb.map.flat(antecedent)))});
  if (!support_in(fb, base, {}, antecedent))
    disagree("base asserting the antecedent's flat does not support the antecedent");
  if (support_in(fb, base, {}, consequent))
    disagree("base asserting the antecedent's flat supports the consequent");
  return "refutation and base separation both hold";
}

std::string criterion_naf() {
  std::vector<std::string> atoms{"p", "q"};
  std::set<std::string> alphabet{"p", "q"};
  auto rules = enumerate_rules(atoms, 2);
  auto bases = enumerate_systems(rules, 3);
  auto phis = enumerate_formulae(2, atoms, Shape::Any, true);
  long long checked = 0;
  long long supported = 0;
  for (const AtomicSystem& base : bases) {
    bool degenerate = is_degenerate(base, alphabet);
    for (FormulaId phi : phis) {
      NafVerdict verdict = naf(base, phi, alphabet);
      bool negation_supported = support(base, {}, mk_imp(phi, falsum()));
      bool expected = negation_supported && !degenerate;
      if ((verdict == NafVerdict::Supported) != expected)
        disagree("naf mismatch for " + render(phi) + " over " + system_to_json(base));
      if (verdict == NafVerdict::Supported) ++supported;
      ++checked;
    }
  }

  // The contradictory-atoms base: p and pbar together conclude absurdity.
  AtomicSystem contradictory(
      {plain_rule({"p", "pbar"}, kAbsurdityAtom), axiom_rule("pbar")});
  if (naf(contradictory, atom("p"), {"p", "pbar"}) != NafVerdict::Supported)
    disagree("contradictory-atoms base does not support the negation of p");
  return std::to_string(checked) + " naf verdicts agree (" +
         std::to_string(supported) + " supported)";
}

std::string criterion_conservativity() {
  std::mt19937 rng(97);
  std::vector<std::string> atoms{"p", "q"};
  auto rules = enumerate_rules(atoms, 2);
  auto phis = enumerate_formulae(2, atoms, Shape::Any, true);
  auto pick_rule = [&] {
    return rules[std::uniform_int_distribution<std::size_t>(0, rules.size() - 1)(rng)];
  };
  long long held = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<AtomicRule> small;
    int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < n; ++k) small.push_back(pick_rule());
    AtomicSystem base(small);
    AtomicSystem extended = base;
    int extra = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int k = 0; k < extra; ++k) extended = extended.with(pick_rule());

    std::vector<FormulaId> ctx;
    int c = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < c; ++k)
      ctx.push_back(phis[std::uniform_int_distribution<std::size_t>(
          0, phis.size() - 1)(rng)]);
    FormulaId phi =
        phis[std::uniform_int_distribution<std::size_t>(0, phis.size() - 1)(rng)];

    if (support(base, ctx, phi)) {
      ++held;
      if (!support(extended, ctx, phi))
        disagree("support lost under base extension for " + render(phi));
    }
  }
  return "200 extension triples checked (" + std::to_string(held) +
         " with supported antecedent)";
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& corpus,
                                            std::ostream* progress) {
  if (corpus != "desk")
    throw std::invalid_argument("unknown corpus '" + corpus + "' (try: desk)");
  Runner runner{progress, {}};
  runner.run(1, "operational/denotational agreement", 120, criterion_lemma1);
  runner.run(2, "engine completeness for the hereditary Harrop fragment", 0,
             criterion_completeness_hh);
  runner.run(3, "validity coincides with intuitionistic provability", 300,
             criterion_theorem1);
  runner.run(4, "every provable sequent yields a checked natural deduction", 0,
             criterion_simulation);
  runner.run(5, "atomic-system encoding faithfulness", 0, criterion_encoding);
  runner.run(6, "distribution counterexample and base/context separation", 0,
             criterion_example_4_1);
  runner.run(7, "negation-as-failure agreement", 0, criterion_naf);
  runner.run(8, "support is conserved under base extension", 0,
             criterion_conservativity);
  return runner.results;
}

bool report(const std::vector<CriterionResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " — "
        << r.detail << " (" << std::fixed << std::setprecision(1) << r.seconds
        << " s)\n";
    all = all && r.passed;
  }
  out << (all ? "acceptance: all criteria passed\n"
              : "acceptance: FAILURES present\n");
  return all;
}

}  // namespace hhbes
