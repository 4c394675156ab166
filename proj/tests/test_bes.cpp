#include <random>

#include "doctest.h"
#include "hhbes/bes.hpp"
#include "hhbes/corpus.hpp"
#include "hhbes/fixpoint.hpp"
#include "hhbes/oracle.hpp"

using namespace hhbes;

namespace {

bool has_clause(const FlatBase& fb, const std::string& text) {
  return fb.program.contains_clause(parse_formula(text));
}

}  // namespace

TEST_CASE("the derived base for a conjunction") {
  FlatBase fb = build_flat_base(parse_sequent("|- p & q"), {});
  FormulaId conj = parse_formula("p & q");
  std::string flat = atom_name(fb.map.flat(conj));
  CHECK(has_clause(fb, "p & q -> " + flat));
  CHECK(has_clause(fb, flat + " -> p"));
  CHECK(has_clause(fb, flat + " -> q"));
  CHECK(fb.map.flat(atom("p")) == atom("p"));
  CHECK(fb.rules.level() <= 2);
}

TEST_CASE("the derived base for an implication") {
  FlatBase fb = build_flat_base(parse_sequent("|- p -> q"), {});
  std::string flat = atom_name(fb.map.flat(parse_formula("p -> q")));
  CHECK(has_clause(fb, "(p -> q) -> " + flat));
  CHECK(has_clause(fb, "p & " + flat + " -> q"));
}

TEST_CASE("a lone atom needs no scheme rules") {
  FlatBase fb = build_flat_base(parse_sequent("|- a"), {});
  CHECK(fb.program.clauses().empty());
  CHECK(fb.map.flat(atom("a")) == atom("a"));
}

TEST_CASE("disjunction schemes quantify the conclusion over all subformulae") {
  Sequent s = parse_sequent("|- (p | q) -> p");
  FlatBase fb = build_flat_base(s, {});
  std::string disj = atom_name(fb.map.flat(parse_formula("p | q")));
  std::string whole = atom_name(fb.map.flat(parse_formula("(p | q) -> p")));
  CHECK(has_clause(fb, "p -> " + disj));
  CHECK(has_clause(fb, "q -> " + disj));
  // Conjunctions in encoded rules nest to the right.
  for (std::string chi : {std::string("p"), std::string("q"), disj, whole})
    CHECK(has_clause(fb, disj + " & ((p -> " + chi + ") & (q -> " + chi + ")) -> " +
                             chi));
}

TEST_CASE("falsum subformulae spread to every flat atom") {
  FlatBase fb = build_flat_base(parse_sequent("|- ~a"), {});
  std::string neg = atom_name(fb.map.flat(parse_formula("~a")));
  CHECK(fb.map.flat(falsum()) == atom(kAbsurdityAtom));
  CHECK(has_clause(fb, std::string(kAbsurdityAtom) + " -> a"));
  CHECK(has_clause(fb, std::string(kAbsurdityAtom) + " -> " + neg));
}

TEST_CASE("flat atoms avoid the ambient names") {
  std::set<std::string> avoid{"#0", "#1"};
  FlatBase fb = build_flat_base(parse_sequent("|- a & a"), avoid);
  CHECK(atom_name(fb.map.flat(parse_formula("a & a"))) == "#2");
  CHECK_THROWS_AS((void)fb.map.flat(atom("zz")), std::out_of_range);
  CHECK(fb.map.unflat(atom("#2")) == parse_formula("a & a"));
  CHECK_FALSE(fb.map.unflat(atom("#9")).has_value());
}

TEST_CASE("support basics") {
  CHECK(support({}, {}, parse_formula("p -> p")));
  CHECK_FALSE(support({}, {}, parse_formula("(a -> b | c) -> ((a -> b) | (a -> c))")));

  AtomicSystem base({axiom_rule("p"), plain_rule({"p"}, "q")});
  CHECK(support(base, {}, atom("q")));
  CHECK(derive_atomic(base, {}, "q"));

  // Contexts flatten to their atoms.
  CHECK(support({}, {parse_formula("p & q")}, parse_formula("p | q")));
  CHECK_FALSE(support({}, {parse_formula("p | q")}, parse_formula("p & q")));
}

TEST_CASE("support rejects bases above level 2") {
  AtomicRule second;
  second.conclusion = "q";
  second.premises.push_back({{axiom_rule("p")}, "p"});
  AtomicRule third;
  third.conclusion = "r";
  third.premises.push_back({{second}, "q"});
  AtomicSystem base({third});
  CHECK_THROWS_AS(support(base, {}, atom("r")), UnsupportedLevel);
  CHECK_THROWS_AS(naf(base, atom("r"), {"r"}), UnsupportedLevel);
}

TEST_CASE("validity matches the oracle on the spec'd sequents") {
  CHECK(valid(parse_sequent("p & q |- p | q")));
  CHECK_FALSE(valid(parse_sequent("|- false")));
  CHECK_FALSE(valid(parse_sequent("|- (a -> b | c) -> ((a -> b) | (a -> c))")));
  CHECK(valid(parse_sequent("|- ~~(p | ~p)")));
  CHECK_FALSE(valid(parse_sequent("|- p | ~p")));
  CHECK(valid(parse_sequent("false |- q")));
}

TEST_CASE("lemma 3: atomic support is atomic derivability") {
  // Exhaustive: bases of at most two plain rules over {p, q}, atomic
  // contexts, atomic goals.
  auto rules = enumerate_rules({"p", "q"}, 2);
  std::vector<AtomicRule> first_level;
  for (const AtomicRule& r : rules)
    if (r.level() <= 1) first_level.push_back(r);
  auto bases = enumerate_systems(first_level, 2);
  std::vector<std::vector<std::string>> contexts{{}, {"p"}, {"q"}, {"p", "q"}};
  for (const AtomicSystem& base : bases)
    for (const auto& ctx : contexts)
      for (const std::string& goal : {"p", "q"}) {
        std::vector<FormulaId> ctx_formulae;
        for (const auto& name : ctx) ctx_formulae.push_back(atom(name));
        CHECK(support(base, ctx_formulae, atom(goal)) ==
              derive_atomic(base, ctx, goal));
      }
}

TEST_CASE("lemma 3 with hypothesis-discharging rules") {
  std::mt19937 rng(31415);
  auto rules = enumerate_rules({"p", "q"}, 2);
  std::uniform_int_distribution<std::size_t> pick(0, rules.size() - 1);
  for (int i = 0; i < 250; ++i) {
    AtomicSystem base({rules[pick(rng)], rules[pick(rng)], rules[pick(rng)]});
    for (const std::string& goal : {"p", "q"})
      CHECK(support(base, {}, atom(goal)) == derive_atomic(base, {}, goal));
  }
}

TEST_CASE("lemma 4: flats and their formulas agree under extensions") {
  // For each subformula phi of the scope and each extension of the derived
  // base by extra axioms, proving flat(phi) from the extended program agrees
  // with support of phi over the whole extension taken as a base.
  std::vector<Sequent> scopes{
      parse_sequent("|- (p & q) -> (q | r)"),
      parse_sequent("p -> q |- p -> (q & p)"),
      parse_sequent("|- ~p -> (p -> q)"),
  };
  for (const Sequent& s : scopes) {
    FlatBase fb = build_flat_base(s, {});
    std::vector<std::vector<std::string>> extensions{{}, {"p"}, {"q"}, {"p", "q"}};
    for (const auto& extra : extensions) {
      AtomicSystem extended = fb.rules;
      std::vector<FormulaId> program_clauses = fb.program.clauses();
      for (const auto& name : extra) {
        extended = extended.with(axiom_rule(name));
        program_clauses.push_back(atom(name));
      }
      Program program = Program::of(program_clauses);
      for (FormulaId phi : fb.map.subformulae()) {
        bool via_flat = solve(program, fb.map.flat(phi)).success;
        bool via_support = support(extended, {}, phi);
        CHECK_MESSAGE(via_flat == via_support,
                      render(phi) << " under extension disagrees");
      }
    }
  }
}

TEST_CASE("extraction: assumptions, introductions, discharges") {
  {
    Sequent s = parse_sequent("p |- p");
    auto d = derive_sequent(s);
    REQUIRE(d.has_value());
    CHECK(d->rule == NjRule::Assumption);
    CHECK(check_derivation(*d, s).ok);
  }
  {
    Sequent s = parse_sequent("|- p -> p");
    auto d = derive_sequent(s);
    REQUIRE(d.has_value());
    CHECK(d->rule == NjRule::ImpI);
    CHECK(d->labels.size() == 1);
    CHECK(check_derivation(*d, s).ok);
  }
  {
    Sequent s = parse_sequent("p & q |- p | q");
    auto d = derive_sequent(s);
    REQUIRE(d.has_value());
    CHECK(check_derivation(*d, s).ok);
    // The engine tries the left disjunct first: expect OrI1 over AndE1.
    CHECK(d->rule == NjRule::OrI1);
    CHECK(d->children[0].rule == NjRule::AndE1);
  }
  {
    Sequent s = parse_sequent("|- false -> q");
    auto d = derive_sequent(s);
    REQUIRE(d.has_value());
    CHECK(check_derivation(*d, s).ok);
  }
  {
    Sequent s = parse_sequent("p | q |- q | p");
    auto d = derive_sequent(s);
    REQUIRE(d.has_value());
    CHECK(d->rule == NjRule::OrE);
    CHECK(check_derivation(*d, s).ok);
  }
  CHECK_FALSE(derive_sequent(parse_sequent("|- p | ~p")).has_value());
}

TEST_CASE("extraction rejects traces that use foreign clauses") {
  Sequent s = parse_sequent("|- q");
  FlatBase fb = build_flat_base(s, {});
  // A base clause outside the derived schemes proves q; the simulation does
  // not cover it.
  Program with_base = Program::of({atom("q")});
  SolveResult res = solve(with_base, fb.map.flat(atom("q")));
  REQUIRE(res.success);
  CHECK_THROWS_AS(extract_nj(*res.trace, fb.map), NotSimulable);
}

TEST_CASE("emulation and simulation round trip on a small corpus") {
  std::vector<Sequent> sequents{
      parse_sequent("|- p -> p"),
      parse_sequent("p & q |- p | q"),
      parse_sequent("|- (p & q) -> (q & p)"),
      parse_sequent("p, p -> q |- q"),
      parse_sequent("|- p -> (q -> p)"),
      parse_sequent("p | q, p -> r, q -> r |- r"),
      parse_sequent("false |- q"),
      parse_sequent("|- (p -> q) -> (p -> q)"),
  };
  for (const Sequent& s : sequents) {
    CAPTURE(render(s));
    REQUIRE(valid(s));

    // Denotational side: the flattened query is satisfied in its least
    // fixed point.
    FlatBase fb = build_flat_base(s, {});
    std::vector<FormulaId> clauses = fb.program.clauses();
    for (FormulaId f : s.context) clauses.push_back(fb.map.flat(f));
    Program query = Program::of(clauses);
    FormulaId flat_goal = fb.map.flat(s.conclusion);
    CHECK(satisfies(least_fixpoint(query, flat_goal), query, flat_goal));

    // Operational side plus extraction, checked by the kernel.
    SolveResult res = solve(query, flat_goal);
    REQUIRE(res.success);
    NjDerivation d = extract_nj(*res.trace, fb.map);
    auto check = check_derivation(d, s);
    CHECK_MESSAGE(check.ok, check.message);
  }
}

TEST_CASE("degeneracy detection") {
  CHECK_FALSE(is_degenerate({}, {"p"}));
  CHECK_FALSE(is_degenerate(AtomicSystem({axiom_rule("p")}), {"p"}));
  CHECK_FALSE(
      is_degenerate(AtomicSystem({axiom_rule("p"), axiom_rule("q")}), {"p", "q"}));
  AtomicSystem everything(
      {axiom_rule("p"), axiom_rule("q"), axiom_rule(kAbsurdityAtom)});
  CHECK(is_degenerate(everything, {"p", "q"}));
  // Indirect derivations count too.
  AtomicSystem indirect(
      {axiom_rule("p"), plain_rule({"p"}, "q"), plain_rule({"q"}, kAbsurdityAtom)});
  CHECK(is_degenerate(indirect, {"p", "q"}));
}

TEST_CASE("negation as failure") {
  CHECK(naf({}, atom("p"), {"p"}) == NafVerdict::NotSupported);

  // The contradictory-atoms base supports the negation of p.
  AtomicSystem contradictory(
      {plain_rule({"p", "pbar"}, kAbsurdityAtom), axiom_rule("pbar")});
  CHECK(naf(contradictory, atom("p"), {"p", "pbar"}) == NafVerdict::Supported);
  // But not the negation of pbar: nothing proves p.
  CHECK(naf(contradictory, atom("pbar"), {"p", "pbar"}) == NafVerdict::NotSupported);

  AtomicSystem everything(
      {axiom_rule("p"), axiom_rule("q"), axiom_rule(kAbsurdityAtom)});
  CHECK(naf(everything, atom("p"), {"p", "q"}) == NafVerdict::Degenerate);

  // naf verdicts line up with support of the defined negation.
  std::mt19937 rng(8);
  auto rules = enumerate_rules({"p", "q"}, 2);
  auto phis = enumerate_formulae(2, {"p", "q"}, Shape::Any, true);
  std::uniform_int_distribution<std::size_t> pick_r(0, rules.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_f(0, phis.size() - 1);
  for (int i = 0; i < 120; ++i) {
    AtomicSystem base({rules[pick_r(rng)], rules[pick_r(rng)]});
    FormulaId phi = phis[pick_f(rng)];
    NafVerdict verdict = naf(base, phi, {"p", "q"});
    bool negation_supported = support(base, {}, mk_imp(phi, falsum()));
    bool degenerate = is_degenerate(base, {"p", "q"});
    CHECK((verdict == NafVerdict::Supported) == (negation_supported && !degenerate));
  }
}

TEST_CASE("conservativity under base extension") {
  std::mt19937 rng(64);
  auto rules = enumerate_rules({"p", "q"}, 2);
  auto phis = enumerate_formulae(2, {"p", "q"}, Shape::Any, true);
  std::uniform_int_distribution<std::size_t> pick_r(0, rules.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_f(0, phis.size() - 1);
  int held = 0;
  for (int i = 0; i < 120; ++i) {
    AtomicSystem base({rules[pick_r(rng)]});
    AtomicSystem bigger = base.with(rules[pick_r(rng)]).with(rules[pick_r(rng)]);
    FormulaId phi = phis[pick_f(rng)];
    if (support(base, {}, phi)) {
      ++held;
      CHECK(support(bigger, {}, phi));
    }
  }
  CHECK(held > 10);
}
