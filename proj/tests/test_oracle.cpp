#include <random>

#include "doctest.h"
#include "hhbes/corpus.hpp"
#include "hhbes/oracle.hpp"

using namespace hhbes;

TEST_CASE("classic verdicts") {
  CHECK(decide(parse_sequent("|- p -> p")).status == Status::Provable);

  // Distribution of implication over disjunction fails intuitionistically.
  Verdict dist = decide(parse_sequent("|- (a -> b | c) -> ((a -> b) | (a -> c))"));
  CHECK(dist.status == Status::Refuted);
  REQUIRE(dist.witness.has_value());
  CHECK(countermodel_refutes(*dist.witness,
                             parse_sequent("|- (a -> b | c) -> ((a -> b) | (a -> c))")));

  // Peirce's law needs no more than three worlds to refute.
  Verdict peirce = decide(parse_sequent("|- ((p -> q) -> p) -> p"));
  CHECK(peirce.status == Status::Refuted);
  REQUIRE(peirce.witness.has_value());
  CHECK(peirce.witness->worlds <= 3);
  CHECK(countermodel_refutes(*peirce.witness,
                             parse_sequent("|- ((p -> q) -> p) -> p")));
}

TEST_CASE("more intuitionistic staples") {
  CHECK(decide(parse_sequent("|- ~~(p | ~p)")).status == Status::Provable);
  CHECK(decide(parse_sequent("|- p | ~p")).status == Status::Refuted);
  CHECK(decide(parse_sequent("|- ~~p -> p")).status == Status::Refuted);
  CHECK(decide(parse_sequent("|- p -> ~~p")).status == Status::Provable);
  CHECK(decide(parse_sequent("~p, p |- false")).status == Status::Provable);
  CHECK(decide(parse_sequent("false |- q")).status == Status::Provable);
  CHECK(decide(parse_sequent("p & q |- q & p")).status == Status::Provable);
  CHECK(decide(parse_sequent("p -> q, q -> r |- p -> r")).status == Status::Provable);
  CHECK(decide(parse_sequent("|- ((p -> q) -> r) -> (p | r -> r) -> r")).status ==
        Status::Refuted);
}

TEST_CASE("the two decision methods agree on the small-scope corpus") {
  auto formulae = enumerate_formulae(3, {"a", "b"}, Shape::Any, true);
  OracleOptions opts = default_oracle_options();
  opts.want_witness = false;
  for (FormulaId f : formulae) {
    Sequent s = make_sequent({}, f);
    bool proved = decide(s, opts).status == Status::Provable;
    bool refutable = find_countermodel(s, 5).has_value();
    CHECK(proved != refutable);
  }
  // A slice with nonempty contexts.
  auto small = enumerate_formulae(2, {"a", "b"}, Shape::Any, true);
  for (FormulaId hyp : small)
    for (FormulaId concl : small) {
      Sequent s = make_sequent({hyp}, concl);
      bool proved = decide(s, opts).status == Status::Provable;
      bool refutable = find_countermodel(s, 5).has_value();
      CHECK(proved != refutable);
    }
}

TEST_CASE("monotonicity and the deduction property") {
  std::mt19937 rng(5150);
  std::vector<std::string> atoms{"a", "b", "c"};
  OracleOptions opts = default_oracle_options();
  opts.want_witness = false;
  for (int i = 0; i < 400; ++i) {
    std::vector<FormulaId> ctx;
    for (int k = std::uniform_int_distribution<int>(0, 2)(rng); k > 0; --k)
      ctx.push_back(random_formula(rng, 3, atoms));
    FormulaId alpha = random_formula(rng, 3, atoms);
    FormulaId beta = random_formula(rng, 3, atoms);

    Sequent plain = make_sequent(ctx, beta);
    if (decide(plain, opts).status == Status::Provable) {
      auto extended = ctx;
      extended.push_back(alpha);
      CHECK(decide(make_sequent(extended, beta), opts).status == Status::Provable);
    }

    auto with_alpha = ctx;
    with_alpha.push_back(alpha);
    bool lhs_way = decide(make_sequent(with_alpha, beta), opts).status ==
                   Status::Provable;
    bool rhs_way = decide(make_sequent(ctx, mk_imp(alpha, beta)), opts).status ==
                   Status::Provable;
    CHECK(lhs_way == rhs_way);
  }
}

TEST_CASE("budget exhaustion raises instead of lying") {
  OracleOptions opts;
  opts.budget = 3;
  opts.want_witness = false;
  // Fresh atoms so no prior memoized result can short-circuit the search.
  CHECK_THROWS_AS(
      decide(parse_sequent("|- ((zq -> zr | zs) -> zs) -> ((zq -> zr) -> zs) -> zs"),
             opts),
      BudgetExceeded);
}

TEST_CASE("countermodels are monotone kripke models") {
  Verdict v = decide(parse_sequent("q -> p |- p | ~q"));
  REQUIRE(v.status == Status::Refuted);
  REQUIRE(v.witness.has_value());
  const Countermodel& m = *v.witness;
  // Valuations are upward closed along the order.
  for (const auto& [atom_name, worlds] : m.val) {
    (void)atom_name;
    for (int w : worlds)
      for (auto [i, j] : m.le)
        if (i == w)
          CHECK(std::find(worlds.begin(), worlds.end(), j) != worlds.end());
  }
  CHECK(countermodel_refutes(m, parse_sequent("q -> p |- p | ~q")));
}
