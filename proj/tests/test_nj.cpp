#include <random>

#include "doctest.h"
#include "hhbes/corpus.hpp"
#include "hhbes/nj.hpp"
#include "hhbes/oracle.hpp"

using namespace hhbes;

namespace {

NjDerivation rule_node(NjRule rule, FormulaId concl,
                       std::vector<NjDerivation> children,
                       std::vector<std::string> labels = {}) {
  NjDerivation d;
  d.rule = rule;
  d.formula = concl;
  d.children = std::move(children);
  d.labels = std::move(labels);
  return d;
}

}  // namespace

TEST_CASE("single projections and identity proofs check") {
  FormulaId p = atom("p"), q = atom("q"), a = atom("a");
  FormulaId pq = mk_and(p, q);

  NjDerivation proj = rule_node(NjRule::AndE1, p, {nj_assume(pq)});
  CHECK(check_derivation(proj, make_sequent({pq}, p)).ok);

  NjDerivation identity =
      rule_node(NjRule::ImpI, mk_imp(a, a), {nj_assume(a, "1")}, {"1"});
  CHECK(check_derivation(identity, make_sequent({}, mk_imp(a, a))).ok);

  NjDerivation injected = rule_node(
      NjRule::OrI1, mk_or(p, q), {rule_node(NjRule::AndE1, p, {nj_assume(pq)})});
  CHECK(check_derivation(injected, make_sequent({pq}, mk_or(p, q))).ok);
}

TEST_CASE("shape violations are diagnosed with a path") {
  FormulaId p = atom("p"), q = atom("q");
  FormulaId pq = mk_and(p, q);

  // Wrong projection.
  NjDerivation bad = rule_node(NjRule::AndE1, q, {nj_assume(pq)});
  auto res = check_derivation(bad, make_sequent({pq}, q));
  CHECK_FALSE(res.ok);
  CHECK(res.message.find("root") != std::string::npos);

  // Arity mismatch, one level down.
  NjDerivation nested = rule_node(
      NjRule::AndI, pq, {rule_node(NjRule::ImpE, p, {nj_assume(p)}), nj_assume(q)});
  res = check_derivation(nested, make_sequent({p, q}, pq));
  CHECK_FALSE(res.ok);
  CHECK(res.message.find("root.0") != std::string::npos);

  // Conclusion mismatch against the sequent.
  NjDerivation leaf = nj_assume(p);
  CHECK_FALSE(check_derivation(leaf, make_sequent({p}, q)).ok);

  // Open assumption missing from the context.
  CHECK_FALSE(check_derivation(leaf, make_sequent({q}, p)).ok);

  // Labels must be bound, must match the discharged formula, and must not
  // shadow.
  CHECK_FALSE(check_derivation(nj_assume(p, "7"), make_sequent({p}, p)).ok);
  NjDerivation mismatch =
      rule_node(NjRule::ImpI, mk_imp(p, q), {nj_assume(q, "1")}, {"1"});
  CHECK_FALSE(check_derivation(mismatch, make_sequent({}, mk_imp(p, q))).ok);
  NjDerivation shadow = rule_node(
      NjRule::ImpI, mk_imp(p, mk_imp(p, p)),
      {rule_node(NjRule::ImpI, mk_imp(p, p), {nj_assume(p, "1")}, {"1"})}, {"1"});
  CHECK_FALSE(check_derivation(shadow, make_sequent({}, mk_imp(p, mk_imp(p, p)))).ok);
}

TEST_CASE("vacuous discharge and degenerate absurdity instances are allowed") {
  FormulaId p = atom("p"), q = atom("q");
  // q from p -> q with no p occurrences discharged.
  NjDerivation weak =
      rule_node(NjRule::ImpI, mk_imp(p, q), {nj_assume(q)}, {"1"});
  CHECK(check_derivation(weak, make_sequent({q}, mk_imp(p, q))).ok);

  NjDerivation boom = rule_node(NjRule::FalsumE, falsum(), {nj_assume(falsum())});
  CHECK(check_derivation(boom, make_sequent({falsum()}, falsum())).ok);
}

TEST_CASE("or elimination discharges per branch") {
  FormulaId p = atom("p"), q = atom("q");
  FormulaId pq = mk_or(p, q);
  FormulaId qp = mk_or(q, p);
  NjDerivation d = rule_node(
      NjRule::OrE, qp,
      {nj_assume(pq),
       rule_node(NjRule::OrI2, qp, {nj_assume(p, "l")}),
       rule_node(NjRule::OrI1, qp, {nj_assume(q, "r")})},
      {"l", "r"});
  CHECK(check_derivation(d, make_sequent({pq}, qp)).ok);

  // Swapping the labels misattributes both assumptions.
  NjDerivation swapped = d;
  swapped.labels = {"r", "l"};
  CHECK_FALSE(check_derivation(swapped, make_sequent({pq}, qp)).ok);
}

TEST_CASE("weakening: a checked derivation survives a larger context") {
  FormulaId p = atom("p"), q = atom("q"), r = atom("r");
  FormulaId pq = mk_and(p, q);
  NjDerivation d = rule_node(NjRule::AndE2, q, {nj_assume(pq)});
  Sequent tight = make_sequent({pq}, q);
  Sequent loose = make_sequent({pq, r, mk_imp(p, r)}, q);
  CHECK(check_derivation(d, tight).ok);
  CHECK(check_derivation(d, loose).ok);
}

TEST_CASE("json round trip") {
  FormulaId p = atom("p"), q = atom("q");
  NjDerivation d = rule_node(
      NjRule::ImpI, mk_imp(mk_and(p, q), p),
      {rule_node(NjRule::AndE1, p, {nj_assume(mk_and(p, q), "1")})}, {"1"});
  NjDerivation back = nj_from_json(nj_to_json(d));
  CHECK(back.rule == d.rule);
  CHECK(back.formula == d.formula);
  CHECK(back.labels == d.labels);
  CHECK(back.children.size() == 1);
  CHECK(check_derivation(back, make_sequent({}, d.formula)).ok);
}

namespace {

// Random well-formed derivations, built bottom-up: keep a pool of valid
// subderivations over a small formula pool and extend by applicable rules.
struct DerivationGen {
  std::mt19937 rng{20112};
  std::vector<FormulaId> pool;
  int label_counter = 0;

  DerivationGen() {
    pool = enumerate_formulae(2, {"x", "y"}, Shape::Any, true);
  }

  FormulaId pick_formula() {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  }

  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  NjDerivation grow(int budget) {
    if (budget <= 0) return nj_assume(pick_formula());
    NjDerivation sub = grow(budget - 1);
    switch (roll(6)) {
      case 0:
        return rule_node(NjRule::AndI, mk_and(sub.formula, sub.formula),
                         {sub, sub});
      case 1: {
        NjDerivation other = grow(budget / 2);
        return rule_node(NjRule::AndI, mk_and(sub.formula, other.formula),
                         {sub, other});
      }
      case 2:
        return rule_node(NjRule::OrI1, mk_or(sub.formula, pick_formula()), {sub});
      case 3:
        return rule_node(NjRule::OrI2, mk_or(pick_formula(), sub.formula), {sub});
      case 4: {
        // Discharge an arbitrary formula (possibly vacuously).
        FormulaId hyp = pick_formula();
        std::string label = "g" + std::to_string(++label_counter);
        NjDerivation body = relabel_open(sub, hyp, label);
        return rule_node(NjRule::ImpI, mk_imp(hyp, body.formula), {body}, {label});
      }
      default: {
        if (tag(sub.formula) != Tag::And) return sub;
        bool first = roll(2) == 0;
        return rule_node(first ? NjRule::AndE1 : NjRule::AndE2,
                         first ? lhs(sub.formula) : rhs(sub.formula), {sub});
      }
    }
  }

  // Mark open assumptions of `hyp` with `label` so an ImpI above may
  // discharge them.
  NjDerivation relabel_open(NjDerivation d, FormulaId hyp, const std::string& label) {
    if (d.rule == NjRule::Assumption && d.labels.empty() && d.formula == hyp) {
      if (roll(2)) d.labels.push_back(label);
      return d;
    }
    for (auto& c : d.children) c = relabel_open(std::move(c), hyp, label);
    return d;
  }
};

std::vector<FormulaId> open_assumptions(const NjDerivation& d) {
  std::vector<FormulaId> out;
  if (d.rule == NjRule::Assumption) {
    if (d.labels.empty()) out.push_back(d.formula);
    return out;
  }
  for (const auto& c : d.children) {
    auto sub = open_assumptions(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return canonical_set(std::move(out));
}

}  // namespace

TEST_CASE("checker soundness: accepted derivations are provable sequents") {
  DerivationGen gen;
  int accepted = 0;
  for (int i = 0; i < 200; ++i) {
    NjDerivation d = gen.grow(4);
    // The generator can mis-apply AndE projections on purpose; only sequents
    // of derivations the checker accepts are claimed provable.
    Sequent s = make_sequent(open_assumptions(d), d.formula);
    if (!check_derivation(d, s).ok) continue;
    ++accepted;
    CHECK(provable(s));
  }
  CHECK(accepted > 50);
}
