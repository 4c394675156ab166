#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hhbes/formula.hpp"

namespace hhbes {

// Denotational side of the engine: interpretations over a finite family of
// programs, the one-step consequence operator that unfolds clause
// application, and its least fixed point.

struct DomainEscape : std::runtime_error {
  explicit DomainEscape(const std::string& what) : std::runtime_error(what) {}
};

// A monotone map from programs (in a finite, load-closed family) to sets of
// atomic formulae (atoms and falsum).
class Interpretation {
 public:
  Interpretation(std::vector<Program> domain, std::vector<FormulaId> universe);

  const std::vector<Program>& domain() const { return domain_; }
  const std::vector<FormulaId>& universe() const { return universe_; }

  const std::set<FormulaId>& at(const Program& p) const;
  bool contains(const Program& p, FormulaId atomic) const;
  void insert(const Program& p, FormulaId atomic);

  // Pointwise subset / equality on tables over the same domain.
  bool below(const Interpretation& other) const;
  bool operator==(const Interpretation& other) const;

  // The defining invariant: P included in Q implies table(P) included in
  // table(Q). O(n^2) sweep, meant for assertions.
  bool monotone() const;

 private:
  std::size_t index_of(const Program& p) const;
  std::vector<Program> domain_;          // sorted by clause sets
  std::vector<FormulaId> universe_;      // atoms of the root query plus falsum
  std::vector<std::set<FormulaId>> table_;
};

// The family {p union S : S subseteq Defs} where Defs collects every definite
// antecedent in load position inside g or inside clause bodies of p,
// transitively. Closed under the load extensions satisfaction can demand.
std::vector<Program> reachable_programs(const Program& p, FormulaId goal);

Interpretation bottom_interpretation(const Program& p, FormulaId goal);

// One unfolding of clause application:
//   T(I)(P) = {A in [P]} u {A : (G -> A) in [P], I,P |= G} u {A : I,P |= false}
// where A ranges over the universe (atoms and falsum).
Interpretation consequence_step(const Interpretation& i);

// Iterates consequence_step from the bottom interpretation until the table
// stabilizes; the chain is ascending and the domain finite, so this is the
// least fixed point.
Interpretation least_fixpoint(const Program& p, FormulaId goal);

// Satisfaction: atoms and falsum by table membership, conjunction and
// disjunction pointwise, implications by loading the antecedent.
bool satisfies(const Interpretation& i, const Program& p, FormulaId goal);

// {canonical program string : [atomic formulae]} table dump.
std::string interpretation_to_json(const Interpretation& i);

}  // namespace hhbes
