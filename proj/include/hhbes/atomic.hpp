#pragma once

#include <set>
#include <string>
#include <vector>

#include "hhbes/formula.hpp"

namespace hhbes {

// Atomic rules over named atoms. A premise is an atom that may be
// established under a set of hypothesis rules, discharged within that
// premise's subderivation. Rule levels: 0 for axioms, 1 for plain
// atom-premise rules, and 1 + the deepest hypothesis level (at least 2)
// once any premise carries hypotheses.

struct UnsupportedLevel : std::runtime_error {
  explicit UnsupportedLevel(const std::string& what) : std::runtime_error(what) {}
};

struct AtomicRule {
  struct Premise {
    std::vector<AtomicRule> hypotheses;  // kept canonically sorted
    std::string conclusion;

    bool operator==(const Premise&) const;
    bool operator<(const Premise&) const;
  };

  std::vector<Premise> premises;  // order is meaningful for the encoding
  std::string conclusion;

  int level() const;
  bool operator==(const AtomicRule&) const;
  bool operator<(const AtomicRule&) const;
};

AtomicRule axiom_rule(std::string conclusion);
AtomicRule plain_rule(std::vector<std::string> premises, std::string conclusion);

// A finite set of atomic rules, canonically ordered.
class AtomicSystem {
 public:
  AtomicSystem() = default;
  explicit AtomicSystem(std::vector<AtomicRule> rules);

  const std::vector<AtomicRule>& rules() const { return rules_; }
  int level() const;
  bool empty() const { return rules_.empty(); }

  AtomicSystem with(AtomicRule r) const;
  AtomicSystem merged(const AtomicSystem& other) const;
  bool subseteq(const AtomicSystem& other) const;

  bool operator==(const AtomicSystem&) const = default;

 private:
  std::vector<AtomicRule> rules_;
};

std::set<std::string> atoms_of(const AtomicRule& r);
std::set<std::string> atoms_of(const AtomicSystem& sys);

// Derivability of an atom from atomic assumptions in a system of level <= 2.
// Assumptions enter as extra axioms; premise hypotheses become available
// only inside that premise's subderivation. Total via branch-local loop
// detection on (available rules, goal).
bool derive_atomic(const AtomicSystem& sys,
                   const std::vector<std::string>& assumptions,
                   const std::string& goal);

// Encoding into definite formulae, one clause per rule:
//   axioms map to their conclusion, plain rules to (p1 & ... & pn) -> c, and
//   hypothesis-carrying premises to (encode(hyps) -> p) conjuncts.
FormulaId encode_rule(const AtomicRule& r);
Program encode(const AtomicSystem& sys);

// JSON: [{"concl": "c", "premises": [{"hyps": [<rule>...], "concl": "p"}]}]
std::string system_to_json(const AtomicSystem& sys);
AtomicSystem system_from_json(const std::string& text);

}  // namespace hhbes
