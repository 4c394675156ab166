#pragma once

#include <string>
#include <vector>

#include "hhbes/formula.hpp"

namespace hhbes {

// Natural-deduction derivation trees and the checker that validates them
// rule instance by rule instance. This is the trusted endpoint of the
// extraction pipeline: anything it accepts is an intuitionistic proof.

enum class NjRule : std::uint8_t {
  Assumption,
  AndI,
  AndE1,
  AndE2,
  OrI1,
  OrI2,
  OrE,
  ImpI,
  ImpE,
  FalsumE,
};

const char* nj_rule_name(NjRule r);

struct NjDerivation {
  NjRule rule = NjRule::Assumption;
  FormulaId formula = kNoFormula;
  std::vector<NjDerivation> children;
  // Assumption: zero labels (open) or one (dischargeable by that label).
  // ImpI: the one label it discharges. OrE: the two labels (left, right
  // branch). Empty otherwise.
  std::vector<std::string> labels;
};

NjDerivation nj_assume(FormulaId f);
NjDerivation nj_assume(FormulaId f, std::string label);

struct CheckResult {
  bool ok = false;
  std::string message;  // on failure: path + expected/actual shape
  explicit operator bool() const { return ok; }
};

// True iff every node is a correct rule instance, the root concludes
// s.conclusion, and every open assumption is a member of s.context.
// Discharge is label-based: ImpI/OrE bind their labels over their subtrees
// (no shadowing), and binding zero occurrences is allowed.
CheckResult check_derivation(const NjDerivation& d, const Sequent& s);

// JSON tree: {"rule": str, "formula": str, "children": [...],
// "discharges": [labels]} where an Assumption's own label rides in
// "discharges".
std::string nj_to_json(const NjDerivation& d);
NjDerivation nj_from_json(const std::string& text);

}  // namespace hhbes
