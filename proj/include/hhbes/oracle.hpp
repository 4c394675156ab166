#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhbes/formula.hpp"

namespace hhbes {

// Independent decision procedure for intuitionistic consequence, used as
// ground truth by the rest of the toolkit. Provability is decided by
// backward search in a contraction-free sequent calculus whose left
// implication rule is split by antecedent shape (so search terminates
// without loop checks); refutations are witnessed, when requested, by a
// finite rooted Kripke countermodel found by exhaustive enumeration.

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Countermodel {
  int worlds = 0;
  std::vector<std::pair<int, int>> le;            // reflexive-transitive order
  std::map<std::string, std::vector<int>> val;    // atom -> worlds forcing it
  int fails_at = 0;                               // context holds, goal fails

  std::string to_json() const;
};

// True iff the sequent fails at some world of the model (all context
// formulae forced, conclusion not forced).
bool countermodel_refutes(const Countermodel& m, const Sequent& s);

enum class Status : std::uint8_t { Provable, Refuted };

struct Verdict {
  Status status = Status::Refuted;
  std::optional<Countermodel> witness;  // present for Refuted when found
};

struct OracleOptions {
  long long budget = 50'000'000;  // search node limit; BudgetExceeded beyond
  int world_bound = 5;            // countermodel enumeration cap
  bool want_witness = true;
};

OracleOptions default_oracle_options();  // honors HHBES_BUDGET

Verdict decide(const Sequent& s, const OracleOptions& opts = default_oracle_options());

inline bool provable(const Sequent& s) {
  auto opts = default_oracle_options();
  opts.want_witness = false;
  return decide(s, opts).status == Status::Provable;
}

// Exhaustive countermodel search over rooted posets with at most
// `world_bound` worlds and monotone valuations.
std::optional<Countermodel> find_countermodel(const Sequent& s, int world_bound);

}  // namespace hhbes
