#pragma once

#include <optional>
#include <set>
#include <string>

#include "hhbes/formula.hpp"
#include "hhbes/oracle.hpp"  // BudgetExceeded

namespace hhbes {

// Goal-directed uniform proof search for queries P |- G over definite
// programs. Compound goals are decomposed by their right rule before the
// program is consulted; atomic goals try membership, then each matching
// clause in canonical order, then ex falso. Absurdity as a goal is proved
// only through membership or a clause headed by it.

enum class StepKind : std::uint8_t { In, Clause, Efq, Or, And, Load };

const char* step_name(StepKind k);

struct Trace {
  StepKind step = StepKind::In;
  Program program;
  FormulaId goal = kNoFormula;
  FormulaId clause = kNoFormula;  // Clause: the G -> A used
  int branch = -1;                // Or: 0 = left, 1 = right
  FormulaId loaded = kNoFormula;  // Load: the definite antecedent
  std::vector<Trace> children;
};

struct InvalidGoal : std::runtime_error {
  explicit InvalidGoal(const std::string& what) : std::runtime_error(what) {}
};

struct SolveStats {
  long long nodes = 0;
  std::set<Program> visited_programs;
};

struct SolveOptions {
  long long budget = 50'000'000;
  SolveStats* stats = nullptr;
};

SolveOptions default_solve_options();  // honors HHBES_BUDGET

struct SolveResult {
  bool success = false;
  std::optional<Trace> trace;
};

// Total on every input: a branch-local visited set of (program, goal) pairs
// fails any branch that revisits a state, and the reachable state space is
// finite. Deterministic: left disjunct first, clauses in canonical order.
SolveResult solve(const Program& p, FormulaId goal,
                  const SolveOptions& opts = default_solve_options());

// Checks that every node of a trace is a correct instance of its step.
bool validate_trace(const Trace& t, std::string* why = nullptr);

std::string trace_to_json(const Trace& t);

}  // namespace hhbes
