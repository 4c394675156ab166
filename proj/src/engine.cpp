#include "hhbes/engine.hpp"

#include <cstdlib>

#include "json.hpp"

namespace hhbes {

const char* step_name(StepKind k) {
  switch (k) {
    case StepKind::In: return "IN";
    case StepKind::Clause: return "CLAUSE";
    case StepKind::Efq: return "EFQ";
    case StepKind::Or: return "OR";
    case StepKind::And: return "AND";
    case StepKind::Load: return "LOAD";
  }
  return "?";
}

SolveOptions default_solve_options() {
  SolveOptions opts;
  if (const char* env = std::getenv("HHBES_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) opts.budget = v;
  }
  return opts;
}

namespace {

Trace make_node(StepKind step, const Program& p, FormulaId goal) {
  Trace t;
  t.step = step;
  t.program = p;
  t.goal = goal;
  return t;
}

struct Searcher {
  long long budget;
  SolveStats* stats;
  // Branch-local path of (program clauses, goal); revisits fail the branch.
  std::vector<std::pair<const std::vector<FormulaId>*, FormulaId>> path;

  std::optional<Trace> search(const Program& p, FormulaId goal) {
    if (--budget < 0) throw BudgetExceeded("engine node budget exceeded");
    if (stats) {
      ++stats->nodes;
      stats->visited_programs.insert(p);
    }
    for (const auto& [clauses, g] : path)
      if (g == goal && *clauses == p.clauses()) return std::nullopt;
    path.emplace_back(&p.clauses(), goal);
    auto result = step(p, goal);
    path.pop_back();
    return result;
  }

  std::optional<Trace> step(const Program& p, FormulaId goal) {
    switch (tag(goal)) {
      case Tag::And: {
        auto left = search(p, lhs(goal));
        if (!left) return std::nullopt;
        auto right = search(p, rhs(goal));
        if (!right) return std::nullopt;
        Trace t = make_node(StepKind::And, p, goal);
        t.children.push_back(std::move(*left));
        t.children.push_back(std::move(*right));
        return t;
      }
      case Tag::Or: {
        for (int branch = 0; branch < 2; ++branch) {
          auto child = search(p, branch == 0 ? lhs(goal) : rhs(goal));
          if (!child) continue;
          Trace t = make_node(StepKind::Or, p, goal);
          t.branch = branch;
          t.children.push_back(std::move(*child));
          return t;
        }
        return std::nullopt;
      }
      case Tag::Imp: {
        Program extended = p.with(lhs(goal));
        auto child = search(extended, rhs(goal));
        if (!child) return std::nullopt;
        Trace t = make_node(StepKind::Load, p, goal);
        t.loaded = lhs(goal);
        t.children.push_back(std::move(*child));
        return t;
      }
      case Tag::Atom:
      case Tag::Falsum: {
        if (set_contains(p.decomposition(), goal)) return make_node(StepKind::In, p, goal);
        for (FormulaId c : p.decomposition()) {
          if (tag(c) != Tag::Imp || rhs(c) != goal) continue;
          auto body = search(p, lhs(c));
          if (!body) continue;
          Trace t = make_node(StepKind::Clause, p, goal);
          t.clause = c;
          t.children.push_back(std::move(*body));
          return t;
        }
        if (!is_falsum(goal)) {
          auto child = search(p, falsum());
          if (child) {
            Trace t = make_node(StepKind::Efq, p, goal);
            t.children.push_back(std::move(*child));
            return t;
          }
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

SolveResult solve(const Program& p, FormulaId goal, const SolveOptions& opts) {
  if (!is_goal(goal))
    throw InvalidGoal("not a goal formula: " + render(goal));
  Searcher s{opts.budget, opts.stats, {}};
  auto trace = s.search(p, goal);
  if (!trace) return {false, std::nullopt};
  return {true, std::move(trace)};
}

namespace {

bool fail_with(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool validate_trace(const Trace& t, std::string* why) {
  switch (t.step) {
    case StepKind::In:
      if (!t.children.empty()) return fail_with(why, "IN must be a leaf");
      if (!set_contains(t.program.decomposition(), t.goal))
        return fail_with(why, "IN goal not in program decomposition");
      return true;
    case StepKind::Clause: {
      if (t.children.size() != 1) return fail_with(why, "CLAUSE needs one child");
      if (t.clause == kNoFormula || tag(t.clause) != Tag::Imp ||
          rhs(t.clause) != t.goal)
        return fail_with(why, "CLAUSE must use an implication headed by the goal");
      if (!set_contains(t.program.decomposition(), t.clause))
        return fail_with(why, "CLAUSE clause not in program decomposition");
      const Trace& body = t.children[0];
      if (!(body.program == t.program) || body.goal != lhs(t.clause))
        return fail_with(why, "CLAUSE child must prove the clause body");
      return validate_trace(body, why);
    }
    case StepKind::Efq: {
      if (t.children.size() != 1) return fail_with(why, "EFQ needs one child");
      if (is_falsum(t.goal)) return fail_with(why, "EFQ never applies to goal false");
      if (!is_atomic(t.goal)) return fail_with(why, "EFQ applies at atomic goals only");
      const Trace& body = t.children[0];
      if (!(body.program == t.program) || !is_falsum(body.goal))
        return fail_with(why, "EFQ child must prove false in the same program");
      return validate_trace(body, why);
    }
    case StepKind::Or: {
      if (t.children.size() != 1 || (t.branch != 0 && t.branch != 1))
        return fail_with(why, "OR needs one child and a recorded branch");
      if (tag(t.goal) != Tag::Or) return fail_with(why, "OR goal must be a disjunction");
      FormulaId side = t.branch == 0 ? lhs(t.goal) : rhs(t.goal);
      const Trace& body = t.children[0];
      if (!(body.program == t.program) || body.goal != side)
        return fail_with(why, "OR child must prove the recorded branch");
      return validate_trace(body, why);
    }
    case StepKind::And: {
      if (t.children.size() != 2) return fail_with(why, "AND needs two children");
      if (tag(t.goal) != Tag::And) return fail_with(why, "AND goal must be a conjunction");
      const Trace& l = t.children[0];
      const Trace& r = t.children[1];
      if (!(l.program == t.program) || l.goal != lhs(t.goal) ||
          !(r.program == t.program) || r.goal != rhs(t.goal))
        return fail_with(why, "AND children must prove both conjuncts");
      return validate_trace(l, why) && validate_trace(r, why);
    }
    case StepKind::Load: {
      if (t.children.size() != 1) return fail_with(why, "LOAD needs one child");
      if (tag(t.goal) != Tag::Imp)
        return fail_with(why, "LOAD goal must be an implication");
      if (t.loaded != lhs(t.goal))
        return fail_with(why, "LOAD must record the antecedent");
      const Trace& body = t.children[0];
      if (!(body.program == t.program.with(t.loaded)) || body.goal != rhs(t.goal))
        return fail_with(why, "LOAD child must prove the consequent in the extended program");
      return validate_trace(body, why);
    }
  }
  return fail_with(why, "unknown step");
}

namespace {

nlohmann::json trace_json(const Trace& t) {
  nlohmann::json j;
  j["step"] = step_name(t.step);
  j["goal"] = render(t.goal);
  j["program"] = nlohmann::json::array();
  for (FormulaId c : t.program.clauses()) j["program"].push_back(render(c));
  if (t.step == StepKind::Clause) j["clause"] = render(t.clause);
  if (t.step == StepKind::Or) j["branch"] = t.branch == 0 ? "left" : "right";
  if (t.step == StepKind::Load) j["loaded"] = render(t.loaded);
  j["children"] = nlohmann::json::array();
  for (const Trace& c : t.children) j["children"].push_back(trace_json(c));
  return j;
}

}  // namespace

std::string trace_to_json(const Trace& t) { return trace_json(t).dump(2); }

}  // namespace hhbes
