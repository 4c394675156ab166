#include "hhbes/fixpoint.hpp"

#include <algorithm>

#include "json.hpp"

namespace hhbes {

Interpretation::Interpretation(std::vector<Program> domain,
                               std::vector<FormulaId> universe)
    : domain_(std::move(domain)), universe_(std::move(universe)) {
  std::sort(domain_.begin(), domain_.end());
  domain_.erase(std::unique(domain_.begin(), domain_.end()), domain_.end());
  table_.resize(domain_.size());
}

std::size_t Interpretation::index_of(const Program& p) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), p);
  if (it == domain_.end() || !(*it == p))
    throw DomainEscape("program outside the interpretation domain: {" +
                       [&] {
                         std::string s;
                         for (FormulaId c : p.clauses()) {
                           if (!s.empty()) s += ", ";
                           s += render(c);
                         }
                         return s;
                       }() +
                       "}");
  return static_cast<std::size_t>(it - domain_.begin());
}

const std::set<FormulaId>& Interpretation::at(const Program& p) const {
  return table_[index_of(p)];
}

bool Interpretation::contains(const Program& p, FormulaId atomic) const {
  const auto& set = at(p);
  return set.find(atomic) != set.end();
}

void Interpretation::insert(const Program& p, FormulaId atomic) {
  table_[index_of(p)].insert(atomic);
}

bool Interpretation::below(const Interpretation& other) const {
  if (domain_ != other.domain_) return false;
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (!std::includes(other.table_[i].begin(), other.table_[i].end(),
                       table_[i].begin(), table_[i].end()))
      return false;
  return true;
}

bool Interpretation::operator==(const Interpretation& other) const {
  return domain_ == other.domain_ && table_ == other.table_;
}

bool Interpretation::monotone() const {
  for (std::size_t i = 0; i < domain_.size(); ++i)
    for (std::size_t j = 0; j < domain_.size(); ++j) {
      if (i == j || !domain_[i].subseteq(domain_[j])) continue;
      if (!std::includes(table_[j].begin(), table_[j].end(), table_[i].begin(),
                         table_[i].end()))
        return false;
    }
  return true;
}

namespace {

void defs_in_goal(FormulaId g, std::vector<FormulaId>& out);

void defs_in_definite(FormulaId d, std::vector<FormulaId>& out) {
  switch (tag(d)) {
    case Tag::Atom:
    case Tag::Falsum:
      return;
    case Tag::And:
      defs_in_definite(lhs(d), out);
      defs_in_definite(rhs(d), out);
      return;
    case Tag::Imp:
      defs_in_goal(lhs(d), out);  // clause body
      return;
    case Tag::Or:
      return;  // not definite; unreachable for well-formed programs
  }
}

void defs_in_goal(FormulaId g, std::vector<FormulaId>& out) {
  switch (tag(g)) {
    case Tag::Atom:
    case Tag::Falsum:
      return;
    case Tag::And:
    case Tag::Or:
      defs_in_goal(lhs(g), out);
      defs_in_goal(rhs(g), out);
      return;
    case Tag::Imp:
      out.push_back(lhs(g));          // loadable antecedent
      defs_in_definite(lhs(g), out);  // bodies inside it load too
      defs_in_goal(rhs(g), out);
      return;
  }
}

std::vector<FormulaId> loadable_defs(const Program& p, FormulaId goal) {
  std::vector<FormulaId> defs;
  defs_in_goal(goal, defs);
  for (FormulaId c : p.clauses()) defs_in_definite(c, defs);
  return canonical_set(std::move(defs));
}

std::vector<FormulaId> query_universe(const Program& p, FormulaId goal) {
  std::vector<std::string> names;
  for (FormulaId c : p.clauses()) collect_atom_names(c, names);
  collect_atom_names(goal, names);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<FormulaId> out;
  out.reserve(names.size() + 1);
  for (const auto& n : names) out.push_back(atom(n));
  out.push_back(falsum());
  return canonical_set(std::move(out));
}

}  // namespace

std::vector<Program> reachable_programs(const Program& p, FormulaId goal) {
  std::vector<FormulaId> defs = loadable_defs(p, goal);
  if (defs.size() > 22)
    throw std::runtime_error("interpretation domain too large: 2^" +
                             std::to_string(defs.size()) + " programs");
  std::vector<Program> family;
  family.reserve(1u << defs.size());
  for (std::uint32_t bits = 0; bits < (1u << defs.size()); ++bits) {
    Program q = p;
    for (std::size_t k = 0; k < defs.size(); ++k)
      if (bits & (1u << k)) q = q.with(defs[k]);
    family.push_back(std::move(q));
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

Interpretation bottom_interpretation(const Program& p, FormulaId goal) {
  return Interpretation(reachable_programs(p, goal), query_universe(p, goal));
}

Interpretation consequence_step(const Interpretation& i) {
  Interpretation next(i.domain(), i.universe());
  for (const Program& p : i.domain()) {
    for (FormulaId c : p.decomposition()) {
      if (is_atomic(c)) next.insert(p, c);
      if (tag(c) == Tag::Imp && satisfies(i, p, lhs(c))) next.insert(p, rhs(c));
    }
    if (i.contains(p, falsum()))
      for (FormulaId a : i.universe()) next.insert(p, a);
  }
  return next;
}

Interpretation least_fixpoint(const Program& p, FormulaId goal) {
  Interpretation current = bottom_interpretation(p, goal);
  for (;;) {
    Interpretation next = consequence_step(current);
    if (!current.below(next))
      throw std::logic_error("consequence chain is not ascending");
    if (next == current) return current;
    current = std::move(next);
  }
}

bool satisfies(const Interpretation& i, const Program& p, FormulaId goal) {
  switch (tag(goal)) {
    case Tag::Atom:
    case Tag::Falsum:
      return i.contains(p, goal);
    case Tag::And:
      return satisfies(i, p, lhs(goal)) && satisfies(i, p, rhs(goal));
    case Tag::Or:
      return satisfies(i, p, lhs(goal)) || satisfies(i, p, rhs(goal));
    case Tag::Imp:
      return satisfies(i, p.with(lhs(goal)), rhs(goal));
  }
  return false;
}

std::string interpretation_to_json(const Interpretation& i) {
  nlohmann::json j;
  for (const Program& p : i.domain()) {
    std::string key;
    for (FormulaId c : p.clauses()) {
      if (!key.empty()) key += ", ";
      key += render(c);
    }
    nlohmann::json atoms = nlohmann::json::array();
    for (FormulaId a : i.at(p)) atoms.push_back(render(a));
    j[key] = std::move(atoms);
  }
  return j.dump(2);
}

}  // namespace hhbes
