#include "hhbes/atomic.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace hhbes {

namespace {

// Recursive structures rule out defaulted comparisons; spell them out.
int cmp_rule(const AtomicRule& a, const AtomicRule& b);

int cmp_premise(const AtomicRule::Premise& a, const AtomicRule::Premise& b) {
  if (int c = a.conclusion.compare(b.conclusion)) return c;
  for (std::size_t i = 0; i < a.hypotheses.size() && i < b.hypotheses.size(); ++i)
    if (int c = cmp_rule(a.hypotheses[i], b.hypotheses[i])) return c;
  if (a.hypotheses.size() != b.hypotheses.size())
    return a.hypotheses.size() < b.hypotheses.size() ? -1 : 1;
  return 0;
}

int cmp_rule(const AtomicRule& a, const AtomicRule& b) {
  if (int c = a.conclusion.compare(b.conclusion)) return c;
  for (std::size_t i = 0; i < a.premises.size() && i < b.premises.size(); ++i)
    if (int c = cmp_premise(a.premises[i], b.premises[i])) return c;
  if (a.premises.size() != b.premises.size())
    return a.premises.size() < b.premises.size() ? -1 : 1;
  return 0;
}

}  // namespace

bool AtomicRule::Premise::operator==(const Premise& other) const {
  return cmp_premise(*this, other) == 0;
}
bool AtomicRule::Premise::operator<(const Premise& other) const {
  return cmp_premise(*this, other) < 0;
}
bool AtomicRule::operator==(const AtomicRule& other) const {
  return cmp_rule(*this, other) == 0;
}
bool AtomicRule::operator<(const AtomicRule& other) const {
  return cmp_rule(*this, other) < 0;
}

int AtomicRule::level() const {
  if (premises.empty()) return 0;
  int deepest = -1;
  for (const Premise& p : premises)
    for (const AtomicRule& h : p.hypotheses) deepest = std::max(deepest, h.level());
  if (deepest < 0) return 1;            // plain atom premises
  return std::max(2, deepest + 1);      // discharging axioms is already second-level
}

AtomicRule axiom_rule(std::string conclusion) {
  AtomicRule r;
  r.conclusion = std::move(conclusion);
  return r;
}

AtomicRule plain_rule(std::vector<std::string> premises, std::string conclusion) {
  AtomicRule r;
  r.conclusion = std::move(conclusion);
  for (auto& p : premises) r.premises.push_back({{}, std::move(p)});
  return r;
}

AtomicSystem::AtomicSystem(std::vector<AtomicRule> rules) : rules_(std::move(rules)) {
  std::sort(rules_.begin(), rules_.end());
  rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
}

int AtomicSystem::level() const {
  int level = 0;
  for (const AtomicRule& r : rules_) level = std::max(level, r.level());
  return level;
}

AtomicSystem AtomicSystem::with(AtomicRule r) const {
  std::vector<AtomicRule> rules = rules_;
  rules.push_back(std::move(r));
  return AtomicSystem(std::move(rules));
}

AtomicSystem AtomicSystem::merged(const AtomicSystem& other) const {
  std::vector<AtomicRule> rules = rules_;
  rules.insert(rules.end(), other.rules_.begin(), other.rules_.end());
  return AtomicSystem(std::move(rules));
}

bool AtomicSystem::subseteq(const AtomicSystem& other) const {
  return std::includes(other.rules_.begin(), other.rules_.end(), rules_.begin(),
                       rules_.end());
}

namespace {

void collect_rule_atoms(const AtomicRule& r, std::set<std::string>& out) {
  out.insert(r.conclusion);
  for (const auto& p : r.premises) {
    out.insert(p.conclusion);
    for (const auto& h : p.hypotheses) collect_rule_atoms(h, out);
  }
}

}  // namespace

std::set<std::string> atoms_of(const AtomicRule& r) {
  std::set<std::string> out;
  collect_rule_atoms(r, out);
  return out;
}

std::set<std::string> atoms_of(const AtomicSystem& sys) {
  std::set<std::string> out;
  for (const AtomicRule& r : sys.rules()) collect_rule_atoms(r, out);
  return out;
}

namespace {

struct AtomicSearcher {
  // Path of (available rules, goal) states; revisits fail the branch.
  std::vector<std::pair<std::vector<AtomicRule>, std::string>> path;

  bool derivable(const std::vector<AtomicRule>& available, const std::string& goal) {
    for (const auto& [rules, g] : path)
      if (g == goal && rules == available) return false;
    path.emplace_back(available, goal);
    bool found = false;
    for (const AtomicRule& r : available) {
      if (r.conclusion != goal) continue;
      found = true;
      for (const AtomicRule::Premise& prem : r.premises) {
        std::vector<AtomicRule> extended = available;
        extended.insert(extended.end(), prem.hypotheses.begin(),
                        prem.hypotheses.end());
        std::sort(extended.begin(), extended.end());
        extended.erase(std::unique(extended.begin(), extended.end()),
                       extended.end());
        if (!derivable(extended, prem.conclusion)) {
          found = false;
          break;
        }
      }
      if (found) break;
    }
    path.pop_back();
    return found;
  }
};

}  // namespace

bool derive_atomic(const AtomicSystem& sys,
                   const std::vector<std::string>& assumptions,
                   const std::string& goal) {
  if (sys.level() > 2)
    throw UnsupportedLevel("direct search supports systems of level <= 2, got level " +
                           std::to_string(sys.level()) + "; encode instead");
  std::vector<AtomicRule> available = sys.rules();
  for (const std::string& a : assumptions) available.push_back(axiom_rule(a));
  std::sort(available.begin(), available.end());
  available.erase(std::unique(available.begin(), available.end()), available.end());
  AtomicSearcher searcher;
  return searcher.derivable(available, goal);
}

namespace {

FormulaId conjoin(const std::vector<FormulaId>& parts) {
  FormulaId out = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
    out = mk_and(*it, out);
  return out;
}

}  // namespace

FormulaId encode_rule(const AtomicRule& r) {
  if (r.premises.empty()) return atom(r.conclusion);
  std::vector<FormulaId> conjuncts;
  conjuncts.reserve(r.premises.size());
  for (const AtomicRule::Premise& p : r.premises) {
    FormulaId premise_atom = atom(p.conclusion);
    if (p.hypotheses.empty()) {
      conjuncts.push_back(premise_atom);
      continue;
    }
    std::vector<FormulaId> hyp_parts;
    hyp_parts.reserve(p.hypotheses.size());
    for (const AtomicRule& h : p.hypotheses) hyp_parts.push_back(encode_rule(h));
    hyp_parts = canonical_set(std::move(hyp_parts));
    conjuncts.push_back(mk_imp(conjoin(hyp_parts), premise_atom));
  }
  return mk_imp(conjoin(conjuncts), atom(r.conclusion));
}

Program encode(const AtomicSystem& sys) {
  std::vector<FormulaId> clauses;
  clauses.reserve(sys.rules().size());
  for (const AtomicRule& r : sys.rules()) clauses.push_back(encode_rule(r));
  return Program::of(std::move(clauses));
}

namespace {

using nlohmann::json;

bool valid_atom_name(const std::string& name) {
  if (name.empty() || name == "false") return false;
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  std::size_t start = 0;
  if (name[0] == '#') {
    if (name.size() == 1) return false;
    start = 1;
  } else if (name[0] < 'a' || name[0] > 'z') {
    return false;
  }
  for (std::size_t i = start; i < name.size(); ++i)
    if (!ident_char(name[i])) return false;
  return true;
}

json rule_to_json(const AtomicRule& r) {
  json j;
  j["concl"] = r.conclusion;
  j["premises"] = json::array();
  for (const auto& p : r.premises) {
    json jp;
    jp["concl"] = p.conclusion;
    jp["hyps"] = json::array();
    for (const auto& h : p.hypotheses) jp["hyps"].push_back(rule_to_json(h));
    j["premises"].push_back(std::move(jp));
  }
  return j;
}

AtomicRule rule_from_json(const json& j) {
  AtomicRule r;
  r.conclusion = j.at("concl").get<std::string>();
  if (!valid_atom_name(r.conclusion))
    throw std::invalid_argument("bad atom name: " + r.conclusion);
  if (j.contains("premises")) {
    for (const auto& jp : j.at("premises")) {
      AtomicRule::Premise p;
      p.conclusion = jp.at("concl").get<std::string>();
      if (!valid_atom_name(p.conclusion))
        throw std::invalid_argument("bad atom name: " + p.conclusion);
      if (jp.contains("hyps"))
        for (const auto& jh : jp.at("hyps")) p.hypotheses.push_back(rule_from_json(jh));
      std::sort(p.hypotheses.begin(), p.hypotheses.end());
      p.hypotheses.erase(std::unique(p.hypotheses.begin(), p.hypotheses.end()),
                         p.hypotheses.end());
      r.premises.push_back(std::move(p));
    }
  }
  return r;
}

}  // namespace

std::string system_to_json(const AtomicSystem& sys) {
  json j = json::array();
  for (const AtomicRule& r : sys.rules()) j.push_back(rule_to_json(r));
  return j.dump(2);
}

AtomicSystem system_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("atomic system JSON must be an array");
  std::vector<AtomicRule> rules;
  for (const auto& jr : j) rules.push_back(rule_from_json(jr));
  return AtomicSystem(std::move(rules));
}

}  // namespace hhbes
