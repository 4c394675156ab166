#include "hhbes/nj.hpp"

#include <map>
#include <sstream>

#include "json.hpp"

namespace hhbes {

const char* nj_rule_name(NjRule r) {
  switch (r) {
    case NjRule::Assumption: return "Assumption";
    case NjRule::AndI: return "AndI";
    case NjRule::AndE1: return "AndE1";
    case NjRule::AndE2: return "AndE2";
    case NjRule::OrI1: return "OrI1";
    case NjRule::OrI2: return "OrI2";
    case NjRule::OrE: return "OrE";
    case NjRule::ImpI: return "ImpI";
    case NjRule::ImpE: return "ImpE";
    case NjRule::FalsumE: return "FalsumE";
  }
  return "?";
}

NjDerivation nj_assume(FormulaId f) {
  NjDerivation d;
  d.rule = NjRule::Assumption;
  d.formula = f;
  return d;
}

NjDerivation nj_assume(FormulaId f, std::string label) {
  NjDerivation d = nj_assume(f);
  d.labels.push_back(std::move(label));
  return d;
}

namespace {

struct Checker {
  std::vector<FormulaId> open;                 // open assumptions found
  std::map<std::string, FormulaId> bound;      // label -> discharged formula
  std::string error;

  bool fail(const std::string& path, const std::string& msg) {
    error = path + ": " + msg;
    return false;
  }

  bool expect_children(const NjDerivation& d, const std::string& path,
                       std::size_t n, std::size_t n_labels) {
    if (d.children.size() != n)
      return fail(path, std::string(nj_rule_name(d.rule)) + " expects " +
                            std::to_string(n) + " children, got " +
                            std::to_string(d.children.size()));
    if (d.labels.size() != n_labels)
      return fail(path, std::string(nj_rule_name(d.rule)) + " expects " +
                            std::to_string(n_labels) + " labels, got " +
                            std::to_string(d.labels.size()));
    return true;
  }

  bool bind(const std::string& path, const std::string& label, FormulaId f) {
    if (bound.count(label))
      return fail(path, "label '" + label + "' is already bound above");
    bound.emplace(label, f);
    return true;
  }

  bool check(const NjDerivation& d, const std::string& path) {
    switch (d.rule) {
      case NjRule::Assumption: {
        if (!d.children.empty())
          return fail(path, "Assumption must be a leaf");
        if (d.labels.size() > 1)
          return fail(path, "Assumption carries at most one label");
        if (d.labels.empty()) {
          open.push_back(d.formula);
          return true;
        }
        auto it = bound.find(d.labels[0]);
        if (it == bound.end())
          return fail(path, "label '" + d.labels[0] + "' is not bound by any rule above");
        if (it->second != d.formula)
          return fail(path, "discharged assumption is " + render(d.formula) +
                                " but label '" + d.labels[0] + "' binds " +
                                render(it->second));
        return true;
      }
      case NjRule::AndI: {
        if (!expect_children(d, path, 2, 0)) return false;
        if (tag(d.formula) != Tag::And)
          return fail(path, "AndI must conclude a conjunction, got " + render(d.formula));
        if (d.children[0].formula != lhs(d.formula) ||
            d.children[1].formula != rhs(d.formula))
          return fail(path, "AndI premises do not match " + render(d.formula));
        return check(d.children[0], path + ".0") && check(d.children[1], path + ".1");
      }
      case NjRule::AndE1:
      case NjRule::AndE2: {
        if (!expect_children(d, path, 1, 0)) return false;
        FormulaId prem = d.children[0].formula;
        if (tag(prem) != Tag::And)
          return fail(path, "AndE premise must be a conjunction, got " + render(prem));
        FormulaId projected = d.rule == NjRule::AndE1 ? lhs(prem) : rhs(prem);
        if (projected != d.formula)
          return fail(path, "AndE projection of " + render(prem) + " is " +
                                render(projected) + ", not " + render(d.formula));
        return check(d.children[0], path + ".0");
      }
      case NjRule::OrI1:
      case NjRule::OrI2: {
        if (!expect_children(d, path, 1, 0)) return false;
        if (tag(d.formula) != Tag::Or)
          return fail(path, "OrI must conclude a disjunction, got " + render(d.formula));
        FormulaId side = d.rule == NjRule::OrI1 ? lhs(d.formula) : rhs(d.formula);
        if (d.children[0].formula != side)
          return fail(path, "OrI premise " + render(d.children[0].formula) +
                                " is not the injected side of " + render(d.formula));
        return check(d.children[0], path + ".0");
      }
      case NjRule::OrE: {
        if (!expect_children(d, path, 3, 2)) return false;
        FormulaId major = d.children[0].formula;
        if (tag(major) != Tag::Or)
          return fail(path, "OrE major premise must be a disjunction, got " + render(major));
        if (d.children[1].formula != d.formula || d.children[2].formula != d.formula)
          return fail(path, "OrE minor premises must conclude " + render(d.formula));
        if (d.labels[0] == d.labels[1])
          return fail(path, "OrE labels must be distinct");
        if (!check(d.children[0], path + ".0")) return false;
        if (!bind(path, d.labels[0], lhs(major))) return false;
        bool left = check(d.children[1], path + ".1");
        bound.erase(d.labels[0]);
        if (!left) return false;
        if (!bind(path, d.labels[1], rhs(major))) return false;
        bool right = check(d.children[2], path + ".2");
        bound.erase(d.labels[1]);
        return right;
      }
      case NjRule::ImpI: {
        if (!expect_children(d, path, 1, 1)) return false;
        if (tag(d.formula) != Tag::Imp)
          return fail(path, "ImpI must conclude an implication, got " + render(d.formula));
        if (d.children[0].formula != rhs(d.formula))
          return fail(path, "ImpI premise must conclude " + render(rhs(d.formula)));
        if (!bind(path, d.labels[0], lhs(d.formula))) return false;
        bool ok = check(d.children[0], path + ".0");
        bound.erase(d.labels[0]);
        return ok;
      }
      case NjRule::ImpE: {
        if (!expect_children(d, path, 2, 0)) return false;
        FormulaId minor = d.children[0].formula;
        FormulaId major = d.children[1].formula;
        if (tag(major) != Tag::Imp)
          return fail(path, "ImpE major premise must be an implication, got " + render(major));
        if (lhs(major) != minor)
          return fail(path, "ImpE minor premise " + render(minor) +
                                " does not match antecedent of " + render(major));
        if (rhs(major) != d.formula)
          return fail(path, "ImpE concludes " + render(rhs(major)) + ", not " +
                                render(d.formula));
        return check(d.children[0], path + ".0") && check(d.children[1], path + ".1");
      }
      case NjRule::FalsumE: {
        if (!expect_children(d, path, 1, 0)) return false;
        if (d.children[0].formula != falsum())
          return fail(path, "FalsumE premise must be false");
        return check(d.children[0], path + ".0");
      }
    }
    return fail(path, "unknown rule");
  }
};

}  // namespace

CheckResult check_derivation(const NjDerivation& d, const Sequent& s) {
  Checker c;
  if (!c.check(d, "root")) return {false, c.error};
  if (d.formula != s.conclusion)
    return {false, "root concludes " + render(d.formula) + ", sequent wants " +
                       render(s.conclusion)};
  for (FormulaId f : c.open) {
    if (!set_contains(s.context, f))
      return {false, "open assumption " + render(f) + " is not in the context"};
  }
  return {true, ""};
}

namespace {

using nlohmann::json;

json nj_to_json_obj(const NjDerivation& d) {
  json j;
  j["rule"] = nj_rule_name(d.rule);
  j["formula"] = render(d.formula);
  j["children"] = json::array();
  for (const auto& c : d.children) j["children"].push_back(nj_to_json_obj(c));
  j["discharges"] = d.labels;
  return j;
}

NjRule rule_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(NjRule::FalsumE); ++i) {
    auto r = static_cast<NjRule>(i);
    if (name == nj_rule_name(r)) return r;
  }
  throw std::invalid_argument("unknown NJ rule: " + name);
}

NjDerivation nj_from_json_obj(const json& j) {
  NjDerivation d;
  d.rule = rule_from_name(j.at("rule").get<std::string>());
  d.formula = parse_formula(j.at("formula").get<std::string>());
  if (j.contains("discharges"))
    d.labels = j.at("discharges").get<std::vector<std::string>>();
  if (j.contains("children"))
    for (const auto& c : j.at("children")) d.children.push_back(nj_from_json_obj(c));
  return d;
}

}  // namespace

std::string nj_to_json(const NjDerivation& d) { return nj_to_json_obj(d).dump(2); }

NjDerivation nj_from_json(const std::string& text) {
  return nj_from_json_obj(json::parse(text));
}

}  // namespace hhbes
