#include "hhbes/bes.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace hhbes {

FormulaId FlatMap::flat(FormulaId f) const {
  auto it = forward_.find(f);
  if (it == forward_.end())
    throw std::out_of_range("formula outside the flattening scope: " + render(f));
  return it->second;
}

std::optional<FormulaId> FlatMap::unflat(FormulaId a) const {
  auto it = backward_.find(a);
  if (it == backward_.end()) return std::nullopt;
  return it->second;
}

bool FlatMap::in_scope(FormulaId f) const { return forward_.count(f) > 0; }

const Scheme* FlatMap::scheme_of(FormulaId clause) const {
  auto it = schemes_.find(clause);
  return it == schemes_.end() ? nullptr : &it->second;
}

struct FlatBaseBuilder {
  const Sequent& s;
  std::set<std::string> avoid;
  FlatMap map;
  std::vector<AtomicRule> rules;
  std::vector<FormulaId> clauses;
  int counter = 0;

  FlatBaseBuilder(const Sequent& seq, const std::set<std::string>& extra_avoid)
      : s(seq) {
    avoid = extra_avoid;
    for (const std::string& a : atom_names(s)) avoid.insert(a);
    map.scope_ = s;
    map.subs_ = subformulae(s);
    map.avoid_ = avoid;
  }

  std::string fresh_name() {
    for (;;) {
      std::string name = "#" + std::to_string(counter++);
      if (!avoid.count(name)) return name;
    }
  }

  void assign_flats() {
    for (FormulaId f : map.subs_) {
      FormulaId flat;
      if (is_atom(f))
        flat = f;
      else if (is_falsum(f))
        flat = atom(kAbsurdityAtom);
      else
        flat = atom(fresh_name());
      map.forward_[f] = flat;
      map.backward_[flat] = f;
    }
  }

  std::string flat_name(FormulaId f) { return atom_name(map.forward_.at(f)); }

  void add(AtomicRule rule, Scheme scheme) {
    FormulaId clause = encode_rule(rule);
    rules.push_back(std::move(rule));
    // First writer wins on the rare shape collisions (e.g. the two
    // projections of p & p); either reading extracts a correct proof.
    map.schemes_.emplace(clause, scheme);
    clauses.push_back(clause);
  }

  // Premise "q under hypothesis p" of the second-level rules.
  static AtomicRule::Premise under(const std::string& hyp, const std::string& concl) {
    AtomicRule::Premise prem;
    prem.hypotheses.push_back(axiom_rule(hyp));
    prem.conclusion = concl;
    return prem;
  }

  void build_rules() {
    for (FormulaId f : map.subs_) {
      switch (tag(f)) {
        case Tag::Atom:
          break;
        case Tag::Falsum:
          for (FormulaId chi : map.subs_)
            add(plain_rule({flat_name(f)}, flat_name(chi)),
                {SchemeKind::FalsumElim, f, chi});
          break;
        case Tag::And: {
          std::string l = flat_name(lhs(f)), r = flat_name(rhs(f)), c = flat_name(f);
          add(plain_rule({l, r}, c), {SchemeKind::AndIntro, f});
          add(plain_rule({c}, l), {SchemeKind::AndElim1, f});
          add(plain_rule({c}, r), {SchemeKind::AndElim2, f});
          break;
        }
        case Tag::Or: {
          std::string l = flat_name(lhs(f)), r = flat_name(rhs(f)), c = flat_name(f);
          add(plain_rule({l}, c), {SchemeKind::OrIntro1, f});
          add(plain_rule({r}, c), {SchemeKind::OrIntro2, f});
          for (FormulaId chi : map.subs_) {
            std::string x = flat_name(chi);
            AtomicRule rule;
            rule.conclusion = x;
            rule.premises.push_back({{}, c});
            rule.premises.push_back(under(l, x));
            rule.premises.push_back(under(r, x));
            add(std::move(rule), {SchemeKind::OrElim, f, chi});
          }
          break;
        }
        case Tag::Imp: {
          std::string l = flat_name(lhs(f)), r = flat_name(rhs(f)), c = flat_name(f);
          AtomicRule intro;
          intro.conclusion = c;
          intro.premises.push_back(under(l, r));
          add(std::move(intro), {SchemeKind::ImpIntro, f});
          add(plain_rule({l, c}, r), {SchemeKind::ImpElim, f});
          break;
        }
      }
    }
  }

  FlatBase finish() && {
    assign_flats();
    build_rules();
    FlatBase fb;
    fb.program = Program::of(std::move(clauses));
    fb.rules = AtomicSystem(std::move(rules));
    fb.map = std::move(map);
    return fb;
  }
};

FlatBase build_flat_base(const Sequent& s, const std::set<std::string>& avoid) {
  return FlatBaseBuilder(s, avoid).finish();
}

namespace {

// build_flat_base is a pure function of (sequent, avoid set); support-heavy
// sweeps (naf over thousands of bases) hit the same few keys, so memoize.
std::shared_ptr<const FlatBase> cached_flat_base(const Sequent& s,
                                                 const std::set<std::string>& avoid) {
  using Key = std::pair<Sequent, std::set<std::string>>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (a.first.conclusion != b.first.conclusion)
        return a.first.conclusion < b.first.conclusion;
      if (a.first.context != b.first.context) return a.first.context < b.first.context;
      return a.second < b.second;
    }
  };
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const FlatBase>, KeyLess> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 4096) cache.clear();
  auto [it, inserted] = cache.try_emplace({s, avoid});
  if (inserted) it->second = std::make_shared<FlatBase>(build_flat_base(s, avoid));
  return it->second;
}

void require_sandqvist_base(const AtomicSystem& base) {
  if (base.level() > 2)
    throw UnsupportedLevel("support is defined over bases of level <= 2, got level " +
                           std::to_string(base.level()));
}

}  // namespace

bool support_in(const FlatBase& fb, const AtomicSystem& base,
                const std::vector<FormulaId>& context, FormulaId goal) {
  require_sandqvist_base(base);
  std::vector<FormulaId> clauses = fb.program.clauses();
  Program encoded_base = encode(base);
  for (FormulaId c : encoded_base.clauses()) clauses.push_back(c);
  for (FormulaId f : context) clauses.push_back(fb.map.flat(f));
  Program query = Program::of(std::move(clauses));
  return solve(query, fb.map.flat(goal)).success;
}

bool support(const AtomicSystem& base, const std::vector<FormulaId>& context,
             FormulaId goal) {
  require_sandqvist_base(base);
  Sequent s = make_sequent(context, goal);
  auto fb = cached_flat_base(s, atoms_of(base));
  return support_in(*fb, base, context, goal);
}

bool valid(const Sequent& s) { return support({}, s.context, s.conclusion); }

namespace {

struct Extractor {
  const FlatMap& fm;
  std::vector<FormulaId> context_flats;  // flat atoms standing for the context
  // Innermost-first stack of loaded flat atoms with their discharge labels.
  std::vector<std::pair<FormulaId, std::string>> loads;
  int next_label = 1;

  [[noreturn]] static void reject(const std::string& msg) { throw NotSimulable(msg); }

  std::string push_load(FormulaId flat_atom) {
    std::string label = std::to_string(next_label++);
    loads.emplace_back(flat_atom, label);
    return label;
  }

  FormulaId unflat(FormulaId a) const {
    auto f = fm.unflat(a);
    if (!f) reject("goal atom " + render(a) + " is not a flat of any scope formula");
    return *f;
  }

  NjDerivation extract(const Trace& t) {
    if (!is_atom(t.goal)) reject("simulation traces prove flat atoms only");
    switch (t.step) {
      case StepKind::In:
        return extract_in(t);
      case StepKind::Clause:
        return extract_clause(t);
      default:
        reject(std::string("unexpected ") + step_name(t.step) + " at an atomic goal");
    }
  }

  NjDerivation extract_in(const Trace& t) {
    FormulaId f = unflat(t.goal);
    for (auto it = loads.rbegin(); it != loads.rend(); ++it)
      if (it->first == t.goal) return nj_assume(f, it->second);
    for (FormulaId cf : context_flats)
      if (cf == t.goal) return nj_assume(f);
    reject("IN on " + render(t.goal) + ", which is neither loaded nor a context flat");
  }

  NjDerivation node(NjRule rule, FormulaId concl, std::vector<NjDerivation> children,
                    std::vector<std::string> labels = {}) {
    NjDerivation d;
    d.rule = rule;
    d.formula = concl;
    d.children = std::move(children);
    d.labels = std::move(labels);
    return d;
  }

  const Trace& expect_step(const Trace& t, StepKind k) {
    if (t.step != k)
      reject(std::string("expected ") + step_name(k) + " inside a clause body, got " +
             step_name(t.step));
    return t;
  }

  NjDerivation extract_clause(const Trace& t) {
    const Scheme* scheme = fm.scheme_of(t.clause);
    if (!scheme)
      reject("clause " + render(t.clause) + " is not a derived-base scheme");
    const Trace& body = t.children.at(0);
    FormulaId f = scheme->principal;
    switch (scheme->kind) {
      case SchemeKind::AndIntro: {
        const Trace& both = expect_step(body, StepKind::And);
        return node(NjRule::AndI, f,
                    {extract(both.children[0]), extract(both.children[1])});
      }
      case SchemeKind::AndElim1:
        return node(NjRule::AndE1, lhs(f), {extract(body)});
      case SchemeKind::AndElim2:
        return node(NjRule::AndE2, rhs(f), {extract(body)});
      case SchemeKind::OrIntro1:
        return node(NjRule::OrI1, f, {extract(body)});
      case SchemeKind::OrIntro2:
        return node(NjRule::OrI2, f, {extract(body)});
      case SchemeKind::ImpIntro: {
        const Trace& load = expect_step(body, StepKind::Load);
        std::string label = push_load(load.loaded);
        NjDerivation sub = extract(load.children[0]);
        loads.pop_back();
        return node(NjRule::ImpI, f, {std::move(sub)}, {label});
      }
      case SchemeKind::ImpElim: {
        const Trace& both = expect_step(body, StepKind::And);
        NjDerivation minor = extract(both.children[0]);
        NjDerivation major = extract(both.children[1]);
        return node(NjRule::ImpE, rhs(f), {std::move(minor), std::move(major)});
      }
      case SchemeKind::FalsumElim:
        return node(NjRule::FalsumE, scheme->minor, {extract(body)});
      case SchemeKind::OrElim: {
        // Body shape: (or-flat) & ((l -> chi) & (r -> chi)).
        const Trace& outer = expect_step(body, StepKind::And);
        NjDerivation major = extract(outer.children[0]);
        const Trace& inner = expect_step(outer.children[1], StepKind::And);
        const Trace& left_load = expect_step(inner.children[0], StepKind::Load);
        std::string left_label = push_load(left_load.loaded);
        NjDerivation left = extract(left_load.children[0]);
        loads.pop_back();
        const Trace& right_load = expect_step(inner.children[1], StepKind::Load);
        std::string right_label = push_load(right_load.loaded);
        NjDerivation right = extract(right_load.children[0]);
        loads.pop_back();
        return node(NjRule::OrE, scheme->minor,
                    {std::move(major), std::move(left), std::move(right)},
                    {left_label, right_label});
      }
    }
    reject("unhandled scheme");
  }
};

}  // namespace

NjDerivation extract_nj(const Trace& t, const FlatMap& fm) {
  Extractor ex{fm, {}, {}, 1};
  for (FormulaId f : fm.scope().context) ex.context_flats.push_back(fm.flat(f));
  return ex.extract(t);
}

std::optional<NjDerivation> derive_sequent(const Sequent& s) {
  auto fb = cached_flat_base(s, {});
  std::vector<FormulaId> clauses = fb->program.clauses();
  for (FormulaId f : s.context) clauses.push_back(fb->map.flat(f));
  Program query = Program::of(std::move(clauses));
  SolveResult res = solve(query, fb->map.flat(s.conclusion));
  if (!res.success) return std::nullopt;
  return extract_nj(*res.trace, fb->map);
}

const char* naf_verdict_name(NafVerdict v) {
  switch (v) {
    case NafVerdict::Supported: return "Supported";
    case NafVerdict::NotSupported: return "NotSupported";
    case NafVerdict::Degenerate: return "Degenerate";
  }
  return "?";
}

bool is_degenerate(const AtomicSystem& base, const std::set<std::string>& alphabet) {
  require_sandqvist_base(base);
  for (const std::string& a : alphabet)
    if (!derive_atomic(base, {}, a)) return false;
  return derive_atomic(base, {}, kAbsurdityAtom);
}

NafVerdict naf(const AtomicSystem& base, FormulaId phi,
               const std::set<std::string>& alphabet) {
  require_sandqvist_base(base);
  if (is_degenerate(base, alphabet)) return NafVerdict::Degenerate;
  return support(base, {}, mk_imp(phi, falsum())) ? NafVerdict::Supported
                                                  : NafVerdict::NotSupported;
}

}  // namespace hhbes
