#include "hhbes/corpus.hpp"

#include <algorithm>

namespace hhbes {

std::vector<FormulaId> enumerate_formulae(int max_depth,
                                          const std::vector<std::string>& atoms,
                                          Shape shape, bool with_falsum_leaf) {
  std::vector<FormulaId> current;  // all shapes, current depth bound
  for (const std::string& a : atoms) current.push_back(atom(a));
  if (with_falsum_leaf) current.push_back(falsum());
  for (int d = 2; d <= max_depth; ++d) {
    std::vector<FormulaId> next = current;
    for (FormulaId l : current)
      for (FormulaId r : current) {
        next.push_back(mk_and(l, r));
        next.push_back(mk_or(l, r));
        next.push_back(mk_imp(l, r));
      }
    current = canonical_set(std::move(next));
  }
  if (shape == Shape::Any) return canonical_set(std::move(current));
  std::vector<FormulaId> out;
  for (FormulaId f : current)
    if (shape == Shape::Goal ? is_goal(f) : is_definite(f)) out.push_back(f);
  return canonical_set(std::move(out));
}

std::vector<std::vector<FormulaId>> enumerate_subsets(
    const std::vector<FormulaId>& pool, std::size_t max_size) {
  std::vector<std::vector<FormulaId>> out;
  out.push_back({});
  std::size_t begin = 0;
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      auto base = out[i];  // copy: growing `out` invalidates references
      std::size_t start = 0;
      if (!base.empty()) {
        auto it = std::find(pool.begin(), pool.end(), base.back());
        start = static_cast<std::size_t>(it - pool.begin()) + 1;
      }
      for (std::size_t k = start; k < pool.size(); ++k) {
        auto next = base;
        next.push_back(pool[k]);
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

FormulaId random_formula(std::mt19937& rng, int max_depth,
                         const std::vector<std::string>& atoms) {
  std::uniform_int_distribution<int> kind(0, max_depth <= 1 ? 1 : 4);
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
      return atom(atoms[pick(rng)]);
    }
    case 1:
      return std::uniform_int_distribution<int>(0, 5)(rng) == 0
                 ? falsum()
                 : atom(atoms[std::uniform_int_distribution<std::size_t>(
                       0, atoms.size() - 1)(rng)]);
    case 2:
      return mk_and(random_formula(rng, max_depth - 1, atoms),
                    random_formula(rng, max_depth - 1, atoms));
    case 3:
      return mk_or(random_formula(rng, max_depth - 1, atoms),
                   random_formula(rng, max_depth - 1, atoms));
    default:
      return mk_imp(random_formula(rng, max_depth - 1, atoms),
                    random_formula(rng, max_depth - 1, atoms));
  }
}

std::vector<AtomicRule> enumerate_rules(const std::vector<std::string>& atoms,
                                        int max_premises) {
  // Premise alternatives: conclusion atom x hypothesis subset of the atoms.
  std::vector<AtomicRule::Premise> premise_pool;
  std::uint32_t subsets = 1u << atoms.size();
  for (const std::string& c : atoms)
    for (std::uint32_t bits = 0; bits < subsets; ++bits) {
      AtomicRule::Premise p;
      p.conclusion = c;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (bits & (1u << k)) p.hypotheses.push_back(axiom_rule(atoms[k]));
      std::sort(p.hypotheses.begin(), p.hypotheses.end());
      premise_pool.push_back(std::move(p));
    }
  std::sort(premise_pool.begin(), premise_pool.end());

  std::vector<AtomicRule> out;
  // Unordered premise multisets up to max_premises (premise order only
  // matters for the encoding's conjunct order, not for derivability).
  std::vector<std::vector<std::size_t>> picks = {{}};
  std::size_t begin = 0;
  for (int size = 1; size <= max_premises; ++size) {
    std::size_t end = picks.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t k = picks[i].empty() ? 0 : picks[i].back();
           k < premise_pool.size(); ++k) {
        auto next = picks[i];
        next.push_back(k);
        picks.push_back(std::move(next));
      }
    begin = end;
  }
  for (const std::string& c : atoms)
    for (const auto& pick : picks) {
      AtomicRule r;
      r.conclusion = c;
      for (std::size_t k : pick) r.premises.push_back(premise_pool[k]);
      out.push_back(std::move(r));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<AtomicSystem> enumerate_systems(const std::vector<AtomicRule>& rules,
                                            std::size_t max_rules) {
  std::vector<std::vector<std::size_t>> picks = {{}};
  std::size_t begin = 0;
  for (std::size_t size = 1; size <= max_rules; ++size) {
    std::size_t end = picks.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t k = picks[i].empty() ? 0 : picks[i].back() + 1;
           k < rules.size(); ++k) {
        auto next = picks[i];
        next.push_back(k);
        picks.push_back(std::move(next));
      }
    begin = end;
  }
  std::vector<AtomicSystem> out;
  out.reserve(picks.size());
  for (const auto& pick : picks) {
    std::vector<AtomicRule> chosen;
    chosen.reserve(pick.size());
    for (std::size_t k : pick) chosen.push_back(rules[k]);
    out.push_back(AtomicSystem(std::move(chosen)));
  }
  return out;
}

AtomicRule random_rule(std::mt19937& rng, const std::vector<std::string>& atoms) {
  auto pick_atom = [&] {
    return atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)];
  };
  AtomicRule r;
  r.conclusion = pick_atom();
  int premises = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < premises; ++i) {
    AtomicRule::Premise p;
    p.conclusion = pick_atom();
    int hyps = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int h = 0; h < hyps; ++h) {
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
        // An occasional plain first-level rule as hypothesis.
        p.hypotheses.push_back(plain_rule({pick_atom()}, pick_atom()));
      } else {
        p.hypotheses.push_back(axiom_rule(pick_atom()));
      }
    }
    std::sort(p.hypotheses.begin(), p.hypotheses.end());
    p.hypotheses.erase(std::unique(p.hypotheses.begin(), p.hypotheses.end()),
                       p.hypotheses.end());
    r.premises.push_back(std::move(p));
  }
  return r;
}

AtomicSystem random_system(std::mt19937& rng, const std::vector<std::string>& atoms,
                           int max_rules) {
  int count = std::uniform_int_distribution<int>(1, max_rules)(rng);
  std::vector<AtomicRule> rules;
  rules.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) rules.push_back(random_rule(rng, atoms));
  return AtomicSystem(std::move(rules));
}

}  // namespace hhbes
