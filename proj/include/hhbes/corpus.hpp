#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hhbes/atomic.hpp"
#include "hhbes/formula.hpp"

namespace hhbes {

// Small-scope corpus builders shared by the acceptance suite and the
// property tests. Everything here is deterministic: enumerations are in
// construction order and random pieces take an explicit engine.

enum class Shape : std::uint8_t { Any, Goal, Definite };

// All formulae of the given shape up to `max_depth` (leaves have depth 1)
// whose leaves are the given atoms, plus falsum when `with_falsum_leaf`.
std::vector<FormulaId> enumerate_formulae(int max_depth,
                                          const std::vector<std::string>& atoms,
                                          Shape shape, bool with_falsum_leaf);

// All subsets of `pool` with at most `max_size` elements.
std::vector<std::vector<FormulaId>> enumerate_subsets(
    const std::vector<FormulaId>& pool, std::size_t max_size);

FormulaId random_formula(std::mt19937& rng, int max_depth,
                         const std::vector<std::string>& atoms);

// All level <= 2 rules over the given atoms with at most `max_premises`
// premises, hypothesis sets drawn from subsets of the atoms (axioms count).
std::vector<AtomicRule> enumerate_rules(const std::vector<std::string>& atoms,
                                        int max_premises);

// All systems assembled from at most `max_rules` of the given rules.
std::vector<AtomicSystem> enumerate_systems(const std::vector<AtomicRule>& rules,
                                            std::size_t max_rules);

AtomicRule random_rule(std::mt19937& rng, const std::vector<std::string>& atoms);
AtomicSystem random_system(std::mt19937& rng, const std::vector<std::string>& atoms,
                           int max_rules);

}  // namespace hhbes
