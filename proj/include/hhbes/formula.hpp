#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hhbes {

// Propositional formulae over named atoms, with falsum and the three
// connectives. Formulae are interned in a process-wide arena; a FormulaId is
// a stable handle, and structurally equal formulae always share one id, so
// id equality is structural equality.

enum class Tag : std::uint8_t { Atom, Falsum, And, Or, Imp };

using FormulaId = std::uint32_t;
inline constexpr FormulaId kNoFormula = 0xffffffffu;

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), pos(position) {}
  std::size_t pos;
};

FormulaId atom(std::string_view name);
FormulaId falsum();
FormulaId mk_and(FormulaId lhs, FormulaId rhs);
FormulaId mk_or(FormulaId lhs, FormulaId rhs);
FormulaId mk_imp(FormulaId lhs, FormulaId rhs);

Tag tag(FormulaId f);
FormulaId lhs(FormulaId f);
FormulaId rhs(FormulaId f);
const std::string& atom_name(FormulaId f);

inline bool is_atom(FormulaId f) { return tag(f) == Tag::Atom; }
inline bool is_falsum(FormulaId f) { return tag(f) == Tag::Falsum; }
// Atoms and falsum together form the "atomic" heads/goals of the engine.
inline bool is_atomic(FormulaId f) { return is_atom(f) || is_falsum(f); }

// Height of the syntax tree; leaves (atoms, falsum) have depth 1.
int depth(FormulaId f);

// Total syntactic order: by tag rank, then atom name, then subterms.
// Independent of interning order, so canonical sorting is run-stable.
std::strong_ordering struct_cmp(FormulaId a, FormulaId b);
inline bool struct_less(FormulaId a, FormulaId b) {
  return struct_cmp(a, b) < 0;
}

// Hereditary Harrop classification. Falsum counts as a nullary atom in both
// grammars (it may head clauses and stand as a goal).
enum class Classification : std::uint8_t { Neither, DefiniteOnly, GoalOnly, Both };
Classification classify(FormulaId f);
bool is_definite(FormulaId f);
bool is_goal(FormulaId f);

std::string render(FormulaId f);

// Concrete syntax:
//   formula := imp
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unit ("&" unit)*
//   unit    := atom | "false" | "~" unit | "(" formula ")"
// "~x" desugars to "x -> false". "->" is right-associative; "|" and "&"
// associate left. User atoms match [a-z][a-zA-Z0-9_']*; atoms starting with
// '#' are reserved for generated flat atoms but are accepted on input so
// emitted program files can be read back.
FormulaId parse_formula(std::string_view text);

struct Sequent {
  std::vector<FormulaId> context;  // canonical: struct_less-sorted, unique
  FormulaId conclusion = kNoFormula;

  bool operator==(const Sequent&) const = default;
};

Sequent make_sequent(std::vector<FormulaId> context, FormulaId conclusion);
// One "ctx |- concl" with ctx comma-separated; empty ctx allowed.
Sequent parse_sequent(std::string_view text);
std::string render(const Sequent& s);

// All subformulae of all formulae in s, including the formulae themselves,
// in canonical order.
std::vector<FormulaId> subformulae(const Sequent& s);
std::vector<FormulaId> subformulae_of(FormulaId f);

void collect_atom_names(FormulaId f, std::vector<std::string>& out);
std::vector<std::string> atom_names(const Sequent& s);

// Sorted-unique set operations on canonical id vectors.
std::vector<FormulaId> canonical_set(std::vector<FormulaId> ids);
bool set_contains(std::span<const FormulaId> set, FormulaId f);
bool set_subseteq(std::span<const FormulaId> a, std::span<const FormulaId> b);
std::vector<FormulaId> set_union(std::span<const FormulaId> a,
                                 std::span<const FormulaId> b);

// Least superset of `clauses` closed under splitting conjunctions.
std::vector<FormulaId> decompose(std::span<const FormulaId> clauses);

// A finite set of definite clauses together with its cached decomposition.
class Program {
 public:
  Program() = default;

  // Canonicalizes and validates that every clause is definite.
  static Program of(std::vector<FormulaId> clauses);

  const std::vector<FormulaId>& clauses() const { return clauses_; }
  const std::vector<FormulaId>& decomposition() const { return decomp_; }

  Program with(FormulaId definite_clause) const;
  bool contains_clause(FormulaId f) const { return set_contains(clauses_, f); }
  bool subseteq(const Program& other) const {
    return set_subseteq(clauses_, other.clauses_);
  }

  bool operator==(const Program& other) const {
    return clauses_ == other.clauses_;
  }
  bool operator<(const Program& other) const { return clauses_ < other.clauses_; }

 private:
  std::vector<FormulaId> clauses_;
  std::vector<FormulaId> decomp_;
};

struct NotDefinite : std::runtime_error {
  explicit NotDefinite(const std::string& what) : std::runtime_error(what) {}
};

// Program text: one definite formula per line; '%'-to-EOL comments and blank
// lines are skipped.
Program parse_program(std::string_view text);
std::string render(const Program& p);

}  // namespace hhbes
