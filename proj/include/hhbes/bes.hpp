#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hhbes/atomic.hpp"
#include "hhbes/engine.hpp"
#include "hhbes/formula.hpp"
#include "hhbes/nj.hpp"

namespace hhbes {

// Base-extension semantics layer: flattening of a sequent's subformulae to
// atoms, the derived base whose rules make each flat atom behave like its
// formula, decidable support/validity through the engine, extraction of
// natural-deduction proofs from engine traces, and negation-as-failure.

// The distinguished atom standing for flattened falsum. It is reserved
// (outside the user atom grammar) and stable across queries, so a base may
// deliberately mention it, e.g. to make two atoms contradictory.
inline constexpr const char* kAbsurdityAtom = "#bot";

enum class SchemeKind : std::uint8_t {
  AndIntro,
  AndElim1,
  AndElim2,
  OrIntro1,
  OrIntro2,
  OrElim,
  ImpIntro,
  ImpElim,
  FalsumElim,
};

struct Scheme {
  SchemeKind kind;
  FormulaId principal = kNoFormula;  // the subformula whose rules these are
  FormulaId minor = kNoFormula;      // OrElim: the chi concluded
};

// Bijection between a sequent's subformulae and their flat atoms. Atoms map
// to themselves, falsum to the reserved absurdity atom, and every other
// subformula to a fresh counter atom "#0", "#1", ... (in canonical
// subformula order, skipping names in the avoid set).
class FlatMap {
 public:
  FormulaId flat(FormulaId f) const;                  // throws if out of scope
  std::optional<FormulaId> unflat(FormulaId a) const; // flat atom -> formula
  bool in_scope(FormulaId f) const;

  const Sequent& scope() const { return scope_; }
  const std::vector<FormulaId>& subformulae() const { return subs_; }
  const std::set<std::string>& avoid() const { return avoid_; }

  // Scheme registry for the clauses of the derived base.
  const Scheme* scheme_of(FormulaId clause) const;

 private:
  friend struct FlatBaseBuilder;
  Sequent scope_;
  std::vector<FormulaId> subs_;
  std::set<std::string> avoid_;
  std::map<FormulaId, FormulaId> forward_;
  std::map<FormulaId, FormulaId> backward_;
  std::map<FormulaId, Scheme> schemes_;
};

// The derived base for a sequent: for every subformula, second-level rules
// making its flat atom obey the introduction and elimination behaviour of
// its main connective, delivered as an encoded program.
struct FlatBase {
  Program program;
  AtomicSystem rules;
  FlatMap map;
};

FlatBase build_flat_base(const Sequent& s, const std::set<std::string>& avoid);

// Support of goal under context over a base (level <= 2): builds the derived
// base for (context |- goal), avoiding the base's atoms, and runs the engine
// on  derived-base  u  encoded-base  u  flattened-context  |-  flat(goal).
bool support(const AtomicSystem& base, const std::vector<FormulaId>& context,
             FormulaId goal);

// Same, against a caller-supplied derived base (context and goal must lie in
// its scope). This is how a base that deliberately mentions flat atoms of an
// existing derived base is queried.
bool support_in(const FlatBase& fb, const AtomicSystem& base,
                const std::vector<FormulaId>& context, FormulaId goal);

// Validity: support over the empty base.
bool valid(const Sequent& s);

struct NotSimulable : std::runtime_error {
  explicit NotSimulable(const std::string& what) : std::runtime_error(what) {}
};

// Turns a successful engine trace over  derived-base u flattened-context
// into a natural-deduction derivation of the unflattened goal from the
// scope's context. Traces that use clauses from anywhere else are rejected.
NjDerivation extract_nj(const Trace& t, const FlatMap& fm);

// Convenience pipeline: solve the flattened query for s and extract.
// Returns nothing when the query has no successful execution.
std::optional<NjDerivation> derive_sequent(const Sequent& s);

enum class NafVerdict : std::uint8_t { Supported, NotSupported, Degenerate };
const char* naf_verdict_name(NafVerdict v);

// True iff the base derives every alphabet atom and the absurdity atom (the
// stand-in for "any atom whatsoever").
bool is_degenerate(const AtomicSystem& base, const std::set<std::string>& alphabet);

// Negation-as-failure: Degenerate bases are reported as such; otherwise the
// negation of phi (phi -> false) is Supported iff support says so.
NafVerdict naf(const AtomicSystem& base, FormulaId phi,
               const std::set<std::string>& alphabet);

}  // namespace hhbes
