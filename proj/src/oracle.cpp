#include "hhbes/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <unordered_map>

#include "json.hpp"

namespace hhbes {

OracleOptions default_oracle_options() {
  OracleOptions opts;
  if (const char* env = std::getenv("HHBES_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) opts.budget = v;
  }
  return opts;
}

namespace {

// ---------------------------------------------------------------------------
// Sequent search.
//
// Goal-directed rules, applied backward. Invertible steps run to saturation:
//   right ->, right &, left &, left |, and the left-implication unfoldings
//   for conjunctive, disjunctive, falsum, and already-present atomic
//   antecedents. The only branching choices are right | and the
//   implication-nested-implication left rule; both are tried exhaustively.
// Every step strictly decreases a multiset weight, so the search terminates;
// results depend only on the (set-canonical) sequent, so they are memoized
// globally.
// ---------------------------------------------------------------------------

struct SeqKey {
  std::vector<FormulaId> ctx;  // canonical
  FormulaId goal;
  bool operator==(const SeqKey&) const = default;
};

struct SeqKeyHash {
  std::size_t operator()(const SeqKey& k) const {
    std::size_t h = k.goal * 0x9e3779b97f4a7c15ull;
    for (FormulaId f : k.ctx) h = h * 1099511628211ull + f;
    return h;
  }
};

class SequentProver {
 public:
  explicit SequentProver(long long budget) : budget_(budget) {}

  bool prove(std::vector<FormulaId> ctx, FormulaId goal) {
    if (--budget_ < 0) throw BudgetExceeded("oracle node budget exceeded");
    ctx = canonical_set(std::move(ctx));

    SeqKey key{ctx, goal};
    {
      std::lock_guard<std::mutex> lock(memo_mu());
      auto it = memo().find(key);
      if (it != memo().end()) return it->second;
    }
    bool result = prove_uncached(std::move(ctx), goal);
    {
      std::lock_guard<std::mutex> lock(memo_mu());
      memo().emplace(std::move(key), result);
    }
    return result;
  }

 private:
  static std::unordered_map<SeqKey, bool, SeqKeyHash>& memo() {
    static std::unordered_map<SeqKey, bool, SeqKeyHash> m;
    return m;
  }
  static std::mutex& memo_mu() {
    static std::mutex mu;
    return mu;
  }

  static void erase_at(std::vector<FormulaId>& ctx, std::size_t i) {
    ctx.erase(ctx.begin() + static_cast<std::ptrdiff_t>(i));
  }

  static void add(std::vector<FormulaId>& ctx, FormulaId f) {
    auto it = std::lower_bound(ctx.begin(), ctx.end(), f, struct_less);
    if (it == ctx.end() || *it != f) ctx.insert(it, f);
  }

  bool prove_uncached(std::vector<FormulaId> ctx, FormulaId goal) {
    // Saturation loop over invertible steps.
    for (;;) {
      if (set_contains(ctx, falsum())) return true;
      if (set_contains(ctx, goal)) return true;

      if (tag(goal) == Tag::Imp) {
        add(ctx, lhs(goal));
        goal = rhs(goal);
        continue;
      }
      if (tag(goal) == Tag::And)
        return prove(ctx, lhs(goal)) && prove(ctx, rhs(goal));

      bool changed = false;
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        FormulaId f = ctx[i];
        if (tag(f) == Tag::And) {
          FormulaId l = lhs(f), r = rhs(f);
          erase_at(ctx, i);
          add(ctx, l);
          add(ctx, r);
          changed = true;
          break;
        }
        if (tag(f) == Tag::Imp) {
          FormulaId ant = lhs(f), con = rhs(f);
          if (tag(ant) == Tag::Falsum) {
            erase_at(ctx, i);  // trivially true premise adds nothing
            changed = true;
            break;
          }
          if (tag(ant) == Tag::And) {
            // (A & B) -> C  ~~>  A -> (B -> C)
            erase_at(ctx, i);
            add(ctx, mk_imp(lhs(ant), mk_imp(rhs(ant), con)));
            changed = true;
            break;
          }
          if (tag(ant) == Tag::Or) {
            // (A | B) -> C  ~~>  A -> C, B -> C
            erase_at(ctx, i);
            add(ctx, mk_imp(lhs(ant), con));
            add(ctx, mk_imp(rhs(ant), con));
            changed = true;
            break;
          }
          if (tag(ant) == Tag::Atom && set_contains(ctx, ant)) {
            erase_at(ctx, i);
            add(ctx, con);  // the atom stays in the context
            changed = true;
            break;
          }
        }
      }
      if (changed) continue;

      // Left disjunction is invertible; split before any real branching.
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (tag(ctx[i]) == Tag::Or) {
          FormulaId l = lhs(ctx[i]), r = rhs(ctx[i]);
          std::vector<FormulaId> left = ctx;
          erase_at(left, i);
          std::vector<FormulaId> right = left;
          add(left, l);
          add(right, r);
          return prove(std::move(left), goal) && prove(std::move(right), goal);
        }
      }

      // Branching choices.
      if (tag(goal) == Tag::Or) {
        if (prove(ctx, lhs(goal))) return true;
        if (prove(ctx, rhs(goal))) return true;
      }
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        FormulaId f = ctx[i];
        if (tag(f) != Tag::Imp || tag(lhs(f)) != Tag::Imp) continue;
        // (A -> B) -> C in the context: prove A -> B with B -> C available,
        // then continue with C.
        FormulaId b = rhs(lhs(f)), c = rhs(f);
        std::vector<FormulaId> first = ctx;
        erase_at(first, i);
        std::vector<FormulaId> second = first;
        add(first, mk_imp(b, c));
        add(second, c);
        if (prove(std::move(first), lhs(f)) && prove(std::move(second), goal))
          return true;
      }
      return false;
    }
  }

  long long budget_;
};

// ---------------------------------------------------------------------------
// Kripke countermodels.
//
// Worlds 0..n-1 with world 0 the root; up[w] is the bitmask of worlds >= w.
// Valuations are monotone (upward-closed world sets per atom). Restricting
// the search to rooted posets loses nothing: a sequent failing at world w of
// any model also fails at the root of the submodel above w.
// ---------------------------------------------------------------------------

struct Poset {
  int n = 1;
  std::vector<std::uint32_t> up;  // up[w] includes w
};

std::vector<Poset> rooted_posets(int n) {
  // Root 0 below everything; enumerate partial orders on worlds 1..n-1.
  std::vector<Poset> out;
  int m = n - 1;
  std::vector<int> pairs;  // candidate i<j relations among 1..m
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) pairs.push_back(i * m + j);
  std::uint64_t total = 1ull << pairs.size();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::vector<std::uint32_t> rel(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) rel[static_cast<std::size_t>(i)] |= 1u << i;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (bits & (1ull << k))
        rel[static_cast<std::size_t>(pairs[k] / m)] |= 1u << (pairs[k] % m);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      for (int j = 0; j < m && ok; ++j) {
        if (!(rel[static_cast<std::size_t>(i)] & (1u << j))) continue;
        if (i != j && (rel[static_cast<std::size_t>(j)] & (1u << i))) ok = false;  // antisymmetry
        if (ok && (rel[static_cast<std::size_t>(j)] & ~rel[static_cast<std::size_t>(i)]))
          ok = false;  // transitivity: up[j] must be within up[i]
      }
    if (!ok) continue;
    Poset p;
    p.n = n;
    p.up.assign(static_cast<std::size_t>(n), 0);
    p.up[0] = (n == 32 ? ~0u : (1u << n) - 1u);
    for (int i = 0; i < m; ++i)
      p.up[static_cast<std::size_t>(i + 1)] = rel[static_cast<std::size_t>(i)] << 1;
    out.push_back(std::move(p));
  }
  return out;
}

const std::vector<Poset>& rooted_posets_cached(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Poset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, rooted_posets(n)).first;
  return it->second;
}

std::vector<std::uint32_t> upsets(const Poset& p) {
  std::vector<std::uint32_t> out;
  std::uint32_t all = p.n == 32 ? ~0u : (1u << p.n) - 1u;
  for (std::uint32_t s = 0; s <= all; ++s) {
    bool closed = true;
    for (int w = 0; w < p.n && closed; ++w)
      if ((s & (1u << w)) && (p.up[static_cast<std::size_t>(w)] & ~s)) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

// Worlds forcing f, given per-atom forcing masks.
std::uint32_t forced(FormulaId f, const Poset& p,
                     const std::map<std::string, std::uint32_t>& val) {
  switch (tag(f)) {
    case Tag::Atom: {
      auto it = val.find(atom_name(f));
      return it == val.end() ? 0u : it->second;
    }
    case Tag::Falsum:
      return 0u;
    case Tag::And:
      return forced(lhs(f), p, val) & forced(rhs(f), p, val);
    case Tag::Or:
      return forced(lhs(f), p, val) | forced(rhs(f), p, val);
    case Tag::Imp: {
      std::uint32_t a = forced(lhs(f), p, val);
      std::uint32_t b = forced(rhs(f), p, val);
      std::uint32_t bad = a & ~b;  // worlds where antecedent holds, consequent fails
      std::uint32_t out = 0;
      for (int w = 0; w < p.n; ++w)
        if (!(p.up[static_cast<std::size_t>(w)] & bad)) out |= 1u << w;
      return out;
    }
  }
  return 0u;
}

std::optional<Countermodel> model_from(const Poset& p,
                                       const std::map<std::string, std::uint32_t>& val,
                                       const Sequent& s) {
  std::uint32_t ctx_mask = p.n == 32 ? ~0u : (1u << p.n) - 1u;
  for (FormulaId f : s.context) ctx_mask &= forced(f, p, val);
  std::uint32_t fail_mask = ctx_mask & ~forced(s.conclusion, p, val);
  if (!fail_mask) return std::nullopt;
  Countermodel m;
  m.worlds = p.n;
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (p.up[static_cast<std::size_t>(i)] & (1u << j)) m.le.emplace_back(i, j);
  for (const auto& [name, mask] : val) {
    std::vector<int> worlds;
    for (int w = 0; w < p.n; ++w)
      if (mask & (1u << w)) worlds.push_back(w);
    m.val[name] = std::move(worlds);
  }
  for (int w = 0; w < p.n; ++w)
    if (fail_mask & (1u << w)) {
      m.fails_at = w;
      break;
    }
  return m;
}

}  // namespace

std::optional<Countermodel> find_countermodel(const Sequent& s, int world_bound) {
  std::vector<std::string> atoms = atom_names(s);
  for (int n = 1; n <= world_bound; ++n) {
    for (const Poset& p : rooted_posets_cached(n)) {
      std::vector<std::uint32_t> ups = upsets(p);
      // Odometer over one upset per atom.
      std::vector<std::size_t> pick(atoms.size(), 0);
      for (;;) {
        std::map<std::string, std::uint32_t> val;
        for (std::size_t i = 0; i < atoms.size(); ++i) val[atoms[i]] = ups[pick[i]];
        if (auto m = model_from(p, val, s)) return m;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == ups.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }
  return std::nullopt;
}

bool countermodel_refutes(const Countermodel& m, const Sequent& s) {
  Poset p;
  p.n = m.worlds;
  p.up.assign(static_cast<std::size_t>(m.worlds), 0);
  for (auto [i, j] : m.le) p.up[static_cast<std::size_t>(i)] |= 1u << j;
  std::map<std::string, std::uint32_t> val;
  for (const auto& [name, worlds] : m.val) {
    std::uint32_t mask = 0;
    for (int w : worlds) mask |= 1u << w;
    val[name] = mask;
  }
  for (FormulaId f : s.context)
    if (!(forced(f, p, val) & (1u << m.fails_at))) return false;
  return !(forced(s.conclusion, p, val) & (1u << m.fails_at));
}

Verdict decide(const Sequent& s, const OracleOptions& opts) {
  SequentProver prover(opts.budget);
  std::vector<FormulaId> ctx = s.context;
  if (prover.prove(std::move(ctx), s.conclusion)) return {Status::Provable, {}};
  Verdict v{Status::Refuted, {}};
  if (opts.want_witness) v.witness = find_countermodel(s, opts.world_bound);
  return v;
}

std::string Countermodel::to_json() const {
  nlohmann::json j;
  j["worlds"] = worlds;
  j["le"] = nlohmann::json::array();
  for (auto [i, k] : le) j["le"].push_back({i, k});
  j["val"] = val;
  j["fails_at"] = fails_at;
  return j.dump(2);
}

}  // namespace hhbes
