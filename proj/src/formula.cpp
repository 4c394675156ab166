#include "hhbes/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace hhbes {

namespace {

struct Node {
  Tag tag;
  FormulaId lhs = kNoFormula;
  FormulaId rhs = kNoFormula;
  std::string name;
  // Derived, fixed at intern time.
  bool definite = false;
  bool goal = false;
  int depth = 1;
};

struct NodeKey {
  Tag tag;
  FormulaId lhs, rhs;
  std::string name;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = std::hash<std::string>()(k.name);
    h ^= (static_cast<std::size_t>(k.tag) + 0x9e3779b97f4a7c15ull) + (h << 6) + (h >> 2);
    h ^= (static_cast<std::size_t>(k.lhs) + 0x9e3779b97f4a7c15ull) + (h << 6) + (h >> 2);
    h ^= (static_cast<std::size_t>(k.rhs) + 0x9e3779b97f4a7c15ull) + (h << 6) + (h >> 2);
    return h;
  }
};

// Process-wide interner. Mutation is guarded so parallel callers (e.g. the
// python module) stay safe; reads go through snapshots of immutable nodes.
class Arena {
 public:
  static Arena& instance() {
    static Arena arena;
    return arena;
  }

  FormulaId intern(Tag t, FormulaId l, FormulaId r, std::string name) {
    NodeKey key{t, l, r, name};
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    Node n;
    n.tag = t;
    n.lhs = l;
    n.rhs = r;
    n.name = std::move(name);
    switch (t) {
      case Tag::Atom:
      case Tag::Falsum:
        n.definite = true;
        n.goal = true;
        n.depth = 1;
        break;
      case Tag::And:
        n.definite = nodes_[l].definite && nodes_[r].definite;
        n.goal = nodes_[l].goal && nodes_[r].goal;
        n.depth = 1 + std::max(nodes_[l].depth, nodes_[r].depth);
        break;
      case Tag::Or:
        n.definite = false;
        n.goal = nodes_[l].goal && nodes_[r].goal;
        n.depth = 1 + std::max(nodes_[l].depth, nodes_[r].depth);
        break;
      case Tag::Imp:
        n.definite = nodes_[l].goal &&
                     (nodes_[r].tag == Tag::Atom || nodes_[r].tag == Tag::Falsum);
        n.goal = nodes_[l].definite && nodes_[r].goal;
        n.depth = 1 + std::max(nodes_[l].depth, nodes_[r].depth);
        break;
    }
    auto id = static_cast<FormulaId>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(key), id);
    return id;
  }

  const Node& node(FormulaId id) const {
    // Deque storage: references to interned nodes stay valid forever.
    return nodes_[id];
  }

 private:
  Arena() = default;
  mutable std::mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<NodeKey, FormulaId, NodeKeyHash> index_;
};

const Node& node_of(FormulaId f) { return Arena::instance().node(f); }

}  // namespace

FormulaId atom(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return Arena::instance().intern(Tag::Atom, kNoFormula, kNoFormula,
                                  std::string(name));
}

FormulaId falsum() {
  return Arena::instance().intern(Tag::Falsum, kNoFormula, kNoFormula, "");
}

FormulaId mk_and(FormulaId l, FormulaId r) {
  return Arena::instance().intern(Tag::And, l, r, "");
}

FormulaId mk_or(FormulaId l, FormulaId r) {
  return Arena::instance().intern(Tag::Or, l, r, "");
}

FormulaId mk_imp(FormulaId l, FormulaId r) {
  return Arena::instance().intern(Tag::Imp, l, r, "");
}

Tag tag(FormulaId f) { return node_of(f).tag; }
FormulaId lhs(FormulaId f) { return node_of(f).lhs; }
FormulaId rhs(FormulaId f) { return node_of(f).rhs; }
const std::string& atom_name(FormulaId f) { return node_of(f).name; }
int depth(FormulaId f) { return node_of(f).depth; }

std::strong_ordering struct_cmp(FormulaId a, FormulaId b) {
  if (a == b) return std::strong_ordering::equal;
  const Node& na = node_of(a);
  const Node& nb = node_of(b);
  if (na.tag != nb.tag) return na.tag <=> nb.tag;
  switch (na.tag) {
    case Tag::Atom:
      return na.name.compare(nb.name) <=> 0;
    case Tag::Falsum:
      return std::strong_ordering::equal;
    default: {
      auto c = struct_cmp(na.lhs, nb.lhs);
      if (c != 0) return c;
      return struct_cmp(na.rhs, nb.rhs);
    }
  }
}

Classification classify(FormulaId f) {
  const Node& n = node_of(f);
  if (n.definite && n.goal) return Classification::Both;
  if (n.definite) return Classification::DefiniteOnly;
  if (n.goal) return Classification::GoalOnly;
  return Classification::Neither;
}

bool is_definite(FormulaId f) { return node_of(f).definite; }
bool is_goal(FormulaId f) { return node_of(f).goal; }

namespace {

// Precedence: Imp loosest (1), then Or (2), then And (3); units bind tightest.
int precedence(Tag t) {
  switch (t) {
    case Tag::Imp: return 1;
    case Tag::Or: return 2;
    case Tag::And: return 3;
    default: return 4;
  }
}

void render_into(FormulaId f, std::string& out, int parent_prec, bool right_of_imp) {
  const Node& n = node_of(f);
  switch (n.tag) {
    case Tag::Atom:
      out += n.name;
      return;
    case Tag::Falsum:
      out += "false";
      return;
    default:
      break;
  }
  int prec = precedence(n.tag);
  // Imp is right-associative; Or/And associate left, so a right child at the
  // same precedence needs parentheses (and vice versa for Imp's left child).
  bool need_parens = prec < parent_prec ||
                     (prec == parent_prec && !(n.tag == Tag::Imp && right_of_imp));
  if (need_parens) out += '(';
  const char* op = n.tag == Tag::Imp ? " -> " : (n.tag == Tag::Or ? " | " : " & ");
  render_into(n.lhs, out, n.tag == Tag::Imp ? prec + 1 : prec, false);
  out += op;
  render_into(n.rhs, out, prec, n.tag == Tag::Imp);
  if (need_parens) out += ')';
}

}  // namespace

std::string render(FormulaId f) {
  std::string out;
  render_into(f, out, 0, true);
  return out;
}

namespace {

enum class Tok { Atom, False, AndOp, OrOp, ImpOp, Neg, LParen, RParen, Comma, Turnstile, End };

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  std::string ident;
  std::size_t tok_pos = 0;

  explicit Lexer(std::string_view t) : text(t) { advance(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(tok_pos), tok_pos);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos;
      while (pos < text.size() && ident_char(text[pos])) ++pos;
      ident = std::string(text.substr(start, pos - start));
      tok = ident == "false" ? Tok::False : Tok::Atom;
      return;
    }
    if (c == '#') {
      std::size_t start = pos++;
      while (pos < text.size() && ident_char(text[pos])) ++pos;
      if (pos - start == 1) fail("bare '#' is not an atom");
      ident = std::string(text.substr(start, pos - start));
      tok = Tok::Atom;
      return;
    }
    switch (c) {
      case '&': ++pos; tok = Tok::AndOp; return;
      case '|':
        if (pos + 1 < text.size() && text[pos + 1] == '-') {
          pos += 2;
          tok = Tok::Turnstile;
        } else {
          ++pos;
          tok = Tok::OrOp;
        }
        return;
      case '-':
        if (pos + 1 < text.size() && text[pos + 1] == '>') {
          pos += 2;
          tok = Tok::ImpOp;
          return;
        }
        fail("expected '->'");
      case '~': ++pos; tok = Tok::Neg; return;
      case '(': ++pos; tok = Tok::LParen; return;
      case ')': ++pos; tok = Tok::RParen; return;
      case ',': ++pos; tok = Tok::Comma; return;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
};

FormulaId parse_imp(Lexer& lx);

FormulaId parse_unit(Lexer& lx) {
  switch (lx.tok) {
    case Tok::Atom: {
      FormulaId f = atom(lx.ident);
      lx.advance();
      return f;
    }
    case Tok::False:
      lx.advance();
      return falsum();
    case Tok::Neg: {
      lx.advance();
      FormulaId f = parse_unit(lx);
      return mk_imp(f, falsum());
    }
    case Tok::LParen: {
      lx.advance();
      FormulaId f = parse_imp(lx);
      if (lx.tok != Tok::RParen) lx.fail("expected ')'");
      lx.advance();
      return f;
    }
    default:
      lx.fail("expected a formula");
  }
}

FormulaId parse_and(Lexer& lx) {
  FormulaId f = parse_unit(lx);
  while (lx.tok == Tok::AndOp) {
    lx.advance();
    f = mk_and(f, parse_unit(lx));
  }
  return f;
}

FormulaId parse_or(Lexer& lx) {
  FormulaId f = parse_and(lx);
  while (lx.tok == Tok::OrOp) {
    lx.advance();
    f = mk_or(f, parse_and(lx));
  }
  return f;
}

FormulaId parse_imp(Lexer& lx) {
  FormulaId f = parse_or(lx);
  if (lx.tok == Tok::ImpOp) {
    lx.advance();
    return mk_imp(f, parse_imp(lx));
  }
  return f;
}

}  // namespace

FormulaId parse_formula(std::string_view text) {
  Lexer lx(text);
  FormulaId f = parse_imp(lx);
  if (lx.tok != Tok::End) lx.fail("trailing input");
  return f;
}

Sequent make_sequent(std::vector<FormulaId> context, FormulaId conclusion) {
  Sequent s;
  s.context = canonical_set(std::move(context));
  s.conclusion = conclusion;
  return s;
}

Sequent parse_sequent(std::string_view text) {
  Lexer lx(text);
  std::vector<FormulaId> ctx;
  if (lx.tok != Tok::Turnstile) {
    ctx.push_back(parse_imp(lx));
    while (lx.tok == Tok::Comma) {
      lx.advance();
      ctx.push_back(parse_imp(lx));
    }
  }
  if (lx.tok != Tok::Turnstile) lx.fail("expected '|-'");
  lx.advance();
  FormulaId concl = parse_imp(lx);
  if (lx.tok != Tok::End) lx.fail("trailing input");
  return make_sequent(std::move(ctx), concl);
}

std::string render(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.context.size(); ++i) {
    if (i) out += ", ";
    out += render(s.context[i]);
  }
  if (!s.context.empty()) out += ' ';
  out += "|- ";
  out += render(s.conclusion);
  return out;
}

namespace {

void collect_subformulae(FormulaId f, std::vector<FormulaId>& out) {
  out.push_back(f);
  const auto t = tag(f);
  if (t == Tag::And || t == Tag::Or || t == Tag::Imp) {
    collect_subformulae(lhs(f), out);
    collect_subformulae(rhs(f), out);
  }
}

}  // namespace

std::vector<FormulaId> subformulae_of(FormulaId f) {
  std::vector<FormulaId> out;
  collect_subformulae(f, out);
  return canonical_set(std::move(out));
}

std::vector<FormulaId> subformulae(const Sequent& s) {
  std::vector<FormulaId> out;
  for (FormulaId f : s.context) collect_subformulae(f, out);
  collect_subformulae(s.conclusion, out);
  return canonical_set(std::move(out));
}

void collect_atom_names(FormulaId f, std::vector<std::string>& out) {
  switch (tag(f)) {
    case Tag::Atom:
      out.push_back(atom_name(f));
      return;
    case Tag::Falsum:
      return;
    default:
      collect_atom_names(lhs(f), out);
      collect_atom_names(rhs(f), out);
  }
}

std::vector<std::string> atom_names(const Sequent& s) {
  std::vector<std::string> out;
  for (FormulaId f : s.context) collect_atom_names(f, out);
  collect_atom_names(s.conclusion, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FormulaId> canonical_set(std::vector<FormulaId> ids) {
  std::sort(ids.begin(), ids.end(), struct_less);
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool set_contains(std::span<const FormulaId> set, FormulaId f) {
  return std::binary_search(set.begin(), set.end(), f, struct_less);
}

bool set_subseteq(std::span<const FormulaId> a, std::span<const FormulaId> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), struct_less);
}

std::vector<FormulaId> set_union(std::span<const FormulaId> a,
                                 std::span<const FormulaId> b) {
  std::vector<FormulaId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                 struct_less);
  return out;
}

namespace {

void split_conjunctions(FormulaId f, std::vector<FormulaId>& out) {
  out.push_back(f);
  if (tag(f) == Tag::And) {
    split_conjunctions(lhs(f), out);
    split_conjunctions(rhs(f), out);
  }
}

}  // namespace

std::vector<FormulaId> decompose(std::span<const FormulaId> clauses) {
  std::vector<FormulaId> out;
  for (FormulaId c : clauses) split_conjunctions(c, out);
  return canonical_set(std::move(out));
}

Program Program::of(std::vector<FormulaId> clauses) {
  for (FormulaId c : clauses) {
    if (!is_definite(c))
      throw NotDefinite("not a definite formula: " + render(c));
  }
  Program p;
  p.clauses_ = canonical_set(std::move(clauses));
  p.decomp_ = decompose(p.clauses_);
  return p;
}

Program Program::with(FormulaId definite_clause) const {
  if (!is_definite(definite_clause))
    throw NotDefinite("not a definite formula: " + render(definite_clause));
  if (contains_clause(definite_clause)) return *this;
  Program p;
  p.clauses_ = set_union(clauses_, std::span<const FormulaId>(&definite_clause, 1));
  std::vector<FormulaId> extra;
  split_conjunctions(definite_clause, extra);
  p.decomp_ = set_union(decomp_, canonical_set(std::move(extra)));
  return p;
}

Program parse_program(std::string_view text) {
  std::vector<FormulaId> clauses;
  std::size_t line_start = 0;
  std::size_t line_no = 1;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto comment = line.find('%'); comment != std::string_view::npos)
      line = line.substr(0, comment);
    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) {
      try {
        clauses.push_back(parse_formula(line));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                         e.pos);
      }
    }
    line_start = line_end + 1;
    ++line_no;
    if (line_end == text.size()) break;
  }
  return Program::of(std::move(clauses));
}

std::string render(const Program& p) {
  std::string out;
  for (FormulaId c : p.clauses()) {
    out += render(c);
    out += '\n';
  }
  return out;
}

}  // namespace hhbes
