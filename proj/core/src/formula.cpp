#include "strata/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "strata/errors.hpp"

namespace strata {

const char* rel_keyword(RelSym r) {
  switch (r) {
    case RelSym::Eq: return "=";
    case RelSym::Mem: return "mem";
    case RelSym::MemStar: return "mem*";
    case RelSym::MemPrime: return "mem'";
    case RelSym::MemF: return "memf";
  }
  return "?";
}

std::optional<RelSym> rel_from_keyword(std::string_view kw) {
  if (kw == "=") return RelSym::Eq;
  if (kw == "mem") return RelSym::Mem;
  if (kw == "mem*") return RelSym::MemStar;
  if (kw == "mem'") return RelSym::MemPrime;
  if (kw == "memf") return RelSym::MemF;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// node storage

struct Formula::Node {
  FormulaKind kind;
  RelSym rel{RelSym::Eq};
  std::string a, b;            // atom arguments, or quantified variable in `a`
  std::vector<Formula> kids;   // 1 for Not/quantifiers, 2 for binary
};

Formula Formula::atom(RelSym rel, std::string lhs, std::string rhs) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->rel = rel;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->kids.push_back(std::move(f));
  return Formula(std::move(n));
}

namespace {
std::shared_ptr<Formula::Node> binary_node(FormulaKind k, Formula l,
                                           Formula r);
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(binary_node(FormulaKind::And, std::move(l), std::move(r)));
}
Formula Formula::disj(Formula l, Formula r) {
  return Formula(binary_node(FormulaKind::Or, std::move(l), std::move(r)));
}
Formula Formula::implies(Formula l, Formula r) {
  return Formula(binary_node(FormulaKind::Implies, std::move(l), std::move(r)));
}
Formula Formula::iff(Formula l, Formula r) {
  return Formula(binary_node(FormulaKind::Iff, std::move(l), std::move(r)));
}

namespace {
std::shared_ptr<Formula::Node> binary_node(FormulaKind k, Formula l,
                                           Formula r) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = k;
  n->kids.push_back(std::move(l));
  n->kids.push_back(std::move(r));
  return n;
}
}  // namespace

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Forall;
  n->a = std::move(var);
  n->kids.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Exists;
  n->a = std::move(var);
  n->kids.push_back(std::move(body));
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
RelSym Formula::rel() const { return node_->rel; }
const std::string& Formula::lhs() const { return node_->a; }
const std::string& Formula::rhs() const { return node_->b; }
const std::string& Formula::var() const { return node_->a; }
const Formula& Formula::left() const { return node_->kids[0]; }
const Formula& Formula::right() const { return node_->kids[1]; }
const Formula& Formula::body() const { return node_->kids[0]; }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case FormulaKind::Atom:
      return node_->rel == o.node_->rel && node_->a == o.node_->a &&
             node_->b == o.node_->b;
    case FormulaKind::Not:
      return body() == o.body();
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return node_->a == o.node_->a && body() == o.body();
    default:
      return left() == o.left() && right() == o.right();
  }
}

// ---------------------------------------------------------------------------
// variable sets

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (!bound.count(f.lhs())) out.insert(f.lhs());
      if (!bound.count(f.rhs())) out.insert(f.rhs());
      break;
    case FormulaKind::Not:
      free_vars_rec(f.body(), bound, out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool was = bound.count(f.var()) > 0;
      bound.insert(f.var());
      free_vars_rec(f.body(), bound, out);
      if (!was) bound.erase(f.var());
      break;
    }
    default:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
  }
}

void all_vars_rec(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out.insert(f.lhs());
      out.insert(f.rhs());
      break;
    case FormulaKind::Not:
      all_vars_rec(f.body(), out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out.insert(f.var());
      all_vars_rec(f.body(), out);
      break;
    default:
      all_vars_rec(f.left(), out);
      all_vars_rec(f.right(), out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& phi) {
  std::set<std::string> bound, out;
  free_vars_rec(phi, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& phi) {
  std::set<std::string> out;
  all_vars_rec(phi, out);
  return out;
}

// ---------------------------------------------------------------------------
// printing
//
// Canonical form: `~` always parenthesizes its operand; binary operands are
// parenthesized when they are themselves binary, and a quantifier operand is
// parenthesized only on the left (on the right its scope already runs to the
// end); quantifier bodies are parenthesized when binary.

namespace {

const char* op_text(FormulaKind k) {
  switch (k) {
    case FormulaKind::And: return "/\\";
    case FormulaKind::Or: return "\\/";
    case FormulaKind::Implies: return "->";
    case FormulaKind::Iff: return "<->";
    default: return "?";
  }
}

void print_rec(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool left_side, std::string& out) {
  bool parens = f.is_binary() || (left_side && f.is_quantifier());
  if (parens) out += '(';
  print_rec(f, out);
  if (parens) out += ')';
}

void print_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.lhs();
      out += ' ';
      out += rel_keyword(f.rel());
      out += ' ';
      out += f.rhs();
      break;
    case FormulaKind::Not:
      out += "~(";
      print_rec(f.body(), out);
      out += ')';
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      out += (f.kind() == FormulaKind::Forall) ? "forall " : "exists ";
      out += f.var();
      out += ". ";
      bool parens = f.body().is_binary();
      if (parens) out += '(';
      print_rec(f.body(), out);
      if (parens) out += ')';
      break;
    }
    default:
      print_operand(f.left(), true, out);
      out += ' ';
      out += op_text(f.kind());
      out += ' ';
      print_operand(f.right(), false, out);
  }
}

}  // namespace

std::string print_formula(const Formula& phi) {
  std::string out;
  print_rec(phi, out);
  return out;
}

// ---------------------------------------------------------------------------
// lexer

namespace {

enum class Tok : std::uint8_t {
  Ident,
  Rel,      // mem mem* mem' memf =
  Forall,
  Exists,
  Dot,
  Tilde,
  LParen,
  RParen,
  AndOp,
  OrOp,
  ImpOp,
  IffOp,
  End
};

struct Token {
  Tok type;
  std::string text;
  int line, col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Rel: return "relation symbol";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Dot: return "'.'";
    case Tok::Tilde: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::AndOp: return "'/\\'";
    case Tok::OrOp: return "'\\/'";
    case Tok::ImpOp: return "'->'";
    case Tok::IffOp: return "'<->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.type = Tok::End;
      tok_.text.clear();
      return;
    }
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_'))
        bump();
      std::string word = s_.substr(start, pos_ - start);
      if (word == "forall") {
        tok_ = {Tok::Forall, word, tok_.line, tok_.col};
      } else if (word == "exists") {
        tok_ = {Tok::Exists, word, tok_.line, tok_.col};
      } else if (word == "mem") {
        // mem, mem* and mem': the suffix must be adjacent
        if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '\'')) {
          word += s_[pos_];
          bump();
        }
        tok_ = {Tok::Rel, word, tok_.line, tok_.col};
      } else if (word == "memf") {
        tok_ = {Tok::Rel, word, tok_.line, tok_.col};
      } else {
        tok_ = {Tok::Ident, word, tok_.line, tok_.col};
      }
      return;
    }
    switch (c) {
      case '=': bump(); tok_ = {Tok::Rel, "=", tok_.line, tok_.col}; return;
      case '.': bump(); tok_ = {Tok::Dot, ".", tok_.line, tok_.col}; return;
      case '~': bump(); tok_ = {Tok::Tilde, "~", tok_.line, tok_.col}; return;
      case '(': bump(); tok_ = {Tok::LParen, "(", tok_.line, tok_.col}; return;
      case ')': bump(); tok_ = {Tok::RParen, ")", tok_.line, tok_.col}; return;
      case '/':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\\') {
          bump(); bump();
          tok_ = {Tok::AndOp, "/\\", tok_.line, tok_.col};
          return;
        }
        break;
      case '\\':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
          bump(); bump();
          tok_ = {Tok::OrOp, "\\/", tok_.line, tok_.col};
          return;
        }
        break;
      case '-':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          bump(); bump();
          tok_ = {Tok::ImpOp, "->", tok_.line, tok_.col};
          return;
        }
        break;
      case '<':
        if (pos_ + 2 < s_.size() && s_[pos_ + 1] == '-' && s_[pos_ + 2] == '>') {
          bump(); bump(); bump();
          tok_ = {Tok::IffOp, "<->", tok_.line, tok_.col};
          return;
        }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_,
                     col_);
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------------------
// parser
//
// formula := iff (quantifiers are allowed wherever a unary operand is; a
// quantifier body extends as far to the right as the grammar permits)

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Formula parse() {
    Formula f = parse_iff();
    if (lex_.peek().type != Tok::End) {
      fail({"'/\\'", "'\\/'", "'->'", "'<->'", "end of input"});
    }
    return f;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = lex_.peek();
    std::string msg = "syntax error: unexpected ";
    msg += (t.type == Tok::End) ? "end of input" : "'" + t.text + "'";
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
        msg += expected[i];
      }
    }
    throw ParseError(msg, t.line, t.col, std::move(expected));
  }

  Token expect(Tok type) {
    if (lex_.peek().type != type) fail({tok_name(type)});
    return lex_.take();
  }

  Formula parse_iff() {
    std::vector<Formula> parts;
    parts.push_back(parse_imp());
    while (lex_.peek().type == Tok::IffOp) {
      lex_.take();
      parts.push_back(parse_imp());
    }
    return fold_right(std::move(parts), FormulaKind::Iff);
  }

  Formula parse_imp() {
    std::vector<Formula> parts;
    parts.push_back(parse_or());
    while (lex_.peek().type == Tok::ImpOp) {
      lex_.take();
      parts.push_back(parse_or());
    }
    return fold_right(std::move(parts), FormulaKind::Implies);
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lex_.peek().type == Tok::OrOp) {
      lex_.take();
      f = Formula::disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (lex_.peek().type == Tok::AndOp) {
      lex_.take();
      f = Formula::conj(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (lex_.peek().type) {
      case Tok::Tilde:
        lex_.take();
        return Formula::negation(parse_unary());
      case Tok::LParen: {
        lex_.take();
        Formula f = parse_iff();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Forall:
      case Tok::Exists: {
        bool universal = lex_.take().type == Tok::Forall;
        Token v = expect(Tok::Ident);
        expect(Tok::Dot);
        Formula body = parse_iff();
        return universal ? Formula::forall(v.text, std::move(body))
                         : Formula::exists(v.text, std::move(body));
      }
      case Tok::Ident: {
        Token l = lex_.take();
        if (lex_.peek().type != Tok::Rel) fail({"relation symbol"});
        Token r = lex_.take();
        Token rr = expect(Tok::Ident);
        return Formula::atom(*rel_from_keyword(r.text), l.text, rr.text);
      }
      default:
        fail({"'~'", "'('", "'forall'", "'exists'", "identifier"});
    }
  }

  static Formula fold_right(std::vector<Formula> parts, FormulaKind k) {
    Formula acc = std::move(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) {
      acc = (k == FormulaKind::Iff)
                ? Formula::iff(std::move(parts[i]), std::move(acc))
                : Formula::implies(std::move(parts[i]), std::move(acc));
    }
    return acc;
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// normalization: rename bound variables apart

struct Renamer {
  std::set<std::string> used;       // names a binder may not take
  std::set<std::string> everything; // every name occurring in the raw formula
  std::map<std::string, std::vector<std::string>> env;

  std::string resolve(const std::string& v) const {
    auto it = env.find(v);
    if (it == env.end() || it->second.empty()) return v;
    return it->second.back();
  }

  std::string fresh(const std::string& base) {
    for (int k = 1;; ++k) {
      std::string cand = base + "_" + std::to_string(k);
      if (!used.count(cand) && !everything.count(cand)) return cand;
    }
  }

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom:
        return Formula::atom(f.rel(), resolve(f.lhs()), resolve(f.rhs()));
      case FormulaKind::Not:
        return Formula::negation(walk(f.body()));
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::string name = f.var();
        if (used.count(name)) name = fresh(f.var());
        used.insert(name);
        env[f.var()].push_back(name);
        Formula body = walk(f.body());
        env[f.var()].pop_back();
        return (f.kind() == FormulaKind::Forall)
                   ? Formula::forall(name, std::move(body))
                   : Formula::exists(name, std::move(body));
      }
      case FormulaKind::And:
        return Formula::conj(walk(f.left()), walk(f.right()));
      case FormulaKind::Or:
        return Formula::disj(walk(f.left()), walk(f.right()));
      case FormulaKind::Implies:
        return Formula::implies(walk(f.left()), walk(f.right()));
      default:
        return Formula::iff(walk(f.left()), walk(f.right()));
    }
  }
};

Formula rename_apart(const Formula& f) {
  Renamer r;
  r.used = free_vars(f);
  r.everything = all_vars(f);
  return r.walk(f);
}

}  // namespace

Formula parse_formula(const std::string& text) {
  Parser p(text);
  return rename_apart(p.parse());
}

Formula parse_formula_closed(const std::string& text) {
  Formula f = parse_formula(text);
  auto fv = free_vars(f);
  if (!fv.empty()) {
    std::string names;
    for (const auto& v : fv) {
      if (!names.empty()) names += ", ";
      names += v;
    }
    throw ParseError("unbound variable(s) in closed context: " + names, 1, 1);
  }
  return f;
}

// ---------------------------------------------------------------------------
// recoding translation

namespace {

Formula recode_rec(const Formula& f, RelSym from, RelSym to,
                   const std::optional<std::string>& guard) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (f.rel() == from) return Formula::atom(to, f.lhs(), f.rhs());
      if (f.rel() == RelSym::Eq) return f;
      throw TranslateError(std::string("formula contains a '") +
                           rel_keyword(f.rel()) +
                           "' atom; only '=' and the source relation are "
                           "allowed");
    }
    case FormulaKind::Not:
      return Formula::negation(recode_rec(f.body(), from, to, guard));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Formula body = recode_rec(f.body(), from, to, guard);
      if (guard) {
        Formula g = Formula::atom(RelSym::Mem, f.var(), *guard);
        body = (f.kind() == FormulaKind::Forall)
                   ? Formula::implies(std::move(g), std::move(body))
                   : Formula::conj(std::move(g), std::move(body));
      }
      return (f.kind() == FormulaKind::Forall)
                 ? Formula::forall(f.var(), std::move(body))
                 : Formula::exists(f.var(), std::move(body));
    }
    case FormulaKind::And:
      return Formula::conj(recode_rec(f.left(), from, to, guard),
                           recode_rec(f.right(), from, to, guard));
    case FormulaKind::Or:
      return Formula::disj(recode_rec(f.left(), from, to, guard),
                           recode_rec(f.right(), from, to, guard));
    case FormulaKind::Implies:
      return Formula::implies(recode_rec(f.left(), from, to, guard),
                              recode_rec(f.right(), from, to, guard));
    default:
      return Formula::iff(recode_rec(f.left(), from, to, guard),
                          recode_rec(f.right(), from, to, guard));
  }
}

}  // namespace

Formula recode_translate(const Formula& phi, RelSym from, RelSym to,
                         const std::optional<std::string>& domain_guard) {
  if (domain_guard && all_vars(phi).count(*domain_guard)) {
    throw TranslateError("guard name '" + *domain_guard +
                         "' already occurs in the formula");
  }
  return recode_rec(phi, from, to, domain_guard);
}

// ---------------------------------------------------------------------------
// built-in axioms

namespace {

using F = Formula;

Formula mem(const char* a, const char* b) {
  return F::atom(RelSym::Mem, a, b);
}
Formula eq(const char* a, const char* b) { return F::atom(RelSym::Eq, a, b); }

// exists p. (p mem c /\ forall w. (w mem p <-> (w = x \/ w = y)))
// "the unordered pair {x,y} belongs to c", expanded.
Formula pair_in(const char* x, const char* y, const char* c, const char* p,
                const char* w) {
  return F::exists(
      p, F::conj(mem(p, c),
                 F::forall(w, F::iff(mem(w, p),
                                     F::disj(eq(w, x), eq(w, y))))));
}

Formula build_complements() {
  return F::forall(
      "x", F::exists(
               "y", F::forall("z", F::iff(mem("z", "y"),
                                          F::negation(mem("z", "x"))))));
}

Formula build_pairing() {
  return F::forall(
      "a",
      F::forall(
          "b",
          F::exists("y", F::forall("z", F::iff(mem("z", "y"),
                                               F::disj(eq("z", "a"),
                                                       eq("z", "b")))))));
}

Formula build_set_union() {
  return F::forall(
      "x",
      F::exists(
          "y",
          F::forall(
              "z",
              F::iff(mem("z", "y"),
                     F::exists("w", F::conj(mem("z", "w"), mem("w", "x")))))));
}

Formula build_u_composition() {
  // every member of cx is the pair {x,z} of a composable chain through r, s
  Formula chain =
      F::exists("y", F::conj(pair_in("x", "y", "r", "p1", "w1"),
                             pair_in("y", "z", "s", "p2", "w2")));
  Formula is_pair = F::forall(
      "w", F::iff(mem("w", "p"), F::disj(eq("w", "x"), eq("w", "z"))));
  Formula rhs =
      F::exists("x", F::exists("z", F::conj(std::move(is_pair),
                                            std::move(chain))));
  return F::forall(
      "r",
      F::forall("s", F::exists("cx", F::forall("p", F::iff(mem("p", "cx"),
                                                           std::move(rhs))))));
}

Formula build_u_intersection() {
  // cx holds exactly the unordered pairs of intersecting sets.
  Formula is_pair = F::forall(
      "w", F::iff(mem("w", "p"), F::disj(eq("w", "x"), eq("w", "y"))));
  Formula meets = F::exists("u", F::conj(mem("u", "x"), mem("u", "y")));
  Formula rhs = F::exists(
      "x", F::exists("y", F::conj(std::move(is_pair), std::move(meets))));
  return F::exists("cx",
                   F::forall("p", F::iff(mem("p", "cx"), std::move(rhs))));
}

}  // namespace

const std::vector<std::pair<AxiomId, Formula>>& builtin_axioms() {
  static const std::vector<std::pair<AxiomId, Formula>> axioms = {
      {AxiomId::Complements, build_complements()},
      {AxiomId::Pairing, build_pairing()},
      {AxiomId::SetUnion, build_set_union()},
      {AxiomId::UnorderedComposition, build_u_composition()},
      {AxiomId::IntersectionRelationSet, build_u_intersection()},
  };
  return axioms;
}

const Formula& builtin_axiom(AxiomId id) {
  for (const auto& [aid, f] : builtin_axioms()) {
    if (aid == id) return f;
  }
  throw Error("unknown axiom id");
}

std::string_view axiom_name(AxiomId id) {
  switch (id) {
    case AxiomId::Complements: return "complements";
    case AxiomId::Pairing: return "pairing";
    case AxiomId::SetUnion: return "set_union";
    case AxiomId::UnorderedComposition: return "u_composition";
    case AxiomId::IntersectionRelationSet: return "u_intersection";
  }
  return "?";
}

std::optional<AxiomId> axiom_from_name(std::string_view name) {
  for (AxiomId id : kAllAxioms) {
    if (axiom_name(id) == name) return id;
  }
  return std::nullopt;
}

AxiomShape axiom_shape(const Formula& axiom) {
  AxiomShape shape{.universals = {}, .witness_var = "", .matrix = axiom};
  Formula cur = axiom;
  while (cur.kind() == FormulaKind::Forall) {
    shape.universals.push_back(cur.var());
    cur = cur.body();
  }
  if (cur.kind() != FormulaKind::Exists) {
    throw Error("axiom is not of forall* exists shape: " +
                print_formula(axiom));
  }
  shape.witness_var = cur.var();
  shape.matrix = cur.body();
  return shape;
}

}  // namespace strata
