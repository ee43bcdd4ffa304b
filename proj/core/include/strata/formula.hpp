#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace strata {

// Relation symbols of the object language. All membership flavors impose the
// same +1 stratification constraint; they differ only in semantics.
enum class RelSym : std::uint8_t { Eq, Mem, MemStar, MemPrime, MemF };

const char* rel_keyword(RelSym r);
std::optional<RelSym> rel_from_keyword(std::string_view kw);

enum class FormulaKind : std::uint8_t {
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists
};

// Immutable first-order formula over binary atoms `IDENT REL IDENT`.
// Shared subtrees are fine; equality is structural.
class Formula {
 public:
  static Formula atom(RelSym rel, std::string lhs, std::string rhs);
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  FormulaKind kind() const;
  bool is_atom() const { return kind() == FormulaKind::Atom; }
  bool is_quantifier() const {
    return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists;
  }
  bool is_binary() const {
    auto k = kind();
    return k == FormulaKind::And || k == FormulaKind::Or ||
           k == FormulaKind::Implies || k == FormulaKind::Iff;
  }

  RelSym rel() const;               // Atom
  const std::string& lhs() const;   // Atom
  const std::string& rhs() const;   // Atom
  const std::string& var() const;   // Forall / Exists
  const Formula& left() const;      // binary connectives
  const Formula& right() const;     // binary connectives
  const Formula& body() const;      // Not / Forall / Exists

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  struct Node;  // opaque; defined in formula.cpp

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Parses source text (grammar in the README; `#` starts a comment) and
// normalizes the result: bound variables are renamed apart with fresh
// suffixes so no name is bound twice on a path or shared with a free
// occurrence. parse_formula(print_formula(f)) == f whenever f is already
// normalized.
Formula parse_formula(const std::string& text);

// Same, but rejects formulas with free variables.
Formula parse_formula_closed(const std::string& text);

// Canonical text form, fully determined by the AST.
std::string print_formula(const Formula& phi);

std::set<std::string> free_vars(const Formula& phi);
std::set<std::string> all_vars(const Formula& phi);

// Replaces every `from` atom with a `to` atom. With a guard name D every
// quantifier body is relativized to membership in D: forall v. p becomes
// forall v. (v mem D -> p), exists v. p becomes exists v. (v mem D /\ p).
// Guard atoms use the base membership symbol; D enters as a free variable.
// Throws TranslateError if phi contains atoms other than Eq and `from`, or
// if the guard name already occurs in phi.
Formula recode_translate(const Formula& phi, RelSym from, RelSym to,
                         const std::optional<std::string>& domain_guard = {});

enum class AxiomId : std::uint8_t {
  Complements,
  Pairing,
  SetUnion,
  UnorderedComposition,
  IntersectionRelationSet
};

inline constexpr AxiomId kAllAxioms[] = {
    AxiomId::Complements, AxiomId::Pairing, AxiomId::SetUnion,
    AxiomId::UnorderedComposition, AxiomId::IntersectionRelationSet};

// The five built-in axiom bodies as closed pure-`mem` formulas, set-builder
// and pair notation expanded into quantifiers.
const std::vector<std::pair<AxiomId, Formula>>& builtin_axioms();
const Formula& builtin_axiom(AxiomId id);

std::string_view axiom_name(AxiomId id);
std::optional<AxiomId> axiom_from_name(std::string_view name);

// Shape of the builtin axioms: a universal prefix, one existential, and the
// remaining matrix. Throws Error if the formula is not of that shape.
struct AxiomShape {
  std::vector<std::string> universals;
  std::string witness_var;
  Formula matrix;
};
AxiomShape axiom_shape(const Formula& axiom);

}  // namespace strata
