#include <doctest.h>

#include "strata/errors.hpp"
#include "strata/formula.hpp"
#include "support/gen.hpp"

using namespace strata;

namespace {

int count_atoms(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return 1;
    case FormulaKind::Not: return count_atoms(f.body());
    case FormulaKind::Forall:
    case FormulaKind::Exists: return count_atoms(f.body());
    default: return count_atoms(f.left()) + count_atoms(f.right());
  }
}

int count_quantifiers(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return 0;
    case FormulaKind::Not: return count_quantifiers(f.body());
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 1 + count_quantifiers(f.body());
    default:
      return count_quantifiers(f.left()) + count_quantifiers(f.right());
  }
}

// no name bound twice on a path, no binder reusing a free name
bool renamed_apart(const Formula& f, std::set<std::string>& on_path,
                   const std::set<std::string>& free) {
  switch (f.kind()) {
    case FormulaKind::Atom: return true;
    case FormulaKind::Not: return renamed_apart(f.body(), on_path, free);
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (on_path.count(f.var()) || free.count(f.var())) return false;
      on_path.insert(f.var());
      bool ok = renamed_apart(f.body(), on_path, free);
      on_path.erase(f.var());
      return ok;
    }
    default:
      return renamed_apart(f.left(), on_path, free) &&
             renamed_apart(f.right(), on_path, free);
  }
}

}  // namespace

TEST_CASE("parse: complements-shaped body has the expected free variables") {
  Formula f = parse_formula("forall z. (z mem y <-> ~(z mem x))");
  CHECK(f.kind() == FormulaKind::Forall);
  CHECK(f.body().kind() == FormulaKind::Iff);
  CHECK(free_vars(f) == std::set<std::string>{"x", "y"});
}

TEST_CASE("parse: reflexive membership atom") {
  Formula f = parse_formula("x mem x");
  CHECK(f.kind() == FormulaKind::Atom);
  CHECK(f.rel() == RelSym::Mem);
  CHECK(f.lhs() == "x");
  CHECK(f.rhs() == "x");
}

TEST_CASE("parse: the russell comprehension is closed") {
  Formula f = parse_formula("exists y. forall x. (x mem y <-> ~(x mem x))");
  CHECK(free_vars(f).empty());
  CHECK_NOTHROW(parse_formula_closed(
      "exists y. forall x. (x mem y <-> ~(x mem x))"));
}

TEST_CASE("parse_formula_closed rejects free variables") {
  CHECK_THROWS_AS(parse_formula_closed("x mem y"), ParseError);
}

TEST_CASE("parse: syntax errors carry position and expectations") {
  try {
    parse_formula("forall z (z mem y)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 10);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(parse_formula("x mem"), ParseError);
  CHECK_THROWS_AS(parse_formula("(x mem y"), ParseError);
  CHECK_THROWS_AS(parse_formula("x ? y"), ParseError);
}

TEST_CASE("parse: comments and newlines are whitespace") {
  Formula f = parse_formula("# russell\nexists y.\n  forall x. # binder\n"
                            "  (x mem y <-> ~(x mem x))\n");
  CHECK(free_vars(f).empty());
}

TEST_CASE("print: canonical atoms and negation") {
  CHECK(print_formula(Formula::atom(RelSym::Mem, "x", "y")) == "x mem y");
  CHECK(print_formula(Formula::negation(Formula::atom(RelSym::Eq, "x", "y"))) ==
        "~(x = y)");
  CHECK(print_formula(Formula::atom(RelSym::MemStar, "a", "b")) == "a mem* b");
  CHECK(print_formula(Formula::atom(RelSym::MemPrime, "a", "b")) ==
        "a mem' b");
  CHECK(print_formula(Formula::atom(RelSym::MemF, "a", "b")) == "a memf b");
}

TEST_CASE("print: quantifier bodies and operands get fixed parentheses") {
  Formula f = parse_formula("forall x. (x mem y /\\ y mem z)");
  CHECK(print_formula(f) == "forall x. (x mem y /\\ y mem z)");
  Formula g = parse_formula("(forall x. x mem y) /\\ z mem y");
  CHECK(print_formula(g) == "(forall x. x mem y) /\\ z mem y");
  // a quantifier as the rightmost operand prints bare and reparses the same
  Formula h = parse_formula("z mem y <-> exists w. (z mem w /\\ w mem x)");
  CHECK(print_formula(h) == "z mem y <-> exists w. (z mem w /\\ w mem x)");
  CHECK(parse_formula(print_formula(h)) == h);
}

TEST_CASE("round-trip: parse after print is the identity on generated asts") {
  std::mt19937_64 rng(7);
  std::vector<RelSym> rels{RelSym::Eq, RelSym::Mem, RelSym::MemStar,
                           RelSym::MemPrime, RelSym::MemF};
  for (int i = 0; i < 300; ++i) {
    Formula f = testgen::any_formula(rng, rels, 5);
    CAPTURE(print_formula(f));
    CHECK(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("normalization renames shadowing binders apart") {
  Formula f = parse_formula("forall x. (x mem a /\\ forall x. x mem b)");
  auto free = free_vars(f);
  std::set<std::string> on_path;
  CHECK(renamed_apart(f, on_path, free));
  // the inner binder got a fresh suffix
  CHECK(print_formula(f) == "forall x. (x mem a /\\ forall x_1. x_1 mem b)");
}

TEST_CASE("normalization keeps binders distinct from free occurrences") {
  Formula f = parse_formula("x mem y /\\ forall x. x mem z");
  auto free = free_vars(f);
  CHECK(free.count("x"));
  std::set<std::string> on_path;
  CHECK(renamed_apart(f, on_path, free));
  CHECK(print_formula(f) == "x mem y /\\ forall x_1. x_1 mem z");
}

TEST_CASE("free_vars on quantified and closed formulas") {
  CHECK(free_vars(parse_formula("x mem y")) ==
        std::set<std::string>{"x", "y"});
  CHECK(free_vars(parse_formula("forall x. x mem y")) ==
        std::set<std::string>{"y"});
}

TEST_CASE("recode_translate swaps the membership flavor") {
  Formula f = parse_formula("forall z. (z mem y <-> ~(z mem x))");
  Formula g = recode_translate(f, RelSym::Mem, RelSym::MemPrime);
  CHECK(print_formula(g) == "forall z. (z mem' y <-> ~(z mem' x))");
  CHECK(count_atoms(g) == count_atoms(f));
  CHECK(count_quantifiers(g) == count_quantifiers(f));
}

TEST_CASE("recode_translate guards quantifiers but not atoms") {
  Formula atom = parse_formula("x mem y");
  Formula g = recode_translate(atom, RelSym::Mem, RelSym::MemPrime,
                               std::string("D"));
  CHECK(print_formula(g) == "x mem' y");

  Formula pairing = builtin_axiom(AxiomId::Pairing);
  Formula guarded = recode_translate(pairing, RelSym::Mem, RelSym::MemPrime,
                                     std::string("D"));
  // structural oracle: quantifier count is preserved and each quantifier
  // contributes exactly one extra guard atom
  CHECK(count_quantifiers(guarded) == count_quantifiers(pairing));
  CHECK(count_atoms(guarded) ==
        count_atoms(pairing) + count_quantifiers(pairing));
  // the guard enters as a free variable
  CHECK(free_vars(guarded) == std::set<std::string>{"D"});
}

TEST_CASE("recode_translate rejects foreign flavors and guard capture") {
  Formula f = parse_formula("x mem* y");
  CHECK_THROWS_AS(recode_translate(f, RelSym::Mem, RelSym::MemPrime),
                  TranslateError);
  Formula g = parse_formula("forall d. d mem x");
  CHECK_THROWS_AS(
      recode_translate(g, RelSym::Mem, RelSym::MemPrime, std::string("d")),
      TranslateError);
}

TEST_CASE("builtin axioms are closed and print canonically") {
  const auto& axioms = builtin_axioms();
  REQUIRE(axioms.size() == 5);
  for (const auto& [id, f] : axioms) {
    CAPTURE(axiom_name(id));
    CHECK(free_vars(f).empty());
    CHECK(parse_formula(print_formula(f)) == f);
  }
  CHECK(print_formula(builtin_axiom(AxiomId::Complements)) ==
        "forall x. exists y. forall z. (z mem y <-> ~(z mem x))");
  CHECK(print_formula(builtin_axiom(AxiomId::Pairing)) ==
        "forall a. forall b. exists y. forall z. (z mem y <-> (z = a \\/ z = "
        "b))");
  CHECK(print_formula(builtin_axiom(AxiomId::SetUnion)) ==
        "forall x. exists y. forall z. (z mem y <-> exists w. (z mem w /\\ w "
        "mem x))");
}

TEST_CASE("axiom shape splits the prefix") {
  AxiomShape s = axiom_shape(builtin_axiom(AxiomId::Pairing));
  CHECK(s.universals == std::vector<std::string>{"a", "b"});
  CHECK(s.witness_var == "y");
  AxiomShape pi = axiom_shape(builtin_axiom(AxiomId::IntersectionRelationSet));
  CHECK(pi.universals.empty());
  CHECK(pi.witness_var == "cx");
}

TEST_CASE("axiom names round-trip") {
  for (AxiomId id : kAllAxioms) {
    CHECK(axiom_from_name(axiom_name(id)) == id);
  }
  CHECK(!axiom_from_name("nope").has_value());
}
