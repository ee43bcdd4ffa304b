#include <doctest.h>

#include <random>

#include "strata/errors.hpp"
#include "strata/structure.hpp"
#include "support/gen.hpp"

using namespace strata;

namespace {

// two-element membership cycle through a set-valued f
const char* kTwoCycle =
    "domain: a b\n"
    "fset: a -> {b}\n"
    "fset: b -> {a}\n";

MembershipStructure two_cycle() { return MembershipStructure::parse(kTwoCycle); }

}  // namespace

TEST_CASE("load: a two-element set-valued file") {
  MembershipStructure m = two_cycle();
  CHECK(m.size() == 2);
  CHECK(m.f_mode() == FMode::SetValued);
  CHECK(m.f_defined(0));
  CHECK(m.f_defined(1));
  CHECK(mem_f(m, m.index_of("b"), m.index_of("a")));
  CHECK(!mem_f(m, m.index_of("a"), m.index_of("a")));
}

TEST_CASE("load: automorphism violations name the offending pair") {
  const char* text =
      "domain: a b\n"
      "edge: a b\n"
      "j: (a b)\n";
  try {
    MembershipStructure::parse(text);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "automorphism-violation");
  }
}

TEST_CASE("load: a rotation of a 4-cycle is an automorphism") {
  const char* text =
      "domain: a b c d\n"
      "edge: a b\nedge: b c\nedge: c d\nedge: d a\n"
      "j: (a b c d)\n"
      "S: {b}\n";
  MembershipStructure m = MembershipStructure::parse(text);
  CHECK(!m.j_identity());
  // E(a, j^-1(b)) = E(a, a) = false
  CHECK(!mem_star(m, m.index_of("a"), m.index_of("b")));
  // E(d, j^-1(b)) = E(d, a) = true and b is in S
  CHECK(mem_star(m, m.index_of("d"), m.index_of("b")));
  // c is outside S
  CHECK(!mem_star(m, m.index_of("b"), m.index_of("c")));
}

TEST_CASE("load: empty domain is a valid structure") {
  MembershipStructure m = MembershipStructure::parse("domain:\n");
  CHECK(m.size() == 0);
  CHECK(m.extension(0).empty());  // vacuous loops only
}

TEST_CASE("load: dangling ids and duplicate bindings are errors") {
  CHECK_THROWS_AS(MembershipStructure::parse("domain: a\nedge: a z\n"),
                  ValidationError);
  CHECK_THROWS_AS(
      MembershipStructure::parse("domain: a\nf: a -> a\nf: a -> a\n"),
      FormatError);
  CHECK_THROWS_AS(
      MembershipStructure::parse("domain: a b\nedge: a b\nhf: a = {}\n"),
      FormatError);
  CHECK_THROWS_AS(
      MembershipStructure::parse("domain: a b\nf: a -> a\nfset: b -> {}\n"),
      FormatError);
}

TEST_CASE("load: element-valued f must be injective") {
  try {
    MembershipStructure::parse("domain: a b c\nf: a -> c\nf: b -> c\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "injectivity-violation");
  }
  // set-valued duplicates are allowed; extensionality is what fails
  MembershipStructure m = MembershipStructure::parse(
      "domain: a b\nfset: a -> {}\nfset: b -> {}\n");
  CHECK(m.f_mode() == FMode::SetValued);
}

TEST_CASE("mem_f semantics: urelements and the empty set differ") {
  MembershipStructure m = MembershipStructure::parse(
      "domain: a b z\n"
      "fset: a -> {}\n");
  int a = m.index_of("a"), b = m.index_of("b"), z = m.index_of("z");
  CHECK(!mem_f(m, z, a));  // a codes the empty set
  CHECK(!mem_f(m, a, b));  // b is an urelement
  CHECK(!mem_f(m, z, b));
}

TEST_CASE("mem_star needs S; mem_prime needs f at the code side") {
  MembershipStructure no_s = MembershipStructure::parse(
      "domain: a b\nedge: a b\nf: a -> b\n");
  CHECK_THROWS_AS(mem_star(no_s, 0, 1), EvalError);
  CHECK_THROWS_AS(mem_prime(no_s, 0, 1), EvalError);  // f undefined at b
  // with identity j and S, mem_star reduces to E restricted to S
  MembershipStructure m = MembershipStructure::parse(
      "domain: a b\nedge: a b\nS: {b}\n");
  CHECK(mem_star(m, m.index_of("a"), m.index_of("b")));
  CHECK(!mem_star(m, m.index_of("b"), m.index_of("a")));
}

TEST_CASE("mem_prime with identity j is membership through f") {
  MembershipStructure m = MembershipStructure::parse(
      "domain: a b\nedge: a b\nf: a -> b\nf: b -> a\n");
  int a = m.index_of("a"), b = m.index_of("b");
  // ext'(a) = E-ext(f(a)) = E-ext(b) = {a}
  CHECK(mem_prime(m, a, a));
  CHECK(!mem_prime(m, b, a));
}

TEST_CASE("eval: atoms, quantifiers and assignments") {
  MembershipStructure m = two_cycle();
  Formula atom = parse_formula("x memf y");
  CHECK(eval(m, atom, {{"x", m.index_of("a")}, {"y", m.index_of("b")}}));
  CHECK(!eval(m, atom, {{"x", m.index_of("a")}, {"y", m.index_of("a")}}));
  CHECK_THROWS_AS(eval(m, atom, {{"x", 0}}), EvalError);
  Formula closed = parse_formula("forall x. exists y. x memf y");
  CHECK(eval(m, closed));
}

TEST_CASE("eval: complements holds on the two-cycle under memf") {
  MembershipStructure m = two_cycle();
  Formula ax = recode_translate(builtin_axiom(AxiomId::Complements),
                                RelSym::Mem, RelSym::MemF);
  CHECK(eval(m, ax));
  // same verdict through the flavor remap, no rewriting
  CHECK(eval_with_flavor(m, builtin_axiom(AxiomId::Complements), RelSym::MemF));
}

TEST_CASE("check_axiom: complements holds with the swap witnesses") {
  MembershipStructure m = two_cycle();
  AxiomReport r = check_axiom(m, AxiomId::Complements, RelSym::MemF);
  CHECK(r.holds);
  REQUIRE(r.witnesses.size() == 2);
  int a = m.index_of("a"), b = m.index_of("b");
  CHECK(r.witnesses[0] ==
        std::pair<std::vector<int>, int>{{a}, b});
  CHECK(r.witnesses[1] ==
        std::pair<std::vector<int>, int>{{b}, a});
  CHECK(verify_report(m, AxiomId::Complements, r));
}

TEST_CASE("check_axiom: pairing fails on the two-cycle at (a, b)") {
  MembershipStructure m = two_cycle();
  AxiomReport r = check_axiom(m, AxiomId::Pairing, RelSym::MemF);
  CHECK(!r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(*r.counterexample ==
        std::vector<int>{m.index_of("a"), m.index_of("b")});
  CHECK(verify_report(m, AxiomId::Pairing, r));
}

TEST_CASE("check_axiom: set union holds on the one-element loop") {
  MembershipStructure m =
      MembershipStructure::parse("domain: a\nfset: a -> {a}\n");
  AxiomReport r = check_axiom(m, AxiomId::SetUnion, RelSym::MemF);
  CHECK(r.holds);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].second == m.index_of("a"));
}

TEST_CASE("check_axiom: existence fails on the empty domain") {
  MembershipStructure m = MembershipStructure::parse("domain:\n");
  AxiomReport r =
      check_axiom(m, AxiomId::IntersectionRelationSet, RelSym::Mem);
  CHECK(!r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->empty());
  // universally quantified axioms hold vacuously there
  AxiomReport c = check_axiom(m, AxiomId::Complements, RelSym::Mem);
  CHECK(c.holds);
  CHECK(c.witnesses.empty());
}

TEST_CASE("check_extensionality examples") {
  // total injective set-valued f on two elements
  MembershipStructure good = MembershipStructure::parse(
      "domain: a b\nfset: a -> {}\nfset: b -> {a}\n");
  CHECK(check_extensionality(good, RelSym::MemF, ExtScope::All).holds);
  CHECK(check_extensionality(good, RelSym::MemF, ExtScope::SetsOnly).holds);

  // two urelements are co-empty: all-scope fails, sets-only holds
  MembershipStructure urs = MembershipStructure::parse(
      "domain: a u1 u2\nfset: a -> {u1}\n");
  AxiomReport all = check_extensionality(urs, RelSym::MemF, ExtScope::All);
  CHECK(!all.holds);
  REQUIRE(all.counterexample.has_value());
  CHECK(*all.counterexample ==
        std::vector<int>{urs.index_of("u1"), urs.index_of("u2")});
  CHECK(check_extensionality(urs, RelSym::MemF, ExtScope::SetsOnly).holds);

  // non-injective set-valued f: the two empty codes collide
  MembershipStructure dup = MembershipStructure::parse(
      "domain: a b\nfset: a -> {}\nfset: b -> {}\n");
  AxiomReport sets = check_extensionality(dup, RelSym::MemF, ExtScope::SetsOnly);
  CHECK(!sets.holds);
  CHECK(*sets.counterexample ==
        std::vector<int>{dup.index_of("a"), dup.index_of("b")});
}

TEST_CASE("upward and downward sets") {
  // f(a) = b, f(c) = d
  MembershipStructure m = MembershipStructure::parse(
      "domain: a b c d\nf: a -> b\nf: c -> d\n");
  int a = m.index_of("a"), b = m.index_of("b");
  int c = m.index_of("c"), d = m.index_of("d");
  CHECK(upward_set(m, {}).empty());
  PairSet x{make_upair(b, d)};
  CHECK(upward_set(m, x) == PairSet{make_upair(a, c)});
  CHECK(downward_set(m, PairSet{make_upair(a, c)}) == x);
  // pairs with a component outside dom(f) are skipped on the way down
  CHECK(downward_set(m, PairSet{make_upair(a, b)}).empty());

  // identity f: both act as intersection with the dom(f) pairs
  MembershipStructure idm = MembershipStructure::parse(
      "domain: a b\nf: a -> a\nf: b -> b\n");
  PairSet pairs{make_upair(0, 0), make_upair(0, 1)};
  CHECK(upward_set(idm, pairs) == pairs);
  CHECK(downward_set(idm, pairs) == pairs);
}

TEST_CASE("upward/downward are mutually inverse inside the f-square") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 50; ++round) {
    MembershipStructure m = testgen::random_structure(rng, 6);
    // random pair set over the full domain
    PairSet x;
    for (int i = 0; i < 6; ++i) {
      x.insert(make_upair(static_cast<int>(rng() % 6),
                          static_cast<int>(rng() % 6)));
    }
    PairSet image_pairs;
    for (const auto& p : x) {
      if (m.f_inverse(p.a) && m.f_inverse(p.b)) image_pairs.insert(p);
    }
    CHECK(downward_set(m, upward_set(m, x)) == image_pairs);
  }
}

TEST_CASE("lemma recipes equal the direct preimage and image") {
  MembershipStructure m = MembershipStructure::parse(
      "domain: a b c\nf: a -> b\nf: b -> c\n");
  int a = m.index_of("a"), b = m.index_of("b"), c = m.index_of("c");
  CHECK(lemma1_preimage(m, {b}) == std::vector<int>{a});
  CHECK(lemma1_preimage(m, {}).empty());
  CHECK(lemma1_preimage(m, {a}).empty());  // a is outside range(f)
  CHECK(lemma2_image(m, {a}) == std::vector<int>{b});
  CHECK(lemma2_image(m, {}).empty());
  CHECK(lemma2_image(m, {c}).empty());  // c is outside dom(f)
}

TEST_CASE("mem_prime coincides with memf under the extension translation") {
  // identity j, true-membership edges: f_set(x) = { z : E(z, f(x)) }
  MembershipStructure elem = stage_structure(3);
  MembershipStructure::Data data;
  for (const auto& id : elem.ids()) data.ids.push_back(id);
  for (int x = 0; x < elem.size(); ++x) {
    std::vector<std::string> members;
    for (int z : elem.extension(elem.f_at(x))) {
      members.push_back(elem.id_of(z));
    }
    data.f_set.emplace_back(elem.id_of(x), members);
  }
  MembershipStructure setm = MembershipStructure::build(data);
  for (int x = 0; x < elem.size(); ++x) {
    for (int y = 0; y < elem.size(); ++y) {
      CHECK(mem_prime(elem, y, x) == mem_f(setm, y, x));
    }
  }
}

TEST_CASE("structure serialization round-trips") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 20; ++round) {
    MembershipStructure m = testgen::random_structure(rng, 5);
    MembershipStructure re = MembershipStructure::parse(m.to_text());
    REQUIRE(re.size() == m.size());
    for (int u = 0; u < m.size(); ++u) {
      CHECK(re.f_at(u) == m.f_at(u));
      CHECK(re.in_S(u) == m.in_S(u));
      for (int v = 0; v < m.size(); ++v) {
        CHECK(re.edge(u, v) == m.edge(u, v));
      }
    }
  }
  // hf-mode structures serialize through brace notation
  MembershipStructure v3 = stage_structure(3);
  MembershipStructure v3b = MembershipStructure::parse(v3.to_text());
  for (int u = 0; u < v3.size(); ++u) {
    for (int v = 0; v < v3.size(); ++v) {
      CHECK(v3b.edge(u, v) == v3.edge(u, v));
    }
  }
}

TEST_CASE("stage structures expose true membership and identity maps") {
  MembershipStructure m = stage_structure(3);
  CHECK(m.size() == 4);
  CHECK(m.edge_mode() == EdgeMode::Hf);
  int e0 = m.index_of("0"), e1 = m.index_of("1"), e3 = m.index_of("3");
  CHECK(m.edge(e0, e1));   // {} in {{}}
  CHECK(m.edge(e1, e3));   // {{}} in {{},{{}}}
  CHECK(!m.edge(e3, e0));
  CHECK(m.f_at(e1) == e1);
  CHECK(m.in_S(e3));
  // the lower-S variant designates the members of the previous stage
  MembershipStructure lower =
      stage_structure(3, {.s = StageOptions::SChoice::Lower});
  CHECK(lower.in_S(lower.index_of("0")));
  CHECK(lower.in_S(lower.index_of("1")));
  CHECK(!lower.in_S(lower.index_of("2")));
  CHECK(!lower.in_S(lower.index_of("3")));
}

TEST_CASE("code_of finds unique extensions and flags ambiguity") {
  MembershipStructure m = stage_structure(3);
  auto c = m.code_of({m.index_of("0"), m.index_of("1")});
  REQUIRE(c.has_value());
  CHECK(m.id_of(*c) == "3");
  CHECK(!m.code_of({m.index_of("3")}).has_value());  // {V_2} has code 8, rank 3
  MembershipStructure dup = MembershipStructure::parse(
      "domain: a b z\nedge: z a\nedge: z b\n");
  CHECK_THROWS_AS(dup.code_of({dup.index_of("z")}), ValidationError);
}

TEST_CASE("translation coherence: rewriting equals remapping") {
  std::mt19937_64 rng(43);
  std::vector<RelSym> rels{RelSym::Eq, RelSym::Mem};
  for (int round = 0; round < 30; ++round) {
    MembershipStructure m = testgen::random_structure(rng, 4);
    Formula phi = testgen::closed_formula(rng, rels, 3, 2);
    Formula translated = recode_translate(phi, RelSym::Mem, RelSym::MemPrime);
    CHECK(eval(m, translated) == eval_with_flavor(m, phi, RelSym::MemPrime));
  }
}
