#include <doctest.h>

#include <functional>
#include <random>

#include "strata/errors.hpp"
#include "strata/stratify.hpp"
#include "support/gen.hpp"

using namespace strata;

namespace {

// A failure certificate is genuine when its steps chain into a closed walk,
// every step replays its atom's constraint in one of the two directions, and
// the walked weights sum to a nonzero offset.
bool valid_cycle(const Formula& phi, const StratFailure& fail) {
  if (fail.cycle.empty()) return false;
  if (fail.offset() == 0) return false;
  auto atom_text = [](const Formula& a) { return print_formula(a); };
  std::set<std::string> atoms_of_phi;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom: atoms_of_phi.insert(atom_text(f)); break;
      case FormulaKind::Not: collect(f.body()); break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: collect(f.body()); break;
      default:
        collect(f.left());
        collect(f.right());
    }
  };
  collect(phi);
  for (std::size_t i = 0; i < fail.cycle.size(); ++i) {
    const CycleStep& s = fail.cycle[i];
    if (!atoms_of_phi.count(atom_text(s.atom))) return false;
    int w = s.atom.rel() == RelSym::Eq ? 0 : 1;
    bool forward = s.from == s.atom.lhs() && s.to == s.atom.rhs() &&
                   s.weight == w;
    bool backward = s.from == s.atom.rhs() && s.to == s.atom.lhs() &&
                    s.weight == -w;
    if (!forward && !backward) return false;
    const CycleStep& next = fail.cycle[(i + 1) % fail.cycle.size()];
    if (s.to != next.from) return false;
  }
  return true;
}

// independent oracle: brute-force level search over [0,4]
bool brute_force_stratifiable(const Formula& phi) {
  auto vars = all_vars(phi);
  std::vector<std::string> vs(vars.begin(), vars.end());
  if (vs.empty()) return true;
  std::vector<int> levels(vs.size(), 0);
  while (true) {
    Typing t;
    for (std::size_t i = 0; i < vs.size(); ++i) t.levels[vs[i]] = levels[i];
    if (check_typing(phi, t)) return true;
    std::size_t i = vs.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++levels[i] <= 4) {
        done = false;
        break;
      }
      levels[i] = 0;
    }
    if (done) return false;
  }
}

}  // namespace

TEST_CASE("complements body types as z:0, x:1, y:1") {
  Formula f = parse_formula("forall z. (z mem y <-> ~(z mem x))");
  auto res = stratify(f);
  REQUIRE(is_stratified(res));
  Typing t = std::get<Typing>(res);
  CHECK(check_typing(f, t));
  CHECK(t.levels == std::map<std::string, int>{{"x", 1}, {"y", 1}, {"z", 0}});
}

TEST_CASE("x mem x fails with the one-atom cycle") {
  Formula f = parse_formula("x mem x");
  auto res = stratify(f);
  REQUIRE(!is_stratified(res));
  const auto& fail = std::get<StratFailure>(res);
  CHECK(fail.cycle.size() == 1);
  CHECK(fail.offset() == 1);
  CHECK(valid_cycle(f, fail));
}

TEST_CASE("equality forces equal levels") {
  Formula f = parse_formula("x = y");
  auto res = stratify(f);
  REQUIRE(is_stratified(res));
  CHECK(std::get<Typing>(res).levels ==
        std::map<std::string, int>{{"x", 0}, {"y", 0}});
}

TEST_CASE("composition axiom puts pair variables below pairs below relations") {
  const Formula& f = builtin_axiom(AxiomId::UnorderedComposition);
  auto res = stratify(f);
  REQUIRE(is_stratified(res));
  Typing t = std::get<Typing>(res);
  CHECK(check_typing(f, t));
  // pair components one below the pairs, pairs one below the relation sets
  CHECK(t.levels.at("x") == 0);
  CHECK(t.levels.at("y") == 0);
  CHECK(t.levels.at("z") == 0);
  CHECK(t.levels.at("p") == 1);
  CHECK(t.levels.at("p1") == 1);
  CHECK(t.levels.at("p2") == 1);
  CHECK(t.levels.at("r") == 2);
  CHECK(t.levels.at("s") == 2);
  CHECK(t.levels.at("cx") == 2);
}

TEST_CASE("all five builtin axioms stratify; russell does not") {
  for (const auto& [id, f] : builtin_axioms()) {
    CAPTURE(axiom_name(id));
    auto res = stratify(f);
    REQUIRE(is_stratified(res));
    CHECK(check_typing(f, std::get<Typing>(res)));
  }
  Formula russell = parse_formula("x mem y <-> ~(x mem x)");
  auto res = stratify(russell);
  REQUIRE(!is_stratified(res));
  CHECK(valid_cycle(russell, std::get<StratFailure>(res)));
}

TEST_CASE("check_typing examples") {
  Formula body = parse_formula("forall z. (z mem y <-> ~(z mem x))");
  Typing good{{{"z", 0}, {"x", 1}, {"y", 1}}};
  Typing bad{{{"z", 0}, {"x", 0}, {"y", 1}}};
  CHECK(check_typing(body, good));
  CHECK(!check_typing(body, bad));
  Formula eq = parse_formula("x = y");
  Typing shifted{{{"x", 2}, {"y", 2}}};
  CHECK(check_typing(eq, shifted));
  Typing missing{{{"x", 0}}};
  CHECK_THROWS_AS(check_typing(eq, missing), TypingError);
}

TEST_CASE("shift invariance of typings") {
  std::mt19937_64 rng(3);
  std::vector<RelSym> rels{RelSym::Eq, RelSym::Mem};
  int found = 0;
  for (int i = 0; i < 100; ++i) {
    Formula f = testgen::any_formula(rng, rels, 4);
    auto res = stratify(f);
    if (!is_stratified(res)) continue;
    ++found;
    Typing t = std::get<Typing>(res);
    Typing shifted = t;
    for (auto& [v, l] : shifted.levels) l += 3;
    CHECK(check_typing(f, t));
    CHECK(check_typing(f, shifted));
  }
  CHECK(found > 10);
}

TEST_CASE("membership flavors all impose the same constraint") {
  for (RelSym rel : {RelSym::Mem, RelSym::MemStar, RelSym::MemPrime,
                     RelSym::MemF}) {
    Formula f = Formula::atom(rel, "x", "x");
    CHECK(!is_stratified(stratify(f)));
    Formula g = Formula::atom(rel, "x", "y");
    auto res = stratify(g);
    REQUIRE(is_stratified(res));
    CHECK(std::get<Typing>(res).levels.at("y") == 1);
  }
}

TEST_CASE("disjoint components normalize independently") {
  Formula f = parse_formula("x mem y /\\ a mem b");
  auto res = stratify(f);
  REQUIRE(is_stratified(res));
  Typing t = std::get<Typing>(res);
  CHECK(t.levels.at("x") == 0);
  CHECK(t.levels.at("a") == 0);
  CHECK(t.levels.at("y") == 1);
  CHECK(t.levels.at("b") == 1);
}

TEST_CASE("quantified but unused variables get level zero") {
  Formula f = parse_formula("forall q. x mem y");
  auto res = stratify(f);
  REQUIRE(is_stratified(res));
  CHECK(std::get<Typing>(res).levels.at("q") == 0);
}

TEST_CASE("soundness and failure certificates on random formulas") {
  std::mt19937_64 rng(17);
  std::vector<RelSym> rels{RelSym::Eq, RelSym::Mem, RelSym::MemF};
  for (int i = 0; i < 300; ++i) {
    Formula f = testgen::any_formula(rng, rels, 4);
    auto res = stratify(f);
    if (is_stratified(res)) {
      CHECK(check_typing(f, std::get<Typing>(res)));
    } else {
      CAPTURE(print_formula(f));
      CHECK(valid_cycle(f, std::get<StratFailure>(res)));
    }
  }
}

TEST_CASE("agreement with brute-force level search on small formulas") {
  std::mt19937_64 rng(23);
  std::vector<RelSym> rels{RelSym::Eq, RelSym::Mem};
  for (int i = 0; i < 200; ++i) {
    Formula f = testgen::any_formula(rng, rels, 3);
    if (all_vars(f).size() > 4) continue;
    CAPTURE(print_formula(f));
    CHECK(is_stratified(stratify(f)) == brute_force_stratifiable(f));
  }
}

TEST_CASE("recode_translate preserves stratifiability with identical typing") {
  std::mt19937_64 rng(29);
  std::vector<RelSym> rels{RelSym::Eq, RelSym::Mem};
  for (int i = 0; i < 100; ++i) {
    Formula f = testgen::any_formula(rng, rels, 4);
    Formula g = recode_translate(f, RelSym::Mem, RelSym::MemPrime);
    auto rf = stratify(f);
    auto rg = stratify(g);
    CHECK(is_stratified(rf) == is_stratified(rg));
    if (is_stratified(rf)) {
      CHECK(std::get<Typing>(rf).levels == std::get<Typing>(rg).levels);
    }
  }
}
