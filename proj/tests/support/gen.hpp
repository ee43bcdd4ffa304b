#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "strata/formula.hpp"
#include "strata/structure.hpp"

namespace strata::testgen {

// Random closed formula: a quantifier prefix over fresh variables, then a
// connective tree whose atoms use the in-scope variables. Binder names are
// unique by construction, so the result is already normalized.
inline Formula closed_formula(std::mt19937_64& rng,
                              const std::vector<RelSym>& rels,
                              int max_depth = 4, int quantifiers = 3) {
  std::vector<std::string> scope;
  int counter = 0;
  auto fresh = [&] {
    return "q" + std::to_string(counter++);
  };
  auto pick_var = [&]() -> std::string {
    return scope[rng() % scope.size()];
  };
  auto pick_rel = [&] { return rels[rng() % rels.size()]; };

  std::function<Formula(int)> body = [&](int depth) -> Formula {
    if (depth <= 0 || rng() % 4 == 0) {
      return Formula::atom(pick_rel(), pick_var(), pick_var());
    }
    switch (rng() % 6) {
      case 0:
        return Formula::negation(body(depth - 1));
      case 1:
        return Formula::conj(body(depth - 1), body(depth - 1));
      case 2:
        return Formula::disj(body(depth - 1), body(depth - 1));
      case 3:
        return Formula::implies(body(depth - 1), body(depth - 1));
      case 4:
        return Formula::iff(body(depth - 1), body(depth - 1));
      default: {
        std::string v = fresh();
        scope.push_back(v);
        Formula inner = body(depth - 1);
        scope.pop_back();
        return (rng() % 2) ? Formula::forall(v, std::move(inner))
                           : Formula::exists(v, std::move(inner));
      }
    }
  };

  // outer prefix guarantees a nonempty scope
  std::vector<std::pair<bool, std::string>> prefix;
  int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(quantifiers));
  for (int i = 0; i < k; ++i) {
    std::string v = fresh();
    prefix.emplace_back(rng() % 2 == 0, v);
    scope.push_back(v);
  }
  Formula f = body(max_depth);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    f = it->first ? Formula::forall(it->second, std::move(f))
                  : Formula::exists(it->second, std::move(f));
  }
  return f;
}

// Random arbitrary (possibly open) normalized formula over a fixed free-var
// pool; used for round-trip and stratification properties.
inline Formula any_formula(std::mt19937_64& rng,
                           const std::vector<RelSym>& rels,
                           int max_depth = 4) {
  std::vector<std::string> scope = {"x", "y", "z"};
  int counter = 0;
  std::function<Formula(int)> body = [&](int depth) -> Formula {
    if (depth <= 0 || rng() % 4 == 0) {
      return Formula::atom(rels[rng() % rels.size()],
                           scope[rng() % scope.size()],
                           scope[rng() % scope.size()]);
    }
    switch (rng() % 6) {
      case 0:
        return Formula::negation(body(depth - 1));
      case 1:
        return Formula::conj(body(depth - 1), body(depth - 1));
      case 2:
        return Formula::disj(body(depth - 1), body(depth - 1));
      case 3:
        return Formula::implies(body(depth - 1), body(depth - 1));
      case 4:
        return Formula::iff(body(depth - 1), body(depth - 1));
      default: {
        std::string v = "b" + std::to_string(counter++);
        scope.push_back(v);
        Formula inner = body(depth - 1);
        scope.pop_back();
        return (rng() % 2) ? Formula::forall(v, std::move(inner))
                           : Formula::exists(v, std::move(inner));
      }
    }
  };
  return body(max_depth);
}

// Random explicit-edge structure with a total injective element-valued f
// (a permutation), identity j, and a random S.
inline MembershipStructure random_structure(std::mt19937_64& rng, int n) {
  MembershipStructure::Data data;
  for (int i = 0; i < n; ++i) data.ids.push_back("n" + std::to_string(i));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (rng() % 3 == 0) data.edges.emplace_back(data.ids[u], data.ids[v]);
    }
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i) {
    data.f_elem.emplace_back(data.ids[i], data.ids[perm[i]]);
  }
  std::vector<std::string> s;
  for (int i = 0; i < n; ++i) {
    if (rng() % 2 == 0) s.push_back(data.ids[i]);
  }
  data.s = s;
  return MembershipStructure::build(data);
}

}  // namespace strata::testgen
