#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "strata/formula.hpp"

namespace strata {

// A stratification witness: integer type levels per variable. Every
// membership atom `u R v` demands level(v) == level(u) + 1, every equality
// demands equal levels. Levels are normalized to minimum 0 per connected
// component of the constraint graph.
struct Typing {
  std::map<std::string, int> levels;

  bool operator==(const Typing& o) const { return levels == o.levels; }
};

// One traversal step of a failure cycle: the atom that induced the
// constraint, the direction it was walked in, and the walked weight
// (+1 forward along a membership atom, -1 backward, 0 for equality).
struct CycleStep {
  Formula atom;
  std::string from, to;
  int weight;
};

// Certificate that no typing exists: a closed walk in the constraint graph
// whose weights sum to a nonzero offset, i.e. replaying the constraints
// yields level(v) = level(v) + offset with offset != 0.
struct StratFailure {
  std::vector<CycleStep> cycle;

  int offset() const {
    int k = 0;
    for (const auto& s : cycle) k += s.weight;
    return k;
  }
};

using StratResult = std::variant<Typing, StratFailure>;

// Total: every formula either gets a typing or a failure cycle. All
// membership flavors (mem, mem*, mem', memf) impose the same +1 constraint;
// bound and free variables are treated alike.
StratResult stratify(const Formula& phi);

inline bool is_stratified(const StratResult& r) {
  return std::holds_alternative<Typing>(r);
}

// True iff every atom constraint of phi holds under t. Throws TypingError
// if t leaves a variable of phi unassigned.
bool check_typing(const Formula& phi, const Typing& t);

}  // namespace strata
