#include "strata/stratify.hpp"

#include <algorithm>
#include <optional>

#include "strata/errors.hpp"

namespace strata {

namespace {

struct Constraint {
  std::string u, v;  // membership: level(v) = level(u) + weight
  int weight;        // 1 for membership flavors, 0 for equality
  Formula atom;
};

// Collects atoms (as constraints) and variables in first-encounter order.
struct Collector {
  std::vector<Constraint> constraints;
  std::vector<std::string> vars;
  std::map<std::string, int> index;

  int var(const std::string& name) {
    auto [it, fresh] = index.try_emplace(name, static_cast<int>(vars.size()));
    if (fresh) vars.push_back(name);
    return it->second;
  }

  void walk(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom:
        var(f.lhs());
        var(f.rhs());
        constraints.push_back(
            {f.lhs(), f.rhs(), f.rel() == RelSym::Eq ? 0 : 1, f});
        break;
      case FormulaKind::Not:
        walk(f.body());
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        var(f.var());
        walk(f.body());
        break;
      default:
        walk(f.left());
        walk(f.right());
    }
  }
};

struct Edge {
  int to;
  int weight;
  int constraint;  // index into constraints
  bool forward;    // walked in the atom's stated direction
};

}  // namespace

StratResult stratify(const Formula& phi) {
  Collector c;
  c.walk(phi);
  const int n = static_cast<int>(c.vars.size());

  std::vector<std::vector<Edge>> adj(n);
  for (int i = 0; i < static_cast<int>(c.constraints.size()); ++i) {
    const auto& k = c.constraints[i];
    int u = c.index[k.u];
    int v = c.index[k.v];
    adj[u].push_back({v, k.weight, i, true});
    adj[v].push_back({u, -k.weight, i, false});
  }

  std::vector<std::optional<int>> level(n);
  std::vector<int> component(n, -1);
  std::vector<std::pair<int, Edge>> parent(n, {-1, Edge{}});

  auto make_failure = [&](int u, const Edge& conflict) {
    // Closed walk: lca -> ... -> u -> v -> ... -> lca through tree edges.
    int v = conflict.to;
    auto path_to_root = [&](int x) {
      std::vector<int> p;
      while (x != -1) {
        p.push_back(x);
        x = parent[x].first;
      }
      return p;
    };
    std::vector<int> pu = path_to_root(u);
    std::vector<int> pv = path_to_root(v);
    // strip the common tail to find the lowest common ancestor
    while (pu.size() > 1 && pv.size() > 1 &&
           pu[pu.size() - 2] == pv[pv.size() - 2]) {
      pu.pop_back();
      pv.pop_back();
    }
    // pu/pv now end at the lca
    StratFailure fail;
    auto step_of = [&](int child, bool reversed) {
      const Edge& e = parent[child].second;
      const Constraint& k = c.constraints[e.constraint];
      // tree edge runs parent -> child with weight e.weight
      std::string from = c.vars[parent[child].first];
      std::string to = c.vars[child];
      int w = e.weight;
      if (reversed) {
        std::swap(from, to);
        w = -w;
      }
      return CycleStep{k.atom, from, to, w};
    };
    // lca -> u (walk pu from the back, skipping the lca itself)
    for (std::size_t i = pu.size() - 1; i-- > 0;) {
      fail.cycle.push_back(step_of(pu[i], false));
    }
    const Constraint& k = c.constraints[conflict.constraint];
    fail.cycle.push_back(CycleStep{k.atom, c.vars[u], c.vars[v],
                                   conflict.weight});
    // v -> lca (walk pv forward, reversing each tree edge)
    for (std::size_t i = 0; i + 1 < pv.size(); ++i) {
      fail.cycle.push_back(step_of(pv[i], true));
    }
    return fail;
  };

  for (int root = 0; root < n; ++root) {
    if (level[root]) continue;
    level[root] = 0;
    component[root] = root;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const Edge& e : adj[u]) {
        int want = *level[u] + e.weight;
        if (!level[e.to]) {
          level[e.to] = want;
          component[e.to] = root;
          parent[e.to] = {u, e};
          stack.push_back(e.to);
        } else if (*level[e.to] != want) {
          return make_failure(u, e);
        }
      }
    }
  }

  // normalize each component to minimum level 0
  std::map<int, int> min_level;
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = min_level.try_emplace(component[i], *level[i]);
    if (!fresh) it->second = std::min(it->second, *level[i]);
  }
  Typing t;
  for (int i = 0; i < n; ++i) {
    t.levels[c.vars[i]] = *level[i] - min_level[component[i]];
  }
  return t;
}

bool check_typing(const Formula& phi, const Typing& t) {
  Collector c;
  c.walk(phi);
  for (const auto& v : c.vars) {
    if (!t.levels.count(v)) {
      throw TypingError("typing assigns no level to variable '" + v + "'");
    }
  }
  for (const auto& k : c.constraints) {
    if (t.levels.at(k.v) != t.levels.at(k.u) + k.weight) return false;
  }
  return true;
}

}  // namespace strata
