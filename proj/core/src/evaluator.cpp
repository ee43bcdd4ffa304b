#include <bit>
#include <unordered_map>

#include "strata/errors.hpp"
#include "strata/structure.hpp"

namespace strata {

// Compiled form: nodes are flattened, variables become dense slots, and each
// node knows the set of variables its value depends on. Results are memoized
// per (node, relevant variable values) when the key fits in 64 bits, which
// collapses the repeated work quantifier nests otherwise redo.
struct Evaluator::Impl {
  const MembershipStructure& m;
  RelSym mem_as;

  struct ENode {
    FormulaKind kind;
    RelSym rel{};
    int lslot = -1, rslot = -1;  // atom arguments
    int vslot = -1;              // quantifier variable
    int kid0 = -1, kid1 = -1;
    std::uint64_t fv = 0;        // slot mask of free variables below
  };
  std::vector<ENode> nodes;
  int root = -1;
  std::vector<std::string> slot_names;
  std::map<std::string, int> slots;

  int bits_per_value = 0;
  bool memo_enabled = false;
  std::unordered_map<std::uint64_t, bool> memo;
  std::vector<int> env;

  Impl(const MembershipStructure& mm, const Formula& phi, RelSym as)
      : m(mm), mem_as(as) {
    root = compile(phi);
    int n = m.size();
    // values are packed as v+1 (0 marks "unassigned"), so the range is 0..n
    bits_per_value = std::bit_width(static_cast<unsigned>(n));
    int max_fv = 0;
    for (const auto& nd : nodes) {
      max_fv = std::max(max_fv, std::popcount(nd.fv));
    }
    memo_enabled = slots.size() <= 64 &&
                   static_cast<std::size_t>(max_fv) * bits_per_value <= 48;
    env.assign(slots.size(), -1);
  }

  int slot(const std::string& name) {
    auto [it, fresh] = slots.try_emplace(name, static_cast<int>(slot_names.size()));
    if (fresh) slot_names.push_back(name);
    return it->second;
  }

  int compile(const Formula& f) {
    ENode nd;
    nd.kind = f.kind();
    switch (f.kind()) {
      case FormulaKind::Atom: {
        nd.rel = f.rel();
        nd.lslot = slot(f.lhs());
        nd.rslot = slot(f.rhs());
        nd.fv = (std::uint64_t{1} << nd.lslot) | (std::uint64_t{1} << nd.rslot);
        break;
      }
      case FormulaKind::Not: {
        nd.kid0 = compile(f.body());
        nd.fv = nodes[static_cast<std::size_t>(nd.kid0)].fv;
        break;
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        nd.vslot = slot(f.var());
        nd.kid0 = compile(f.body());
        nd.fv = nodes[static_cast<std::size_t>(nd.kid0)].fv &
                ~(std::uint64_t{1} << nd.vslot);
        break;
      }
      default: {
        nd.kid0 = compile(f.left());
        nd.kid1 = compile(f.right());
        nd.fv = nodes[static_cast<std::size_t>(nd.kid0)].fv |
                nodes[static_cast<std::size_t>(nd.kid1)].fv;
      }
    }
    nodes.push_back(nd);
    return static_cast<int>(nodes.size()) - 1;
  }

  bool atom_value(const ENode& nd) {
    int l = env[static_cast<std::size_t>(nd.lslot)];
    int r = env[static_cast<std::size_t>(nd.rslot)];
    if (l < 0 || r < 0) {
      throw EvalError("free variable '" +
                      slot_names[static_cast<std::size_t>(l < 0 ? nd.lslot
                                                                : nd.rslot)] +
                      "' has no assignment");
    }
    RelSym rel = nd.rel == RelSym::Mem ? mem_as : nd.rel;
    switch (rel) {
      case RelSym::Eq: return l == r;
      case RelSym::Mem: return m.edge(l, r);
      case RelSym::MemStar: return mem_star(m, l, r);
      case RelSym::MemPrime: return mem_prime(m, l, r);
      case RelSym::MemF: return mem_f(m, l, r);
    }
    return false;
  }

  bool run(int idx) {
    const ENode& nd = nodes[static_cast<std::size_t>(idx)];
    std::uint64_t key = 0;
    bool use_memo = memo_enabled && nd.kind != FormulaKind::Atom;
    if (use_memo) {
      key = static_cast<std::uint64_t>(idx) << 48;
      std::uint64_t fv = nd.fv;
      int shift = 0;
      while (fv) {
        int s = std::countr_zero(fv);
        fv &= fv - 1;
        key |= static_cast<std::uint64_t>(
                   static_cast<std::uint32_t>(env[static_cast<std::size_t>(s)] + 1))
               << shift;
        shift += bits_per_value;
      }
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    bool value = false;
    switch (nd.kind) {
      case FormulaKind::Atom:
        value = atom_value(nd);
        break;
      case FormulaKind::Not:
        value = !run(nd.kid0);
        break;
      case FormulaKind::And:
        value = run(nd.kid0) && run(nd.kid1);
        break;
      case FormulaKind::Or:
        value = run(nd.kid0) || run(nd.kid1);
        break;
      case FormulaKind::Implies:
        value = !run(nd.kid0) || run(nd.kid1);
        break;
      case FormulaKind::Iff:
        value = run(nd.kid0) == run(nd.kid1);
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        bool universal = nd.kind == FormulaKind::Forall;
        value = universal;
        int saved = env[static_cast<std::size_t>(nd.vslot)];
        for (int e = 0; e < m.size(); ++e) {
          env[static_cast<std::size_t>(nd.vslot)] = e;
          bool sub = run(nd.kid0);
          if (sub != universal) {
            value = !universal;
            break;
          }
        }
        env[static_cast<std::size_t>(nd.vslot)] = saved;
        break;
      }
    }
    if (use_memo) memo.emplace(key, value);
    return value;
  }
};

Evaluator::Evaluator(const MembershipStructure& m, const Formula& phi,
                     RelSym mem_as)
    : impl_(std::make_unique<Impl>(m, phi, mem_as)) {}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

bool Evaluator::evaluate(const Assignment& assignment) {
  auto& I = *impl_;
  std::fill(I.env.begin(), I.env.end(), -1);
  for (const auto& [name, value] : assignment) {
    auto it = I.slots.find(name);
    if (it == I.slots.end()) continue;  // assignment may cover extra names
    if (value < 0 || value >= I.m.size()) {
      throw EvalError("assignment for '" + name + "' is out of range");
    }
    I.env[static_cast<std::size_t>(it->second)] = value;
  }
  return I.run(I.root);
}

bool eval(const MembershipStructure& m, const Formula& phi,
          const Assignment& assignment) {
  // free variables must be covered; bound names may be reused freely
  for (const auto& v : free_vars(phi)) {
    if (!assignment.count(v)) {
      throw EvalError("free variable '" + v + "' has no assignment");
    }
  }
  Evaluator ev(m, phi);
  return ev.evaluate(assignment);
}

bool eval_with_flavor(const MembershipStructure& m, const Formula& phi,
                      RelSym mem_as, const Assignment& assignment) {
  for (const auto& v : free_vars(phi)) {
    if (!assignment.count(v)) {
      throw EvalError("free variable '" + v + "' has no assignment");
    }
  }
  Evaluator ev(m, phi, mem_as);
  return ev.evaluate(assignment);
}

}  // namespace strata
