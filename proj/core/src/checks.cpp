#include <algorithm>

#include "strata/errors.hpp"
#include "strata/structure.hpp"

namespace strata {

// Checks a forall*/exists axiom by brute force: for every universal tuple
// (in id order) search the least existential witness. The matrix evaluator
// is shared across tuples so its memo pays off.
AxiomReport check_axiom(const MembershipStructure& m, AxiomId id,
                        RelSym flavor) {
  AxiomShape shape = axiom_shape(builtin_axiom(id));
  AxiomReport report;
  report.check = std::string(axiom_name(id));
  report.flavor = flavor;

  Evaluator ev(m, shape.matrix, flavor);
  const int n = m.size();
  const std::size_t k = shape.universals.size();

  std::vector<int> tuple(k, 0);
  Assignment asg;
  bool done = n == 0 && k > 0;  // no tuples at all: vacuously holds
  report.holds = true;
  while (!done) {
    for (std::size_t i = 0; i < k; ++i) asg[shape.universals[i]] = tuple[i];
    std::optional<int> witness;
    for (int w = 0; w < n; ++w) {
      asg[shape.witness_var] = w;
      if (ev.evaluate(asg)) {
        witness = w;
        break;
      }
    }
    asg.erase(shape.witness_var);
    if (witness) {
      report.witnesses.emplace_back(tuple, *witness);
    } else {
      report.holds = false;
      report.counterexample = tuple;
      report.witnesses.clear();
      return report;
    }
    // next tuple, lexicographic
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++tuple[i] < n) break;
      tuple[i] = 0;
      if (i == 0) done = true;
    }
    if (k == 0) done = true;
  }
  return report;
}

namespace {

std::vector<bool> flavor_extension(const MembershipStructure& m, RelSym flavor,
                                   int x) {
  std::vector<bool> out(static_cast<std::size_t>(m.size()), false);
  for (int z = 0; z < m.size(); ++z) {
    bool v = false;
    switch (flavor) {
      case RelSym::Eq: v = (z == x); break;
      case RelSym::Mem: v = m.edge(z, x); break;
      case RelSym::MemStar: v = mem_star(m, z, x); break;
      case RelSym::MemPrime: v = mem_prime(m, z, x); break;
      case RelSym::MemF: v = mem_f(m, z, x); break;
    }
    out[static_cast<std::size_t>(z)] = v;
  }
  return out;
}

}  // namespace

AxiomReport check_extensionality(const MembershipStructure& m, RelSym flavor,
                                 ExtScope scope) {
  AxiomReport report;
  report.check = scope == ExtScope::All ? "extensionality" : "extensionality_sets";
  report.flavor = flavor;
  report.holds = true;

  std::vector<int> elems;
  if (scope == ExtScope::All) {
    for (int x = 0; x < m.size(); ++x) elems.push_back(x);
  } else {
    elems = m.f_domain();
  }
  std::vector<std::vector<bool>> ext;
  ext.reserve(elems.size());
  for (int x : elems) ext.push_back(flavor_extension(m, flavor, x));

  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (ext[i] == ext[j]) {
        report.holds = false;
        report.counterexample = std::vector<int>{elems[i], elems[j]};
        return report;
      }
    }
  }
  return report;
}

bool verify_report(const MembershipStructure& m, AxiomId id,
                   const AxiomReport& report) {
  AxiomShape shape = axiom_shape(builtin_axiom(id));
  Evaluator ev(m, shape.matrix, report.flavor);
  Assignment asg;
  if (report.holds) {
    for (const auto& [tuple, w] : report.witnesses) {
      if (tuple.size() != shape.universals.size()) return false;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        asg[shape.universals[i]] = tuple[i];
      }
      asg[shape.witness_var] = w;
      if (!ev.evaluate(asg)) return false;
    }
    return true;
  }
  if (!report.counterexample ||
      report.counterexample->size() != shape.universals.size()) {
    return false;
  }
  for (std::size_t i = 0; i < report.counterexample->size(); ++i) {
    asg[shape.universals[i]] = (*report.counterexample)[i];
  }
  for (int w = 0; w < m.size(); ++w) {
    asg[shape.witness_var] = w;
    if (ev.evaluate(asg)) return false;  // counterexample has a witness
  }
  return true;
}

}  // namespace strata
