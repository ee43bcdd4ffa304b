#include "strata/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "strata/errors.hpp"

namespace strata {

namespace {

std::vector<std::string> domain_names(int n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (n <= 26) {
      ids.push_back(std::string(1, static_cast<char>('a' + i)));
    } else {
      ids.push_back("e" + std::to_string(i));
    }
  }
  return ids;
}

// f-value encoding, lexicographic position order:
//   set-valued:   0 = undefined (partial only), then subset masks 0..2^n-1
//   element mode: 0 = undefined (partial only), then targets 0..n-1
struct Odometer {
  std::vector<std::uint64_t> digits;
  std::uint64_t radix = 1;
  bool first = true;
  bool done = false;

  bool advance() {
    if (first) {
      first = false;
      return !done;
    }
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (++digits[i] < radix) return true;
      digits[i] = 0;
    }
    done = digits.size() > 0;
    return !done && digits.empty() ? false : !done;
  }
};

}  // namespace

struct StructureEnumerator::Impl {
  SearchSpec spec;
  std::vector<std::string> ids;
  std::uint64_t emitted = 0;

  // exhaustive state
  Odometer f_odo;
  std::uint64_t edge_mask = 0;
  std::uint64_t edge_space = 1;
  bool edges_fresh = true;

  // randomized state
  std::mt19937_64 rng;
  std::uint64_t produced_samples = 0;

  explicit Impl(const SearchSpec& s) : spec(s), rng(s.seed) {
    if (spec.domain_size < 0) {
      throw DomainError("domain size must be nonnegative");
    }
    ids = domain_names(spec.domain_size);
    const int n = spec.domain_size;
    std::uint64_t values =
        spec.f_mode == FMode::SetValued
            ? (std::uint64_t{1} << n) + (spec.require_total ? 0 : 1)
            : static_cast<std::uint64_t>(n) + (spec.require_total ? 0 : 1);
    if (spec.mode == SearchMode::Exhaustive) {
      long double space = 1.0L;
      for (int i = 0; i < n; ++i) space *= static_cast<long double>(values);
      if (spec.f_mode == FMode::Element) {
        space *= std::pow(2.0L, static_cast<long double>(n) *
                                    static_cast<long double>(n));
      }
      if (space > static_cast<long double>(spec.budget)) {
        throw DomainError(
            "exhaustive search space exceeds the budget; shrink the domain or "
            "raise --budget");
      }
    }
    f_odo.digits.assign(static_cast<std::size_t>(n), 0);
    f_odo.radix = values == 0 ? 1 : values;
    if (spec.f_mode == FMode::Element) {
      edge_space = std::uint64_t{1}
                   << (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n));
    }
  }

  bool f_valid(const std::vector<std::uint64_t>& digits) const {
    const bool partial = !spec.require_total;
    if (spec.require_injective) {
      std::vector<std::uint64_t> defined;
      for (auto d : digits) {
        if (partial && d == 0) continue;
        defined.push_back(d);
      }
      std::sort(defined.begin(), defined.end());
      if (std::adjacent_find(defined.begin(), defined.end()) != defined.end()) {
        return false;
      }
    }
    return true;
  }

  MembershipStructure materialize(const std::vector<std::uint64_t>& digits,
                                  std::uint64_t edges) const {
    const int n = spec.domain_size;
    const bool partial = !spec.require_total;
    MembershipStructure::Data data;
    data.ids = ids;
    if (spec.f_mode == FMode::SetValued) {
      for (int i = 0; i < n; ++i) {
        std::uint64_t d = digits[static_cast<std::size_t>(i)];
        if (partial) {
          if (d == 0) continue;
          d -= 1;
        }
        std::vector<std::string> members;
        for (int j = 0; j < n; ++j) {
          if (d & (std::uint64_t{1} << j)) {
            members.push_back(ids[static_cast<std::size_t>(j)]);
          }
        }
        data.f_set.emplace_back(ids[static_cast<std::size_t>(i)],
                                std::move(members));
      }
      // a fully undefined set-valued f still has to put the structure in
      // set-valued mode; bind nothing only when the domain is empty
      if (data.f_set.empty() && n > 0) {
        // represent "f defined nowhere" as an edge-mode structure with no f;
        // memf checks then fail upfront, which is the honest verdict.
      }
    } else {
      for (int i = 0; i < n; ++i) {
        std::uint64_t d = digits[static_cast<std::size_t>(i)];
        if (partial) {
          if (d == 0) continue;
          d -= 1;
        }
        data.f_elem.emplace_back(ids[static_cast<std::size_t>(i)],
                                 ids[static_cast<std::size_t>(d)]);
      }
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          std::uint64_t bit = static_cast<std::uint64_t>(u) *
                                  static_cast<std::uint64_t>(n) +
                              static_cast<std::uint64_t>(v);
          if (edges & (std::uint64_t{1} << bit)) {
            data.edges.emplace_back(ids[static_cast<std::size_t>(u)],
                                    ids[static_cast<std::size_t>(v)]);
          }
        }
      }
      std::vector<std::string> s_ids = ids;
      data.s = std::move(s_ids);
    }
    return MembershipStructure::build(data);
  }

  std::optional<MembershipStructure> next_exhaustive() {
    const int n = spec.domain_size;
    while (true) {
      if (spec.f_mode == FMode::Element && !edges_fresh) {
        // advance the minor key first
        if (++edge_mask < edge_space) {
          ++emitted;
          return materialize(f_odo.digits, edge_mask);
        }
        edge_mask = 0;
        edges_fresh = true;
      }
      // advance f
      if (n == 0) {
        if (f_odo.first) {
          f_odo.first = false;
          ++emitted;
          return materialize(f_odo.digits, 0);
        }
        return std::nullopt;
      }
      if (!f_odo.advance()) return std::nullopt;
      if (!f_valid(f_odo.digits)) continue;
      edges_fresh = false;
      edge_mask = 0;
      ++emitted;
      return materialize(f_odo.digits, edge_mask);
    }
  }

  std::optional<MembershipStructure> next_random() {
    if (produced_samples >= spec.samples) return std::nullopt;
    const int n = spec.domain_size;
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(n));
    while (true) {
      for (auto& d : digits) {
        d = rng() % f_odo.radix;
      }
      if (f_valid(digits)) break;
    }
    std::uint64_t edges = 0;
    if (spec.f_mode == FMode::Element) {
      edges = rng() & (edge_space - 1);
    }
    ++produced_samples;
    ++emitted;
    return materialize(digits, edges);
  }
};

StructureEnumerator::StructureEnumerator(const SearchSpec& spec)
    : impl_(std::make_unique<Impl>(spec)) {}
StructureEnumerator::~StructureEnumerator() = default;
StructureEnumerator::StructureEnumerator(StructureEnumerator&&) noexcept =
    default;

std::optional<MembershipStructure> StructureEnumerator::next() {
  return impl_->spec.mode == SearchMode::Exhaustive ? impl_->next_exhaustive()
                                                    : impl_->next_random();
}

std::uint64_t StructureEnumerator::emitted() const { return impl_->emitted; }

namespace {

bool satisfies(const MembershipStructure& m, const CheckItem& item) {
  try {
    if (item.axiom) {
      return check_axiom(m, *item.axiom, item.flavor).holds;
    }
    return check_extensionality(m, item.flavor, *item.ext).holds;
  } catch (const EvalError&) {
    // flavor unsupported on this candidate (e.g. memf without any fset
    // binding): not a model of the requirement
    return false;
  }
}

}  // namespace

SearchResult find_model(const SearchSpec& spec) {
  StructureEnumerator en(spec);
  SearchResult result;
  while (auto m = en.next()) {
    ++result.examined;
    bool ok = true;
    for (const auto& item : spec.checks) {
      if (!satisfies(*m, item)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      result.model = std::move(m);
      return result;
    }
  }
  return result;
}

CantorReport cantor_check(int max_n) {
  if (max_n < 1 || max_n > 4) {
    throw DomainError("cantor check runs for max_n in 1..4");
  }
  CantorReport report;
  for (int n = 1; n <= max_n; ++n) {
    CantorRow row;
    row.n = n;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::vector<std::uint64_t> f(static_cast<std::size_t>(n), 0);
    bool done = false;
    while (!done) {
      ++row.maps_checked;
      // diagonal set { x : x not in f(x) } is never in the range
      std::uint64_t diag = 0;
      for (int x = 0; x < n; ++x) {
        if (!(f[static_cast<std::size_t>(x)] & (std::uint64_t{1} << x))) {
          diag |= std::uint64_t{1} << x;
        }
      }
      bool diag_hit = false;
      std::uint64_t range_count = 0;
      std::vector<bool> seen(static_cast<std::size_t>(subsets), false);
      for (int x = 0; x < n; ++x) {
        std::uint64_t v = f[static_cast<std::size_t>(x)];
        if (v == diag) diag_hit = true;
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          ++range_count;
        }
      }
      if (!diag_hit) ++row.diagonal_confirmed;
      if (range_count == subsets) {
        ++row.surjections;
        report.any_surjection = true;
      }
      // next map
      std::size_t i = f.size();
      done = true;
      while (i > 0) {
        --i;
        if (++f[i] < subsets) {
          done = false;
          break;
        }
        f[i] = 0;
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace strata
