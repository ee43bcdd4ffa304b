#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "strata/structure.hpp"

namespace strata {

enum class SearchMode : std::uint8_t { Exhaustive, Randomized };

// One requirement in a search: either a named axiom or an extensionality
// scope, each under a membership flavor.
struct CheckItem {
  std::optional<AxiomId> axiom;
  std::optional<ExtScope> ext;
  RelSym flavor = RelSym::MemF;
};

struct SearchSpec {
  int domain_size = 0;
  FMode f_mode = FMode::SetValued;
  bool require_injective = false;
  bool require_total = false;
  std::vector<CheckItem> checks;
  std::uint64_t budget = 5'000'000;  // exhaustive space cap
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000;
};

// Streams candidate structures. Exhaustive order is lexicographic over the
// f graph (set-valued: per-element subset bitmask, undefined first when
// partial; element-valued: target index, with the edge relation as the minor
// key). Throws DomainError when the exhaustive space exceeds the budget.
class StructureEnumerator {
 public:
  explicit StructureEnumerator(const SearchSpec& spec);
  ~StructureEnumerator();
  StructureEnumerator(StructureEnumerator&&) noexcept;

  std::optional<MembershipStructure> next();
  std::uint64_t emitted() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SearchResult {
  std::optional<MembershipStructure> model;
  std::uint64_t examined = 0;
  bool exhausted() const { return !model.has_value(); }
};

// First enumerated structure satisfying every check, or EXHAUSTED with the
// number of candidates examined.
SearchResult find_model(const SearchSpec& spec);

struct CantorRow {
  int n = 0;
  std::uint64_t maps_checked = 0;
  std::uint64_t surjections = 0;          // provably always 0
  std::uint64_t diagonal_confirmed = 0;   // maps whose diagonal set is unhit
};

struct CantorReport {
  std::vector<CantorRow> rows;
  bool any_surjection = false;
};

// For each n <= max_n exhaustively confirms that no total set-valued
// f : D -> P(D) is surjective, via the diagonal { x : x not in f(x) } plus a
// direct range scan. max_n must lie in 1..4.
CantorReport cantor_check(int max_n);

}  // namespace strata
