#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

// Canonical hereditarily finite set. Elements are deduplicated and stored in
// ascending code order, where code({}) = 0 and code(s) = sum of 2^code(e)
// over the elements. Codes above 64 bits are not materialized; ordering and
// equality still work structurally. Values are immutable and cheap to copy.
class HFSet {
 public:
  HFSet();  // the empty set

  static HFSet from_elements(std::vector<HFSet> elems);
  static HFSet decode(std::uint64_t code);

  // Throws OverflowError when the code exceeds 64 bits.
  std::uint64_t code() const;
  bool code_fits() const;

  std::span<const HFSet> elements() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  int rank() const;

  bool contains(const HFSet& e) const;
  bool subset_of(const HFSet& o) const;

  bool operator==(const HFSet& o) const;
  bool operator!=(const HFSet& o) const { return !(*this == o); }
  std::strong_ordering operator<=>(const HFSet& o) const;  // code order

  // Brace notation, e.g. "{{},{{}}}", elements in ascending code order.
  std::string to_string() const;
  static HFSet parse(std::string_view text);

  struct Node;  // opaque; defined in hfset.cpp

 private:
  explicit HFSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::uint64_t ack_encode(const HFSet& s);
HFSet ack_decode(std::uint64_t n);

// Cumulative hierarchy stage: v_stage(0) = {}, v_stage(n+1) = power set of
// v_stage(n). Throws DomainError for n >= 6 (|V_6| is out of reach).
HFSet v_stage(int n);

HFSet power_set(const HFSet& s);
HFSet big_union(const HFSet& s);
HFSet unordered_pair(const HFSet& a, const HFSet& b);  // {a,a} collapses
HFSet singleton(const HFSet& a);
HFSet singleton_image(const HFSet& s);  // { {e} : e in s }
HFSet complement_within(const HFSet& s, const HFSet& universe);

HFSet set_union(const HFSet& a, const HFSet& b);
HFSet set_intersection(const HFSet& a, const HFSet& b);
bool intersects(const HFSet& a, const HFSet& b);

// { {a,b} : a, b in x }, singletons standing for collapsed pairs.
HFSet unordered_square(const HFSet& x);

// Unordered composition: { {x,z} : exists y with {x,y} in c and {y,z} in d }.
// Singleton members are read as collapsed pairs {a,a}; members that are
// neither singletons nor doubletons are skipped.
HFSet ustar_compose(const HFSet& c, const HFSet& d);

// The members of A that are unordered pairs (or singletons, read as {x,x})
// of intersecting sets.
HFSet pi_star(const HFSet& A);

}  // namespace strata
