#include "strata/hfset.hpp"

#include <algorithm>
#include <memory>

#include "strata/errors.hpp"

namespace strata {

struct HFSet::Node {
  std::vector<HFSet> elems;           // ascending code order, no duplicates
  std::optional<std::uint64_t> code;  // absent when >= 2^64
  int rank = 0;
};

namespace {

const std::shared_ptr<const HFSet::Node>& empty_node() {
  static const std::shared_ptr<const HFSet::Node> node =
      std::make_shared<HFSet::Node>(
          HFSet::Node{.elems = {}, .code = 0, .rank = 0});
  return node;
}

}  // namespace

HFSet::HFSet() : node_(empty_node()) {}

HFSet HFSet::from_elements(std::vector<HFSet> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (elems.empty()) return HFSet();

  auto n = std::make_shared<Node>();
  std::optional<std::uint64_t> code = 0;
  int rank = 0;
  for (const auto& e : elems) {
    rank = std::max(rank, e.rank() + 1);
    if (code && e.code_fits() && e.node_->code.value() < 64) {
      *code |= std::uint64_t{1} << e.node_->code.value();
    } else {
      code.reset();
    }
  }
  n->elems = std::move(elems);
  n->code = code;
  n->rank = rank;
  return HFSet(std::move(n));
}

HFSet HFSet::decode(std::uint64_t code) {
  std::vector<HFSet> elems;
  for (int bit = 0; bit < 64; ++bit) {
    if (code & (std::uint64_t{1} << bit)) {
      elems.push_back(decode(static_cast<std::uint64_t>(bit)));
    }
  }
  return from_elements(std::move(elems));
}

std::uint64_t HFSet::code() const {
  if (!node_->code) {
    throw OverflowError("set code exceeds the 64-bit budget");
  }
  return *node_->code;
}

bool HFSet::code_fits() const { return node_->code.has_value(); }

std::span<const HFSet> HFSet::elements() const { return node_->elems; }
std::size_t HFSet::size() const { return node_->elems.size(); }
int HFSet::rank() const { return node_->rank; }

bool HFSet::contains(const HFSet& e) const {
  auto it = std::lower_bound(node_->elems.begin(), node_->elems.end(), e);
  return it != node_->elems.end() && *it == e;
}

bool HFSet::subset_of(const HFSet& o) const {
  for (const auto& e : node_->elems) {
    if (!o.contains(e)) return false;
  }
  return true;
}

bool HFSet::operator==(const HFSet& o) const {
  if (node_ == o.node_) return true;
  if (node_->code && o.node_->code) return *node_->code == *o.node_->code;
  if (node_->code.has_value() != o.node_->code.has_value()) return false;
  if (node_->elems.size() != o.node_->elems.size()) return false;
  for (std::size_t i = 0; i < node_->elems.size(); ++i) {
    if (node_->elems[i] != o.node_->elems[i]) return false;
  }
  return true;
}

std::strong_ordering HFSet::operator<=>(const HFSet& o) const {
  if (node_ == o.node_) return std::strong_ordering::equal;
  if (node_->code && o.node_->code) return *node_->code <=> *o.node_->code;
  // a missing code means the value is >= 2^64
  if (node_->code.has_value() != o.node_->code.has_value()) {
    return node_->code.has_value() ? std::strong_ordering::less
                                   : std::strong_ordering::greater;
  }
  // both huge: compare as binary numbers, highest differing element decides
  const auto& a = node_->elems;
  const auto& b = o.node_->elems;
  std::size_t i = a.size(), j = b.size();
  while (i > 0 && j > 0) {
    auto cmp = a[i - 1] <=> b[j - 1];
    if (cmp != 0) return cmp;
    --i;
    --j;
  }
  if (i == j) return std::strong_ordering::equal;
  return i > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::string HFSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& e : node_->elems) {
    if (!first) out += ',';
    first = false;
    out += e.to_string();
  }
  out += '}';
  return out;
}

namespace {

HFSet parse_rec(std::string_view s, std::size_t& pos) {
  auto skip_ws = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' ||
                              s[pos] == '\n' || s[pos] == '\r'))
      ++pos;
  };
  skip_ws();
  if (pos >= s.size() || s[pos] != '{') {
    throw FormatError("expected '{' at position " + std::to_string(pos) +
                      " in set notation");
  }
  ++pos;
  std::vector<HFSet> elems;
  skip_ws();
  if (pos < s.size() && s[pos] == '}') {
    ++pos;
    return HFSet::from_elements({});
  }
  while (true) {
    elems.push_back(parse_rec(s, pos));
    skip_ws();
    if (pos >= s.size()) {
      throw FormatError("unterminated set notation");
    }
    if (s[pos] == ',') {
      ++pos;
      skip_ws();
      continue;
    }
    if (s[pos] == '}') {
      ++pos;
      return HFSet::from_elements(std::move(elems));
    }
    throw FormatError("expected ',' or '}' at position " +
                      std::to_string(pos) + " in set notation");
  }
}

}  // namespace

HFSet HFSet::parse(std::string_view text) {
  std::size_t pos = 0;
  HFSet s = parse_rec(text, pos);
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                               text[pos] == '\n' || text[pos] == '\r'))
    ++pos;
  if (pos != text.size()) {
    throw FormatError("trailing characters after set notation");
  }
  return s;
}

std::uint64_t ack_encode(const HFSet& s) { return s.code(); }
HFSet ack_decode(std::uint64_t n) { return HFSet::decode(n); }

HFSet v_stage(int n) {
  if (n < 0) throw DomainError("stage index must be nonnegative");
  if (n >= 6) {
    throw DomainError("stage " + std::to_string(n) +
                      " is too large (only stages 0..5 are materialized)");
  }
  static const std::vector<HFSet> stages = [] {
    std::vector<HFSet> v;
    v.push_back(HFSet());
    for (int i = 1; i <= 5; ++i) v.push_back(power_set(v.back()));
    return v;
  }();
  return stages[static_cast<std::size_t>(n)];
}

HFSet power_set(const HFSet& s) {
  if (s.size() > 20) {
    throw DomainError("power set of a " + std::to_string(s.size()) +
                      "-element set is out of budget");
  }
  auto elems = s.elements();
  std::vector<HFSet> subsets;
  subsets.reserve(std::size_t{1} << s.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.size()); ++mask) {
    std::vector<HFSet> members;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) members.push_back(elems[i]);
    }
    subsets.push_back(HFSet::from_elements(std::move(members)));
  }
  return HFSet::from_elements(std::move(subsets));
}

HFSet big_union(const HFSet& s) {
  std::vector<HFSet> members;
  for (const auto& e : s.elements()) {
    for (const auto& x : e.elements()) members.push_back(x);
  }
  return HFSet::from_elements(std::move(members));
}

HFSet unordered_pair(const HFSet& a, const HFSet& b) {
  return HFSet::from_elements({a, b});
}

HFSet singleton(const HFSet& a) { return HFSet::from_elements({a}); }

HFSet singleton_image(const HFSet& s) {
  std::vector<HFSet> members;
  members.reserve(s.size());
  for (const auto& e : s.elements()) members.push_back(singleton(e));
  return HFSet::from_elements(std::move(members));
}

HFSet complement_within(const HFSet& s, const HFSet& universe) {
  if (!s.subset_of(universe)) {
    throw DomainError("complement_within: set is not a subset of the universe");
  }
  std::vector<HFSet> members;
  for (const auto& e : universe.elements()) {
    if (!s.contains(e)) members.push_back(e);
  }
  return HFSet::from_elements(std::move(members));
}

HFSet set_union(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> members(a.elements().begin(), a.elements().end());
  members.insert(members.end(), b.elements().begin(), b.elements().end());
  return HFSet::from_elements(std::move(members));
}

HFSet set_intersection(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> members;
  for (const auto& e : a.elements()) {
    if (b.contains(e)) members.push_back(e);
  }
  return HFSet::from_elements(std::move(members));
}

bool intersects(const HFSet& a, const HFSet& b) {
  const HFSet& small = a.size() <= b.size() ? a : b;
  const HFSet& large = a.size() <= b.size() ? b : a;
  for (const auto& e : small.elements()) {
    if (large.contains(e)) return true;
  }
  return false;
}

HFSet unordered_square(const HFSet& x) {
  std::vector<HFSet> pairs;
  auto elems = x.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      pairs.push_back(unordered_pair(elems[i], elems[j]));
    }
  }
  return HFSet::from_elements(std::move(pairs));
}

namespace {

// Reads a set as a list of ordered pairs: {a} contributes (a,a); {a,b}
// contributes (a,b) and (b,a); anything else is skipped.
std::vector<std::pair<HFSet, HFSet>> as_ordered_pairs(const HFSet& s) {
  std::vector<std::pair<HFSet, HFSet>> out;
  for (const auto& e : s.elements()) {
    if (e.size() == 1) {
      out.emplace_back(e.elements()[0], e.elements()[0]);
    } else if (e.size() == 2) {
      out.emplace_back(e.elements()[0], e.elements()[1]);
      out.emplace_back(e.elements()[1], e.elements()[0]);
    }
  }
  return out;
}

}  // namespace

HFSet ustar_compose(const HFSet& c, const HFSet& d) {
  auto cp = as_ordered_pairs(c);
  auto dp = as_ordered_pairs(d);
  std::vector<HFSet> out;
  for (const auto& [x, y] : cp) {
    for (const auto& [y2, z] : dp) {
      if (y == y2) out.push_back(unordered_pair(x, z));
    }
  }
  return HFSet::from_elements(std::move(out));
}

HFSet pi_star(const HFSet& A) {
  std::vector<HFSet> out;
  for (const auto& e : A.elements()) {
    if (e.size() == 1) {
      if (!e.elements()[0].empty()) out.push_back(e);
    } else if (e.size() == 2) {
      if (intersects(e.elements()[0], e.elements()[1])) out.push_back(e);
    }
  }
  return HFSet::from_elements(std::move(out));
}

}  // namespace strata
