#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strata/formula.hpp"
#include "strata/hfset.hpp"

namespace strata {

enum class EdgeMode : std::uint8_t { Explicit, Hf };
enum class FMode : std::uint8_t { None, Element, SetValued };

// Unordered pair of domain indices, kept with a <= b; a == b encodes the
// collapsed pair {a}.
struct UPair {
  int a, b;
  auto operator<=>(const UPair&) const = default;
};
UPair make_upair(int x, int y);
using PairSet = std::set<UPair>;

// A finite domain with a membership-like edge relation E, an optional
// automorphism j (identity when absent), an optional partial map f in one of
// two shapes (element-valued injective, or set-valued), and an optional
// designated code set S. Immutable once built; validation happens at build
// time (automorphism and element-f injectivity, dangling ids).
//
// Text format, line based, '#' comments:
//   domain: id id ...
//   edge: id id                # explicit E(left, right)
//   hf: id = {{},{{}}}         # binds id to an HF set; E becomes true
//                              # membership between bound ids
//   j: (id id)(id id id)       # permutation in cycle notation
//   f: id -> id                # element-valued mode
//   fset: id -> {id, id}       # set-valued mode
//   S: {id, id}
// edge/hf lines are mutually exclusive, as are f/fset lines.
class MembershipStructure {
 public:
  struct Data {
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::pair<std::string, HFSet>> hf;
    std::vector<std::vector<std::string>> j_cycles;
    std::vector<std::pair<std::string, std::string>> f_elem;
    std::vector<std::pair<std::string, std::vector<std::string>>> f_set;
    std::optional<std::vector<std::string>> s;
  };

  static MembershipStructure parse(const std::string& text);
  static MembershipStructure build(const Data& data);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id_of(int x) const { return ids_[static_cast<std::size_t>(x)]; }
  int index_of(const std::string& id) const;          // throws ValidationError
  std::optional<int> find(const std::string& id) const;

  EdgeMode edge_mode() const { return edge_mode_; }
  FMode f_mode() const { return f_mode_; }

  bool edge(int u, int v) const;  // E(u, v): "u is a member of v"
  std::vector<int> extension(int x) const;  // { z : E(z, x) }

  bool j_identity() const { return j_identity_; }
  int j_of(int x) const { return j_[static_cast<std::size_t>(x)]; }
  int j_inv(int x) const { return j_inv_[static_cast<std::size_t>(x)]; }

  bool f_defined(int x) const;
  int f_at(int x) const;                   // element mode; throws if undefined
  std::optional<int> f_inverse(int y) const;  // element mode
  const std::vector<int>& f_domain() const { return f_domain_; }
  const std::vector<bool>& f_set_at(int x) const;  // set mode; throws if undefined
  bool f_set_contains(int x, int y) const;

  bool has_S() const { return s_.has_value(); }
  bool in_S(int x) const { return s_ && (*s_)[static_cast<std::size_t>(x)]; }
  std::vector<int> s_elements() const;

  std::optional<HFSet> hf_of(int x) const;

  // The unique element whose extension equals `ext`, if any. Throws
  // ValidationError (code "ambiguous-code") when two elements share it.
  std::optional<int> code_of(const std::vector<int>& ext) const;

  std::string to_text() const;

 private:
  MembershipStructure() = default;

  std::vector<std::string> ids_;
  std::map<std::string, int> index_;
  EdgeMode edge_mode_ = EdgeMode::Explicit;
  FMode f_mode_ = FMode::None;
  std::set<std::uint64_t> edges_;            // packed (u << 32) | v
  std::vector<std::optional<HFSet>> hf_;
  std::vector<int> j_, j_inv_;
  bool j_identity_ = true;
  std::vector<int> f_elem_;                   // -1 = undefined
  std::vector<std::optional<std::vector<bool>>> f_set_;
  std::vector<int> f_domain_;
  std::optional<std::vector<bool>> s_;
};

// Recoded membership flavors.
bool mem_f(const MembershipStructure& m, int y, int x);      // y in f(x)
bool mem_star(const MembershipStructure& m, int y, int x);   // E(y, j^-1(x)) and x in S
bool mem_prime(const MembershipStructure& m, int y, int x);  // E(y, j^-1(f(x)))

using Assignment = std::map<std::string, int>;

// Brute-force Tarskian evaluation; quantifiers range over the whole domain.
// `mem_as` reinterprets base `mem` atoms as the given flavor; other flavors
// always evaluate natively. Throws EvalError for flavors the structure does
// not support and for unassigned free variables.
bool eval(const MembershipStructure& m, const Formula& phi,
          const Assignment& assignment = {});
bool eval_with_flavor(const MembershipStructure& m, const Formula& phi,
                      RelSym mem_as, const Assignment& assignment = {});

// Reusable evaluator: compiles the formula once and memoizes subformula
// values keyed by the free variables they depend on, which makes repeated
// evaluation over the same structure cheap.
class Evaluator {
 public:
  Evaluator(const MembershipStructure& m, const Formula& phi,
            RelSym mem_as = RelSym::Mem);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;

  bool evaluate(const Assignment& assignment);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Verdict for one check over one structure. For forall*/exists axioms the
// witnesses map each universal tuple to the least witness; a failing check
// records the lexicographically least counterexample tuple instead.
struct AxiomReport {
  std::string check;
  RelSym flavor = RelSym::Mem;
  bool holds = false;
  std::vector<std::pair<std::vector<int>, int>> witnesses;
  std::optional<std::vector<int>> counterexample;
};

AxiomReport check_axiom(const MembershipStructure& m, AxiomId id,
                        RelSym flavor);

enum class ExtScope : std::uint8_t { All, SetsOnly };

// Extensionality under the given flavor: coextensional elements must be
// equal. SetsOnly restricts both sides to dom(f).
AxiomReport check_extensionality(const MembershipStructure& m, RelSym flavor,
                                 ExtScope scope);

// Re-evaluates a report's witnesses / counterexample; true when the stored
// verdict reproduces.
bool verify_report(const MembershipStructure& m, AxiomId id,
                   const AxiomReport& report);

// Closure operators over pair sets (element-valued injective f required):
// upward_set:   { {z,u} : {f(z), f(u)} in x }
// downward_set: { {f(z), f(u)} : {z,u} in x }, pairs leaving dom(f) skipped
PairSet upward_set(const MembershipStructure& m, const PairSet& x);
PairSet downward_set(const MembershipStructure& m, const PairSet& x);

// Preimage { z : f(z) in x } and image { f(z) : z in x }, computed by the
// singleton-pair recipe (through upward_set / downward_set plus a union)
// rather than directly.
std::vector<int> lemma1_preimage(const MembershipStructure& m,
                                 const std::vector<int>& x);
std::vector<int> lemma2_image(const MembershipStructure& m,
                              const std::vector<int>& x);

// Canonical HF-stage structure: domain = members of v_stage(n) named by
// their decimal codes, E = true membership, j = identity.
struct StageOptions {
  enum class SChoice : std::uint8_t { Full, Lower, None };
  SChoice s = SChoice::Full;
  bool with_f = true;                   // f = identity on every element
  std::vector<int> f_permutation;       // optional: f as a permutation of codes
  std::vector<std::uint64_t> exclude_codes;
};
MembershipStructure stage_structure(int n, const StageOptions& opts = {});

}  // namespace strata
