#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/structure.hpp"

namespace strata {

// Which recoded membership a recipe targets: Prime follows the j-and-f
// construction and validates under mem', Star follows the shifted-map
// construction and validates under mem*. Complements and pairing only have
// Prime recipes.
enum class RecipeFamily : std::uint8_t { Prime, Star };

// Two readings of the image/recode step order in the intersection-set
// recipe; which one validates is recorded by the acceptance suite.
enum class PiVariant : std::uint8_t { A, B };

struct TraceStep {
  std::string label;
  std::string value;
};

struct WitnessOutcome {
  AxiomId axiom;
  RecipeFamily family = RecipeFamily::Prime;
  std::vector<int> inputs;
  std::optional<int> witness;
  bool validated = false;
  std::vector<TraceStep> trace;
  std::optional<std::string> failure;       // human-readable, names the step
  std::optional<std::string> failure_kind;  // missing-code | outside-range | ...
};

// Executes the explicit witness constructions against one structure. The
// session caches the axiom-matrix evaluators, so validating many inputs on
// the same structure stays cheap. Structural preconditions (wrong f mode,
// missing S for a Star recipe) throw EvalError; per-input failures such as
// an absent code are reported in the outcome instead.
class WitnessSession {
 public:
  explicit WitnessSession(const MembershipStructure& m);
  ~WitnessSession();

  WitnessOutcome complement(int x);
  WitnessOutcome pair(int a, int b);
  WitnessOutcome set_union(int x, RecipeFamily family);
  WitnessOutcome compose(int x, int y, RecipeFamily family);
  WitnessOutcome intersection_set(RecipeFamily family,
                                  PiVariant variant = PiVariant::A);

  const MembershipStructure& structure() const { return m_; }

 private:
  struct Impl;
  const MembershipStructure& m_;
  std::unique_ptr<Impl> impl_;
};

// One-shot wrappers.
WitnessOutcome complement_witness(const MembershipStructure& m, int x);
WitnessOutcome pair_witness(const MembershipStructure& m, int a, int b);
WitnessOutcome union_witness(const MembershipStructure& m, int x,
                             RecipeFamily family = RecipeFamily::Star);
WitnessOutcome compose_witness(const MembershipStructure& m, int x, int y,
                               RecipeFamily family = RecipeFamily::Star);
WitnessOutcome pi_witness(const MembershipStructure& m,
                          RecipeFamily family = RecipeFamily::Star,
                          PiVariant variant = PiVariant::A);

// The swap of the codes of {} and {{}} over a stage structure: not a
// membership automorphism, yet upward/downward through it agree with the
// direct image/preimage oracles and with the split-into-fixed-and-swapped
// computation on every checked pair set.
struct TranspositionReport {
  int stage = 0;
  bool automorphism = true;              // expected false
  std::optional<std::pair<int, int>> violation;  // lex-least violating pair
  std::string violation_ids;
  std::size_t pair_sets_checked = 0;
  bool upward_agrees = false;
  bool downward_agrees = false;
  bool partition_agrees = false;
};
TranspositionReport transposition_example(int stage);

}  // namespace strata
