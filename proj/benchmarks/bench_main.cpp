// Microbenchmarks for the hot paths: stratification, brute-force evaluation,
// the pair-set algebra, and the code round-trip.

#include <benchmark/benchmark.h>

#include <random>

#include "strata/search.hpp"
#include "strata/stratify.hpp"
#include "strata/witness.hpp"

namespace {

using namespace strata;

void bench_stratify_axioms(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& [id, f] : builtin_axioms()) {
      benchmark::DoNotOptimize(stratify(f));
    }
  }
}
BENCHMARK(bench_stratify_axioms);

void bench_parse_print(benchmark::State& state) {
  std::string text = print_formula(builtin_axiom(AxiomId::UnorderedComposition));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_formula(text));
  }
}
BENCHMARK(bench_parse_print);

void bench_ack_roundtrip(benchmark::State& state) {
  for (auto _ : state) {
    for (std::uint64_t n = 0; n < 2048; ++n) {
      benchmark::DoNotOptimize(ack_encode(ack_decode(n)));
    }
  }
}
BENCHMARK(bench_ack_roundtrip);

void bench_ustar_compose(benchmark::State& state) {
  std::mt19937_64 rng(11);
  HFSet v4 = v_stage(4);
  auto elems = v4.elements();
  auto random_pair_set = [&] {
    std::vector<HFSet> pairs;
    for (int i = 0; i < 12; ++i) {
      pairs.push_back(unordered_pair(elems[rng() % elems.size()],
                                     elems[rng() % elems.size()]));
    }
    return HFSet::from_elements(std::move(pairs));
  };
  HFSet c = random_pair_set();
  HFSet d = random_pair_set();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ustar_compose(c, d));
  }
}
BENCHMARK(bench_ustar_compose);

void bench_check_axiom_v3(benchmark::State& state) {
  MembershipStructure m = stage_structure(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_axiom(m, AxiomId::SetUnion, RelSym::MemPrime));
  }
}
BENCHMARK(bench_check_axiom_v3);

void bench_find_model_size2(benchmark::State& state) {
  SearchSpec spec;
  spec.domain_size = 2;
  spec.f_mode = FMode::SetValued;
  spec.require_total = true;
  spec.require_injective = true;
  spec.checks.push_back({AxiomId::Complements, std::nullopt, RelSym::MemF});
  spec.checks.push_back({std::nullopt, ExtScope::SetsOnly, RelSym::MemF});
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_model(spec));
  }
}
BENCHMARK(bench_find_model_size2);

}  // namespace

BENCHMARK_MAIN();
