#include <benchmark/benchmark.h>

#include "resdyn/census.hpp"
#include "resdyn/conjugacy.hpp"
#include "resdyn/reduction.hpp"
#include "test_support.hpp"

namespace {

using resdyn::testing::quadratic;

void BM_MinimizeExponent(benchmark::State& state) {
  // z + 2/z at 2: e_2 = 1 already meets the congruence floor, so this times the early exit.
  const auto phi = quadratic(1, 0, 2, 0, 1, 0);
  resdyn::SearchBudget budget = resdyn::SearchBudget::defaults(2);
  budget.max_power = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(resdyn::minimize_exponent(phi, resdyn::Integer(2), budget));
}
BENCHMARK(BM_MinimizeExponent)->DenseRange(1, 5, 2);

void BM_ReductionReport(benchmark::State& state) {
  const auto phi = resdyn::testing::random_morphism(1, 2, 9);
  const auto budget = resdyn::SearchBudget::defaults(2);
  for (auto _ : state) benchmark::DoNotOptimize(resdyn::reduction_report(phi, budget));
}
BENCHMARK(BM_ReductionReport);

void BM_ConjugacyUnknown(benchmark::State& state) {
  // z + 2/z against z + 3/z exhausts the whole search box.
  const auto a = resdyn::twist_family_member(2);
  const auto b = resdyn::twist_family_member(3);
  resdyn::SearchBudget budget = resdyn::SearchBudget::defaults(2);
  budget.conjugacy_box = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(resdyn::conjugacy_test(a, b, budget));
}
BENCHMARK(BM_ConjugacyUnknown)->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);

void BM_CensusRecord(benchmark::State& state) {
  const resdyn::CensusConfig config;
  const auto phi = resdyn::testing::random_morphism(1, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(resdyn::make_census_record(phi, config));
}
BENCHMARK(BM_CensusRecord);

}  // namespace
