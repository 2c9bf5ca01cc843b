#include <benchmark/benchmark.h>

#include "resdyn/determinant.hpp"
#include "test_support.hpp"

namespace {

using resdyn::DenseMatrix;
using resdyn::Integer;

DenseMatrix<Integer> random_integer_matrix(std::size_t size, long bound) {
  DenseMatrix<Integer> m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) m(i, j) = resdyn::testing::uniform(-bound, bound);
  }
  return m;
}

void BM_Bareiss(benchmark::State& state) {
  const auto m = random_integer_matrix(static_cast<std::size_t>(state.range(0)), 99);
  for (auto _ : state) benchmark::DoNotOptimize(resdyn::bareiss_determinant(m));
}
BENCHMARK(BM_Bareiss)->RangeMultiplier(2)->Range(8, 64);

void BM_ModularCrt(benchmark::State& state) {
  const auto m = random_integer_matrix(static_cast<std::size_t>(state.range(0)), 99);
  for (auto _ : state) benchmark::DoNotOptimize(resdyn::modular_determinant(m));
}
BENCHMARK(BM_ModularCrt)->RangeMultiplier(2)->Range(8, 64);

// Rational entries go through row scaling before elimination.
void BM_ExactRational(benchmark::State& state) {
  const auto backend = static_cast<resdyn::DeterminantBackend>(state.range(1));
  DenseMatrix<resdyn::Rational> m(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = resdyn::testing::random_rational(20);
  }
  for (auto _ : state) benchmark::DoNotOptimize(resdyn::exact_determinant(m, backend));
  state.SetLabel(std::string(resdyn::to_string(backend)));
}
BENCHMARK(BM_ExactRational)->ArgsProduct({{10, 30}, {0, 1}});

}  // namespace
