#include <benchmark/benchmark.h>

#include "sparsekit/omp.hpp"
#include "sparsekit/random.hpp"

using namespace sparsekit;

namespace {

Mat make_dictionary(std::uint64_t seed, Index rows, Index cols) {
  Rng rng(seed);
  Mat m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) m(r, c) = rng.gaussian();
    m.col(c) /= m.col(c).norm();
  }
  return m;
}

Vec make_signal(std::uint64_t seed, Index rows) {
  Rng rng(seed);
  Vec y(rows);
  for (Index i = 0; i < rows; ++i) y[i] = rng.gaussian();
  return y / y.norm();
}

// Patch-scale solve: rows = patch length, cols = training columns.
void BM_OmpFullSolve(benchmark::State& state) {
  const Index rows = state.range(0);
  const Index cols = state.range(1);
  const Mat dict = make_dictionary(1, rows, cols);
  const Vec y = make_signal(2, rows);
  const StoppingRule rule = ExactSparsity{rows};
  for (auto _ : state) {
    benchmark::DoNotOptimize(omp_solve(dict, y, rule));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_OmpSparseSolve(benchmark::State& state) {
  const Mat dict = make_dictionary(3, 32, 64);
  const Vec y = make_signal(4, 32);
  const StoppingRule rule = ExactSparsity{state.range(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(omp_solve(dict, y, rule));
  }
}

void BM_MutualCoherence(benchmark::State& state) {
  const Mat dict = make_dictionary(5, 30, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mutual_coherence(dict));
  }
}

}  // namespace

BENCHMARK(BM_OmpFullSolve)->Args({30, 140})->Args({30, 1400})->Args({63, 280});
BENCHMARK(BM_OmpSparseSolve)->Arg(3)->Arg(10)->Arg(30);
BENCHMARK(BM_MutualCoherence)->Arg(140)->Arg(1400);
