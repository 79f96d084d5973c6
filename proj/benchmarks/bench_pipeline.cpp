#include <benchmark/benchmark.h>

#include "sparsekit/dataset.hpp"
#include "sparsekit/pipeline.hpp"

using namespace sparsekit;

namespace {

struct PipelineFixture {
  SyntheticDataset data;
  Dictionary dict;
  GridSpec grid;

  explicit PipelineFixture(int n_classes) {
    SynthConfig cfg;
    cfg.n_classes = n_classes;
    cfg.n_test_per_class = 2;
    data = generate_synthetic(cfg);
    grid = GridSpec{55, 66, 11, 11};
    dict = build_dictionary(data.train, grid);
  }
};

// Full-image classification at the reference geometry (121 patches).
void BM_ClassifyImage(benchmark::State& state) {
  const PipelineFixture fixture(int(state.range(0)));
  const StoppingRule rule = default_stopping_rule(fixture.grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        classify_image(fixture.dict, fixture.data.test.front().image, rule));
  }
  state.counters["dict_cols"] = double(fixture.dict.n_train());
}

void BM_BuildDictionary(benchmark::State& state) {
  SynthConfig cfg;
  cfg.n_classes = int(state.range(0));
  cfg.n_test_per_class = 1;
  const SyntheticDataset data = generate_synthetic(cfg);
  const GridSpec grid{55, 66, 11, 11};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_dictionary(data.train, grid));
  }
}

}  // namespace

BENCHMARK(BM_ClassifyImage)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildDictionary)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
