// SPDX-License-Identifier: Apache-2.0
//
// Micro benchmarks of the hot paths of a synthesis run on the default
// 36 x 36 array.

#include <benchmark/benchmark.h>

#include <memory>

#include "beamsynth/array_config.hpp"
#include "beamsynth/beam_evaluator.hpp"
#include "beamsynth/cost.hpp"
#include "beamsynth/ga.hpp"
#include "beamsynth/geom.hpp"
#include "beamsynth/radiation.hpp"
#include "beamsynth/random.hpp"

namespace {

using namespace beamsynth;

ActivationMask random_mask(const ArrayConfig& c, std::uint64_t seed, double density = 0.5) {
  Rng rng(seed);
  ActivationMask m(c.subarray_count_x, c.subarray_count_y);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) m.set(i, j, rng.bernoulli(density));
  }
  m.set(m.rows() / 2, m.cols() / 2, true);
  return m;
}

const std::shared_ptr<const pattern::CouplingKernel>& search_kernel() {
  static const auto kernel = std::make_shared<const pattern::CouplingKernel>(ArrayConfig{});
  return kernel;
}

ga::BeamSpec scenario_one() {
  ga::BeamSpec spec;
  spec.target = {39.3, -5.3};
  return spec;
}

void BM_CouplingKernelBuild(benchmark::State& state) {
  const ArrayConfig c;
  for (auto _ : state) {
    pattern::CouplingKernel kernel(c);
    benchmark::DoNotOptimize(kernel);
  }
}
BENCHMARK(BM_CouplingKernelBuild)->Unit(benchmark::kMillisecond);

void BM_MaskAutocorrelation(benchmark::State& state) {
  const auto mask = random_mask(ArrayConfig{}, 1);
  for (auto _ : state) {
    pattern::MaskAutocorrelation r(mask);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MaskAutocorrelation)->Unit(benchmark::kMicrosecond);

void BM_RadiatedPower(benchmark::State& state) {
  const auto mask = random_mask(ArrayConfig{}, 2);
  const pattern::SteeredKernel steered(*search_kernel(),
                                       geom::to_direction_cosines({6.5, 200.0}));
  for (auto _ : state) benchmark::DoNotOptimize(steered.radiated_power(mask));
}
BENCHMARK(BM_RadiatedPower)->Unit(benchmark::kMicrosecond);

void BM_PrincipalCuts(benchmark::State& state) {
  const auto evaluator =
      ga::make_evaluator(search_kernel(), geom::OrbitGeometry{}, scenario_one(), 0.01);
  const auto mask = random_mask(ArrayConfig{}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.cuts(mask));
}
BENCHMARK(BM_PrincipalCuts)->Unit(benchmark::kMicrosecond);

void BM_BeamMetrics(benchmark::State& state) {
  const auto evaluator =
      ga::make_evaluator(search_kernel(), geom::OrbitGeometry{}, scenario_one(), 0.01);
  const auto mask = random_mask(ArrayConfig{}, 4, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.metrics(mask));
}
BENCHMARK(BM_BeamMetrics)->Unit(benchmark::kMicrosecond);

void BM_ChromosomeEvaluation(benchmark::State& state) {
  const auto evaluator =
      ga::make_evaluator(search_kernel(), geom::OrbitGeometry{}, scenario_one(), 0.01);
  const auto mask = random_mask(ArrayConfig{}, 5, 0.8);
  const auto spec = scenario_one();
  for (auto _ : state) benchmark::DoNotOptimize(ga::evaluate(mask, evaluator, spec));
}
BENCHMARK(BM_ChromosomeEvaluation)->Unit(benchmark::kMicrosecond);

void BM_ShortSynthesis(benchmark::State& state) {
  ga::GaConfig config;
  config.population_size = 20;
  config.max_generations = static_cast<int>(state.range(0));
  ga::SynthesisOptions options;
  options.threads = 1;
  options.search_kernel = search_kernel();
  options.report_kernel = search_kernel();
  options.report = options.search;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ga::synthesize(ArrayConfig{}, geom::OrbitGeometry{}, scenario_one(), config, options));
  }
}
BENCHMARK(BM_ShortSynthesis)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
