#include <benchmark/benchmark.h>

#include <bqvc/gaussian_sampler.hpp>
#include <bqvc/quantile_sampler.hpp>
#include <bqvc/simulate.hpp>

namespace {

bqvc::SimulatedData bench_data(Eigen::Index p) {
  bqvc::ScenarioSpec spec;
  spec.p = p;
  spec.seed = 3;
  return bqvc::simulate_dataset(spec);
}

void BM_QuantileSweep(benchmark::State& state) {
  const auto sim = bench_data(state.range(0));
  const bqvc::ExpandedDesign design(sim.data, {2, 2});
  bqvc::QuantileSampler sampler(design, sim.data, bqvc::QuantileLevel(0.5), {},
                                state.range(1) != 0);
  bqvc::Rng rng(1);
  for (int i = 0; i < 200; ++i) sampler.sweep(rng);
  for (auto _ : state) sampler.sweep(rng);
}
BENCHMARK(BM_QuantileSweep)->Args({100, 1})->Args({100, 0})->Args({20, 1});

void BM_GaussianSweep(benchmark::State& state) {
  const auto sim = bench_data(state.range(0));
  const bqvc::ExpandedDesign design(sim.data, {2, 2});
  bqvc::GaussianSampler sampler(design, sim.data, {}, state.range(1) != 0);
  bqvc::Rng rng(1);
  for (int i = 0; i < 200; ++i) sampler.sweep(rng);
  for (auto _ : state) sampler.sweep(rng);
}
BENCHMARK(BM_GaussianSweep)->Args({100, 1})->Args({100, 0});

void BM_BasisMatrix(benchmark::State& state) {
  const auto grid = bqvc::uniform_grid(state.range(0));
  const bqvc::SplineConfig config(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(bqvc::basis_matrix(grid, config));
}
BENCHMARK(BM_BasisMatrix)->Arg(200)->Arg(2000);

void BM_ExpandedDesign(benchmark::State& state) {
  const auto sim = bench_data(100);
  for (auto _ : state) {
    bqvc::ExpandedDesign design(sim.data, {2, 2});
    benchmark::DoNotOptimize(design.matrix().data());
  }
}
BENCHMARK(BM_ExpandedDesign);

void BM_InverseGaussian(benchmark::State& state) {
  bqvc::Rng rng(2);
  double mean = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(bqvc::sample_inverse_gaussian(rng, mean, 2.5));
}
BENCHMARK(BM_InverseGaussian);

void BM_Gamma(benchmark::State& state) {
  bqvc::Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(bqvc::sample_gamma(rng, 301.5, 150.0));
}
BENCHMARK(BM_Gamma);

}  // namespace

BENCHMARK_MAIN();
