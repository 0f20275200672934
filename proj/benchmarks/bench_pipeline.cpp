#include <benchmark/benchmark.h>

#include "decompound/charfun.hpp"
#include "decompound/distlog.hpp"
#include "decompound/estimator.hpp"
#include "decompound/fft.hpp"
#include "decompound/processes.hpp"

namespace {

using namespace decompound;

ModelSpec reference_spec(std::int64_t n) {
  ModelSpec spec;
  spec.lambda = 1.0;
  spec.jump_law = normal_jump_law();
  spec.n = n;
  return spec;
}

EstimatorConfig reference_config() {
  EstimatorConfig cfg;
  cfg.h = 0.5;
  cfg.x_grid.resize(401);
  for (std::size_t k = 0; k < cfg.x_grid.size(); ++k)
    cfg.x_grid[k] = 0.02 * static_cast<double>(k) - 4.0;
  return cfg;
}

void BM_SimulateObservations(benchmark::State& state) {
  const ModelSpec spec = reference_spec(state.range(0));
  for (auto _ : state) {
    const ObservationSet obs = simulate_observations(spec, 42);
    benchmark::DoNotOptimize(obs.values.data());
  }
}
BENCHMARK(BM_SimulateObservations)->Arg(1000)->Arg(5000);

void BM_Ecf(benchmark::State& state) {
  const ModelSpec spec = reference_spec(state.range(0));
  const ObservationSet obs = simulate_observations(spec, 42);
  const FrequencyGrid grid = grid_to_cutoff(0x1p-9, 2.0);
  for (auto _ : state) {
    const ComplexSeries e = ecf(obs, grid);
    benchmark::DoNotOptimize(e.values.data());
  }
}
BENCHMARK(BM_Ecf)->Arg(1000)->Arg(5000);

void BM_UnwrapLog(benchmark::State& state) {
  const ModelSpec spec = reference_spec(5000);
  const ObservationSet obs = simulate_observations(spec, 42);
  const FrequencyGrid grid = grid_to_cutoff(0x1p-9, 2.0);
  const ComplexSeries psi = deconvolve_gaussian(ecf(obs, grid), spec.lambda);
  for (auto _ : state) {
    const UnwrappedLog log = unwrap_log(psi);
    benchmark::DoNotOptimize(log.log_values.data());
  }
}
BENCHMARK(BM_UnwrapLog);

void BM_EstimateDirect(benchmark::State& state) {
  const ModelSpec spec = reference_spec(5000);
  const ObservationSet obs = simulate_observations(spec, 42);
  const EstimatorConfig cfg = reference_config();
  for (auto _ : state) {
    const DensityEstimate est = estimate_density(obs, spec.lambda, cfg);
    benchmark::DoNotOptimize(est.f_hat.data());
  }
}
BENCHMARK(BM_EstimateDirect);

void BM_EstimateFft(benchmark::State& state) {
  const ModelSpec spec = reference_spec(5000);
  const ObservationSet obs = simulate_observations(spec, 42);
  EstimatorConfig cfg = reference_config();
  cfg.x_grid = fft_x_grid(-4.0, 401, cfg.eta, cfg.fft_size);
  for (auto _ : state) {
    const DensityEstimate est = estimate_density(obs, spec.lambda, cfg);
    benchmark::DoNotOptimize(est.f_hat.data());
  }
}
BENCHMARK(BM_EstimateFft);

void BM_Fft4096(benchmark::State& state) {
  std::vector<std::complex<double>> buf(4096);
  for (std::size_t j = 0; j < buf.size(); ++j)
    buf[j] = {std::cos(0.001 * static_cast<double>(j)), std::sin(0.002 * static_cast<double>(j))};
  for (auto _ : state) {
    std::vector<std::complex<double>> work = buf;
    fft_pow2(work);
    benchmark::DoNotOptimize(work.data());
  }
}
BENCHMARK(BM_Fft4096);

}  // namespace

BENCHMARK_MAIN();
