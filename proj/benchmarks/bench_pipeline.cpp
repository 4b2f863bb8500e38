#include <benchmark/benchmark.h>

#include "qmr/montecarlo.hpp"
#include "qmr/optics.hpp"
#include "qmr/sweep.hpp"
#include "qmr/tomography.hpp"

namespace {

using namespace qmr;

void BM_apply_pipeline(benchmark::State& state) {
  const ProtocolParams params{0.9, 0.5, optimal_reversal_strength(0.9, 0.5)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_pipeline(state_r(), params));
  }
}
BENCHMARK(BM_apply_pipeline);

void BM_full_optical_pipeline(benchmark::State& state) {
  const WaveplateAngles angles{strength_to_angle(0.9), strength_to_angle(0.5),
                               strength_to_angle(0.95)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_optical_pipeline(state_r(), angles));
  }
}
BENCHMARK(BM_full_optical_pipeline);

void BM_suppressed_chi(benchmark::State& state) {
  const ProtocolParams params{0.9, 0.8, optimal_reversal_strength(0.9, 0.8)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(process_fidelity(
        chi_of_map([&](const Matrix2& rho) { return pipeline_map(rho, params); })));
  }
}
BENCHMARK(BM_suppressed_chi);

void BM_qst_reconstruct_exact(benchmark::State& state) {
  const DensityMatrix rho = final_state_optimal(state_r(), 0.9, 0.5);
  const TomographyInput input = TomographyInput::exact_for(rho);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qst_reconstruct(input));
  }
}
BENCHMARK(BM_qst_reconstruct_exact);

void BM_sample_counts_10k(benchmark::State& state) {
  const DensityMatrix rho = final_state_optimal(state_r(), 0.9, 0.5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_counts(rho, MeasurementSetting::Y, ShotConfig{10000, seed++}));
  }
}
BENCHMARK(BM_sample_counts_10k);

void BM_haar_random_state(benchmark::State& state) {
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_random_state(rng));
  }
}
BENCHMARK(BM_haar_random_state);

}  // namespace

BENCHMARK_MAIN();
