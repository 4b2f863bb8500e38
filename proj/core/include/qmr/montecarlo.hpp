#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qmr/channels.hpp"
#include "qmr/qubit.hpp"
#include "qmr/tomography.hpp"

namespace qmr {

enum class NoiseModel { multinomial, poisson };

std::string_view noise_model_name(NoiseModel model);
std::optional<NoiseModel> parse_noise_model(std::string_view name);

/// Shot budget and seeding for one counting run.
struct ShotConfig {
  std::uint64_t shots_per_setting;
  std::uint64_t seed;
  NoiseModel noise_model = NoiseModel::multinomial;
};

void validate_shot_config(const ShotConfig& cfg);

/// Outcome counts for one analyzer setting. outcome0 counts the +1 eigenstate.
struct CountRecord {
  MeasurementSetting setting;
  std::uint64_t outcome0;
  std::uint64_t outcome1;
};

// Deterministic stream derivation: every independent sampling job draws from
// mt19937_64 seeded with splitmix64(base + (index+1) * 0x9E3779B97F4A7C15),
// so parallel and serial evaluation orders agree. splitmix64 is the standard
// published mixer; mt19937_64's output sequence for a given 64-bit seed is
// fixed by the C++ standard. Uniform doubles are (x >> 11) * 2^-53.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index);
std::mt19937_64 stream_engine(std::uint64_t base, std::uint64_t index);

double uniform01(std::mt19937_64& rng);

/// Sum of n Bernoulli(p) draws; exact and platform-independent.
std::uint64_t binomial_draw(std::mt19937_64& rng, std::uint64_t n, double p);

/// Number of unit-rate exponential arrivals within [0, mean].
std::uint64_t poisson_draw(std::mt19937_64& rng, double mean);

/// Draws counts for one setting from the Born probabilities of rho.
/// Deterministic per (cfg.seed, setting index).
CountRecord sample_counts(const DensityMatrix& rho, MeasurementSetting setting,
                          const ShotConfig& cfg);

/// Full counting run of the suppression protocol: per setting, post-selection
/// thins cfg.shots_per_setting attempts by the transmittance, then the kept
/// ensemble is measured.
struct ProtocolCounts {
  TomographyInput tomography_input;
  std::vector<CountRecord> records;        // one per setting, Z, X, Y order
  std::uint64_t attempted_per_setting;
  std::array<std::uint64_t, 3> kept;
  double observed_transmittance;           // total kept / total attempted
  double exact_transmittance;
};

ProtocolCounts simulate_protocol_counts(const PureState& psi, const ProtocolParams& params,
                                        const ShotConfig& cfg);

/// CSV rows "setting,outcome0,outcome1,attempted,kept" with a header line.
std::string counts_to_csv(const ProtocolCounts& counts);

}  // namespace qmr
