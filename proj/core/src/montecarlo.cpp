#include "qmr/montecarlo.hpp"

#include <cmath>
#include <sstream>

namespace qmr {

std::string_view noise_model_name(NoiseModel model) {
  switch (model) {
    case NoiseModel::multinomial: return "multinomial";
    case NoiseModel::poisson: return "poisson";
  }
  throw std::logic_error("unreachable");
}

std::optional<NoiseModel> parse_noise_model(std::string_view name) {
  if (name == "multinomial") return NoiseModel::multinomial;
  if (name == "poisson") return NoiseModel::poisson;
  return std::nullopt;
}

void validate_shot_config(const ShotConfig& cfg) {
  if (cfg.shots_per_setting < 1) {
    throw std::invalid_argument("ShotConfig: shots_per_setting must be at least 1");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

std::mt19937_64 stream_engine(std::uint64_t base, std::uint64_t index) {
  return std::mt19937_64(derive_stream_seed(base, index));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t binomial_draw(std::mt19937_64& rng, std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial_draw: p must lie in [0, 1]");
  }
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (uniform01(rng) < p) ++hits;
  }
  return hits;
}

std::uint64_t poisson_draw(std::mt19937_64& rng, double mean) {
  if (!(mean >= 0.0)) {
    throw std::invalid_argument("poisson_draw: mean must be non-negative");
  }
  std::uint64_t arrivals = 0;
  double elapsed = 0.0;
  while (true) {
    // u in (0, 1] so the exponential increment is finite.
    const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
    elapsed += -std::log(u);
    if (elapsed > mean) break;
    ++arrivals;
  }
  return arrivals;
}

CountRecord sample_counts(const DensityMatrix& rho, MeasurementSetting setting,
                          const ShotConfig& cfg) {
  validate_shot_config(cfg);
  const auto probs = born_probabilities(rho, setting);
  std::mt19937_64 rng = stream_engine(cfg.seed, static_cast<std::uint64_t>(setting));
  const std::uint64_t n = cfg.shots_per_setting;
  if (cfg.noise_model == NoiseModel::multinomial) {
    const std::uint64_t n0 = binomial_draw(rng, n, probs[0]);
    return CountRecord{setting, n0, n - n0};
  }
  const std::uint64_t n0 = poisson_draw(rng, static_cast<double>(n) * probs[0]);
  const std::uint64_t n1 = poisson_draw(rng, static_cast<double>(n) * probs[1]);
  return CountRecord{setting, n0, n1};
}

ProtocolCounts simulate_protocol_counts(const PureState& psi, const ProtocolParams& params,
                                        const ShotConfig& cfg) {
  validate_shot_config(cfg);
  const PipelineOutcome outcome = apply_pipeline(psi, params);
  const double t = outcome.success_probability;
  if (t <= 0.0) {
    throw DegenerateOutcomeError("simulate_protocol_counts: transmittance is zero");
  }

  ProtocolCounts result{TomographyInput(TomographyInput::Kind::counts),
                        {},
                        cfg.shots_per_setting,
                        {},
                        0.0,
                        t};
  std::uint64_t total_kept = 0;
  for (MeasurementSetting setting : kAllSettings) {
    const std::size_t s = static_cast<std::size_t>(setting);
    const auto probs = born_probabilities(outcome.state, setting);
    std::mt19937_64 rng = stream_engine(cfg.seed, s);
    std::uint64_t kept, n0, n1;
    if (cfg.noise_model == NoiseModel::multinomial) {
      kept = binomial_draw(rng, cfg.shots_per_setting, t);
      n0 = binomial_draw(rng, kept, probs[0]);
      n1 = kept - n0;
    } else {
      const double mean = static_cast<double>(cfg.shots_per_setting) * t;
      n0 = poisson_draw(rng, mean * probs[0]);
      n1 = poisson_draw(rng, mean * probs[1]);
      kept = n0 + n1;
    }
    result.kept[s] = kept;
    total_kept += kept;
    result.records.push_back(CountRecord{setting, n0, n1});
    result.tomography_input.set_counts(setting, n0, n1);
  }
  result.observed_transmittance =
      static_cast<double>(total_kept) /
      (3.0 * static_cast<double>(cfg.shots_per_setting));
  return result;
}

std::string counts_to_csv(const ProtocolCounts& counts) {
  std::ostringstream out;
  out << "setting,outcome0,outcome1,attempted,kept\n";
  for (const CountRecord& record : counts.records) {
    out << setting_name(record.setting) << ',' << record.outcome0 << ',' << record.outcome1
        << ',' << counts.attempted_per_setting << ','
        << counts.kept[static_cast<std::size_t>(record.setting)] << '\n';
  }
  return out.str();
}

}  // namespace qmr
