#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmr/montecarlo.hpp"
#include "qmr/optics.hpp"
#include "qmr/tomography.hpp"

namespace qmr {

/// Reversing-strength policy: optimal p_r = p + D(1-p), or p_r = p when the
/// decoherence magnitude is not known in advance.
enum class Strategy { optimal, equal };

/// How each experiment is evaluated: closed-form operator algebra, the
/// component-level optical model, or seeded photon counting.
enum class Mode { analytic, optical, montecarlo };

std::string_view strategy_name(Strategy strategy);
std::string_view mode_name(Mode mode);
std::optional<Strategy> parse_strategy(std::string_view name);
std::optional<Mode> parse_mode(std::string_view name);

/// Configuration problem (bad file, bad flag value, inconsistent grid).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Resolved configuration for every subcommand. Sweeps read the D list and
/// the p grid; single-point commands read d_single / p_single / states.
struct SweepConfig {
  std::vector<double> d_values = {0.5, 0.7, 0.8};
  double p_start = 0.0;
  double p_stop = 0.95;
  double p_step = 0.05;
  double d_single = 0.5;
  double p_single = 0.9;
  Strategy strategy = Strategy::optimal;
  Mode mode = Mode::analytic;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 1;
  NoiseModel noise = NoiseModel::multinomial;
  std::vector<std::string> states = {"H", "V", "R"};
  std::string out;          // empty writes to stdout
  bool d_explicit = false;  // whether 'd' came from config/flags
  bool states_explicit = false;
};

/// One key of a flat key-value config file, with its line for diagnostics.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line;
};

std::vector<ConfigEntry> read_config_file(const std::string& path);

/// Applies "key = value". Throws ConfigError naming the key (and line when
/// positive) on unknown keys or unparsable values.
void set_config_value(SweepConfig& cfg, const std::string& key, const std::string& value,
                      int line = 0);
void apply_config_entries(SweepConfig& cfg, const std::vector<ConfigEntry>& entries);

/// The p grid start, start+step, ..., up to stop (inclusive within rounding).
std::vector<double> p_grid(const SweepConfig& cfg);

/// Named input state: H, V, D, A, R, L, or "wp:<hwp_deg>:<qwp_deg>" for a
/// waveplate-prepared state (degrees).
PureState parse_state(const std::string& label);

/// 12 significant digits, '.' decimal separator, locale-independent.
std::string format_real(double value);

// Command engines. Each returns the complete output file contents:
// CSV with a '#' resolved-configuration header block, or JSON.
std::string run_sweep_fidelity(const SweepConfig& cfg);
std::string run_sweep_transmittance(const SweepConfig& cfg);
std::string run_bloch_trajectory(const SweepConfig& cfg);
std::string run_qpt(const SweepConfig& cfg);
std::string run_simulate_counts(const SweepConfig& cfg);

/// Process fidelity of one grid point in the requested mode (analytic and
/// optical agree to numerical precision; montecarlo adds shot noise).
double fidelity_at(double p, double d, Strategy strategy, Mode mode, const SweepConfig& cfg,
                   std::uint64_t stream_index);

}  // namespace qmr
