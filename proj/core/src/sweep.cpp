#include "qmr/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qmr {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char delimiter) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream stream(text);
  while (std::getline(stream, current, delimiter)) {
    parts.push_back(trim(current));
  }
  return parts;
}

[[noreturn]] void config_fail(const std::string& message, int line) {
  if (line > 0) {
    throw ConfigError("config error at line " + std::to_string(line) + ": " + message);
  }
  throw ConfigError("config error: " + message);
}

double parse_double(const std::string& value, const std::string& key, int line) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    config_fail("field '" + key + "': cannot parse '" + value + "' as a number", line);
  }
}

double parse_unit_interval(const std::string& value, const std::string& key, int line) {
  const double parsed = parse_double(value, key, line);
  if (!(parsed >= 0.0 && parsed <= 1.0)) {
    config_fail("field '" + key + "': value " + value + " outside [0, 1]", line);
  }
  return parsed;
}

std::uint64_t parse_uint(const std::string& value, const std::string& key, int line) {
  try {
    if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    config_fail("field '" + key + "': cannot parse '" + value + "' as an unsigned integer", line);
  }
}

// Worker pool over [0, count); results must be written to per-index slots so
// assembly order stays deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  std::size_t workers = std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, 8);
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  if (error) std::rethrow_exception(error);
}

ProtocolParams params_for(double p, double d, Strategy strategy) {
  const double p_r = strategy == Strategy::optimal ? optimal_reversal_strength(p, d) : p;
  return ProtocolParams{p, d, p_r};
}

WaveplateAngles angles_for(const ProtocolParams& params) {
  return WaveplateAngles{strength_to_angle(params.p), strength_to_angle(params.D),
                         strength_to_angle(params.p_r)};
}

TomographyInput sample_tomography(const DensityMatrix& rho, const ShotConfig& cfg) {
  TomographyInput input(TomographyInput::Kind::counts);
  for (MeasurementSetting setting : kAllSettings) {
    const CountRecord record = sample_counts(rho, setting, cfg);
    input.set_counts(setting, record.outcome0, record.outcome1);
  }
  return input;
}

ChiMatrix suppressed_chi_analytic(const ProtocolParams& params) {
  return chi_of_map([&params](const Matrix2& rho) { return pipeline_map(rho, params); });
}

ChiMatrix suppressed_chi_optical(const ProtocolParams& params) {
  const WaveplateAngles angles = angles_for(params);
  const auto probes = qpt_probe_states();
  std::array<DensityMatrix, 4> outputs = {pure_to_density(probes[0]), pure_to_density(probes[1]),
                                          pure_to_density(probes[2]), pure_to_density(probes[3])};
  std::array<double, 4> transmittances{};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const PipelineOutcome outcome = full_optical_pipeline(probes[i], angles);
    outputs[i] = outcome.state;
    transmittances[i] = outcome.success_probability;
  }
  return qpt_reconstruct(outputs, transmittances);
}

ChiMatrix suppressed_chi_montecarlo(const ProtocolParams& params, const SweepConfig& cfg,
                                    std::uint64_t base_seed) {
  const auto probes = qpt_probe_states();
  std::array<DensityMatrix, 4> outputs = {pure_to_density(probes[0]), pure_to_density(probes[1]),
                                          pure_to_density(probes[2]), pure_to_density(probes[3])};
  std::array<double, 4> transmittances{};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const ShotConfig shot_cfg{cfg.shots, derive_stream_seed(base_seed, i), cfg.noise};
    const ProtocolCounts counts = simulate_protocol_counts(probes[i], params, shot_cfg);
    outputs[i] = qst_reconstruct(counts.tomography_input);
    transmittances[i] = std::min(counts.observed_transmittance, 1.0);
  }
  return qpt_reconstruct(outputs, transmittances);
}

ChiMatrix bare_chi_optical(double d) {
  const double theta2 = strength_to_angle(d);
  const auto probes = qpt_probe_states();
  std::array<DensityMatrix, 4> outputs = {pure_to_density(probes[0]), pure_to_density(probes[1]),
                                          pure_to_density(probes[2]), pure_to_density(probes[3])};
  std::array<double, 4> transmittances = {1.0, 1.0, 1.0, 1.0};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    outputs[i] = sagnac_decoherence(probes[i], theta2);
  }
  return qpt_reconstruct(outputs, transmittances);
}

ChiMatrix bare_chi_montecarlo(double d, const SweepConfig& cfg, std::uint64_t base_seed) {
  const QuantumOperation damping = amplitude_damping(d);
  const auto probes = qpt_probe_states();
  std::array<DensityMatrix, 4> outputs = {pure_to_density(probes[0]), pure_to_density(probes[1]),
                                          pure_to_density(probes[2]), pure_to_density(probes[3])};
  std::array<double, 4> transmittances = {1.0, 1.0, 1.0, 1.0};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const DensityMatrix damped = damping.apply(pure_to_density(probes[i]));
    const ShotConfig shot_cfg{cfg.shots, derive_stream_seed(base_seed, i), cfg.noise};
    outputs[i] = qst_reconstruct(sample_tomography(damped, shot_cfg));
  }
  return qpt_reconstruct(outputs, transmittances);
}

void append_provenance(std::ostringstream& out, const std::string& command,
                       const SweepConfig& cfg, bool sweep_grid, bool single_point,
                       bool with_states, bool with_shots) {
  out << "# qmr " << command << '\n';
  out << "# mode = " << mode_name(cfg.mode) << '\n';
  out << "# strategy = " << strategy_name(cfg.strategy) << '\n';
  if (sweep_grid) {
    out << "# d = ";
    for (std::size_t i = 0; i < cfg.d_values.size(); ++i) {
      if (i > 0) out << ',';
      out << format_real(cfg.d_values[i]);
    }
    out << '\n';
    out << "# p_start = " << format_real(cfg.p_start) << '\n';
    out << "# p_stop = " << format_real(cfg.p_stop) << '\n';
    out << "# p_step = " << format_real(cfg.p_step) << '\n';
  }
  if (single_point) {
    out << "# d = " << format_real(cfg.d_single) << '\n';
    out << "# p = " << format_real(cfg.p_single) << '\n';
  }
  if (with_states) {
    out << "# states = ";
    for (std::size_t i = 0; i < cfg.states.size(); ++i) {
      if (i > 0) out << ',';
      out << cfg.states[i];
    }
    out << '\n';
  }
  if (with_shots) {
    out << "# shots = " << cfg.shots << '\n';
    out << "# seed = " << cfg.seed << '\n';
    out << "# noise = " << noise_model_name(cfg.noise) << '\n';
  }
}

nlohmann::json config_json(const std::string& command, const SweepConfig& cfg,
                           bool with_states, bool with_shots) {
  nlohmann::json config{
      {"command", command},
      {"mode", std::string(mode_name(cfg.mode))},
      {"strategy", std::string(strategy_name(cfg.strategy))},
      {"d", cfg.d_single},
      {"p", cfg.p_single},
  };
  if (with_states) config["states"] = cfg.states;
  if (with_shots) {
    config["shots"] = cfg.shots;
    config["seed"] = cfg.seed;
    config["noise"] = std::string(noise_model_name(cfg.noise));
  }
  return config;
}

void validate_sweep_inputs(const SweepConfig& cfg) {
  if (cfg.d_values.empty()) {
    throw ConfigError("config error: field 'd': at least one value is required");
  }
  for (double d : cfg.d_values) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw ConfigError("config error: field 'd': value outside [0, 1]");
    }
  }
}

// Single-point commands take one d; an unset 'd' falls back to d_single.
void require_single_point(const SweepConfig& cfg, const std::string& command) {
  if (cfg.d_explicit && cfg.d_values.size() != 1) {
    throw ConfigError("config error: " + command + " needs a single d value");
  }
}

nlohmann::json stage_json(const std::string& name, const DensityMatrix& state,
                          const DensityMatrix& reference) {
  const BlochVector bloch = bloch_from_density(state);
  return nlohmann::json{
      {"stage", name},
      {"bloch", {bloch.x(), bloch.y(), bloch.z()}},
      {"purity", purity(state)},
      {"fidelity_to_initial", fidelity(reference, state)},
  };
}

}  // namespace

std::string_view strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::optimal: return "optimal";
    case Strategy::equal: return "equal";
  }
  throw std::logic_error("unreachable");
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::analytic: return "analytic";
    case Mode::optical: return "optical";
    case Mode::montecarlo: return "montecarlo";
  }
  throw std::logic_error("unreachable");
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "optimal") return Strategy::optimal;
  if (name == "equal") return Strategy::equal;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "analytic") return Mode::analytic;
  if (name == "optical") return Mode::optical;
  if (name == "montecarlo") return Mode::montecarlo;
  return std::nullopt;
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream input(path);
  if (!input) {
    throw ConfigError("config error: cannot open config file '" + path + "'");
  }
  std::vector<ConfigEntry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(input, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    const auto separator = text.find('=');
    if (separator == std::string::npos) {
      config_fail("expected 'key = value', got '" + text + "'", line);
    }
    entries.push_back(ConfigEntry{trim(text.substr(0, separator)),
                                  trim(text.substr(separator + 1)), line});
  }
  return entries;
}

void set_config_value(SweepConfig& cfg, const std::string& key, const std::string& value,
                      int line) {
  if (key == "mode") {
    const auto mode = parse_mode(value);
    if (!mode) config_fail("field 'mode': expected analytic, optical or montecarlo", line);
    cfg.mode = *mode;
  } else if (key == "strategy") {
    const auto strategy = parse_strategy(value);
    if (!strategy) config_fail("field 'strategy': expected optimal or equal", line);
    cfg.strategy = *strategy;
  } else if (key == "noise") {
    const auto noise = parse_noise_model(value);
    if (!noise) config_fail("field 'noise': expected multinomial or poisson", line);
    cfg.noise = *noise;
  } else if (key == "seed") {
    cfg.seed = parse_uint(value, key, line);
  } else if (key == "shots") {
    cfg.shots = parse_uint(value, key, line);
    if (cfg.shots < 1) config_fail("field 'shots': must be at least 1", line);
  } else if (key == "d") {
    const std::vector<std::string> parts = split(value, ',');
    if (parts.empty()) config_fail("field 'd': at least one value is required", line);
    std::vector<double> values;
    for (const std::string& part : parts) {
      values.push_back(parse_unit_interval(part, key, line));
    }
    cfg.d_values = values;
    cfg.d_single = values.front();
    cfg.d_explicit = true;
  } else if (key == "p") {
    cfg.p_single = parse_unit_interval(value, key, line);
  } else if (key == "p_start") {
    cfg.p_start = parse_unit_interval(value, key, line);
  } else if (key == "p_stop") {
    cfg.p_stop = parse_unit_interval(value, key, line);
  } else if (key == "p_step") {
    cfg.p_step = parse_double(value, key, line);
    if (!(cfg.p_step > 0.0)) config_fail("field 'p_step': must be positive", line);
  } else if (key == "states") {
    const std::vector<std::string> parts = split(value, ',');
    if (parts.empty()) config_fail("field 'states': at least one state is required", line);
    for (const std::string& part : parts) {
      parse_state(part);  // validates; throws ConfigError on bad labels
    }
    cfg.states = parts;
    cfg.states_explicit = true;
  } else if (key == "out") {
    cfg.out = value;
  } else {
    config_fail("unknown key '" + key + "'", line);
  }
}

void apply_config_entries(SweepConfig& cfg, const std::vector<ConfigEntry>& entries) {
  for (const ConfigEntry& entry : entries) {
    set_config_value(cfg, entry.key, entry.value, entry.line);
  }
}

std::vector<double> p_grid(const SweepConfig& cfg) {
  if (!(cfg.p_step > 0.0)) throw ConfigError("config error: field 'p_step': must be positive");
  if (!(cfg.p_start >= 0.0 && cfg.p_start <= 1.0 && cfg.p_stop >= 0.0 && cfg.p_stop <= 1.0)) {
    throw ConfigError("config error: p grid must lie within [0, 1]");
  }
  if (cfg.p_start > cfg.p_stop + 1e-12) {
    throw ConfigError("config error: p_start exceeds p_stop");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((cfg.p_stop - cfg.p_start) / cfg.p_step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(cfg.p_start + static_cast<double>(i) * cfg.p_step);
  }
  return grid;
}

PureState parse_state(const std::string& label) {
  if (label == "H") return state_h();
  if (label == "V") return state_v();
  if (label == "D") return state_d();
  if (label == "A") return state_a();
  if (label == "R") return state_r();
  if (label == "L") return state_l();
  if (label.rfind("wp:", 0) == 0) {
    const std::vector<std::string> parts = split(label.substr(3), ':');
    if (parts.size() != 2) {
      throw ConfigError("config error: field 'states': expected wp:<hwp_deg>:<qwp_deg>, got '" +
                        label + "'");
    }
    const double theta_h = parse_double(parts[0], "states", 0);
    const double theta_q = parse_double(parts[1], "states", 0);
    return prepare_state(deg_to_rad(theta_h), deg_to_rad(theta_q));
  }
  throw ConfigError("config error: field 'states': unknown state '" + label +
                    "' (use H, V, D, A, R, L or wp:<hwp_deg>:<qwp_deg>)");
}

std::string format_real(double value) {
  char buffer[40];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
  return std::string(buffer, result.ptr);
}

double fidelity_at(double p, double d, Strategy strategy, Mode mode, const SweepConfig& cfg,
                   std::uint64_t stream_index) {
  const ProtocolParams params = params_for(p, d, strategy);
  switch (mode) {
    case Mode::analytic:
      return process_fidelity(suppressed_chi_analytic(params));
    case Mode::optical:
      return process_fidelity(suppressed_chi_optical(params));
    case Mode::montecarlo:
      return process_fidelity(
          suppressed_chi_montecarlo(params, cfg, derive_stream_seed(cfg.seed, stream_index)));
  }
  throw std::logic_error("unreachable");
}

std::string run_sweep_fidelity(const SweepConfig& cfg) {
  validate_sweep_inputs(cfg);
  const std::vector<double> grid = p_grid(cfg);
  const bool sampled = cfg.mode == Mode::montecarlo;

  const std::size_t rows = cfg.d_values.size() * grid.size();
  std::vector<std::string> lines(rows);
  parallel_for(rows, [&](std::size_t index) {
    const double d = cfg.d_values[index / grid.size()];
    const double p = grid[index % grid.size()];
    const ProtocolParams params = params_for(p, d, cfg.strategy);
    std::ostringstream row;
    row << format_real(d) << ',' << format_real(p) << ',' << format_real(params.p_r) << ','
        << strategy_name(cfg.strategy) << ',';
    const Mode exact_mode = sampled ? Mode::analytic : cfg.mode;
    row << format_real(fidelity_at(p, d, cfg.strategy, exact_mode, cfg, index));
    if (sampled) {
      row << ',' << format_real(fidelity_at(p, d, cfg.strategy, Mode::montecarlo, cfg, index));
    }
    lines[index] = row.str();
  });

  std::ostringstream out;
  append_provenance(out, "sweep-fidelity", cfg, true, false, false, sampled);
  out << "D,p,p_r,strategy,F" << (sampled ? ",F_sampled" : "") << '\n';
  for (const std::string& line : lines) out << line << '\n';
  return out.str();
}

std::string run_sweep_transmittance(const SweepConfig& cfg) {
  validate_sweep_inputs(cfg);
  const std::vector<double> grid = p_grid(cfg);
  const bool sampled = cfg.mode == Mode::montecarlo;

  const std::size_t rows = cfg.d_values.size() * grid.size();
  std::vector<std::string> lines(rows);
  parallel_for(rows, [&](std::size_t index) {
    const double d = cfg.d_values[index / grid.size()];
    const double p = grid[index % grid.size()];
    const ProtocolParams params = params_for(p, d, cfg.strategy);
    double t_ch;
    if (cfg.mode == Mode::optical) {
      const WaveplateAngles angles = angles_for(params);
      t_ch = 0.5 * (full_optical_pipeline(state_h(), angles).success_probability +
                    full_optical_pipeline(state_v(), angles).success_probability);
    } else {
      t_ch = channel_transmittance(params);
    }
    std::ostringstream row;
    row << format_real(d) << ',' << format_real(p) << ',' << format_real(params.p_r) << ','
        << strategy_name(cfg.strategy) << ',' << format_real(t_ch);
    if (sampled) {
      std::mt19937_64 rng = stream_engine(cfg.seed, index);
      double sum = 0.0;
      for (std::uint64_t s = 0; s < cfg.shots; ++s) {
        sum += transmittance(haar_random_state(rng), params);
      }
      row << ',' << format_real(sum / static_cast<double>(cfg.shots));
    }
    lines[index] = row.str();
  });

  std::ostringstream out;
  append_provenance(out, "sweep-transmittance", cfg, true, false, false, sampled);
  out << "D,p,p_r,strategy,T_ch" << (sampled ? ",T_sampled" : "") << '\n';
  for (const std::string& line : lines) out << line << '\n';
  return out.str();
}

std::string run_bloch_trajectory(const SweepConfig& cfg) {
  require_single_point(cfg, "bloch-trajectory");
  if (cfg.states.empty()) {
    throw ConfigError("config error: field 'states': at least one state is required");
  }
  const double d = cfg.d_single;
  const double p = cfg.p_single;
  const ProtocolParams params = params_for(p, d, cfg.strategy);
  const bool sampled = cfg.mode == Mode::montecarlo;

  nlohmann::json trajectories = nlohmann::json::array();
  for (std::size_t k = 0; k < cfg.states.size(); ++k) {
    const PureState psi = parse_state(cfg.states[k]);
    const DensityMatrix reference = pure_to_density(psi);

    DensityMatrix initial = reference;
    DensityMatrix damped = reference;
    DensityMatrix suppressed = reference;
    double transmit;
    if (cfg.mode == Mode::optical) {
      const WaveplateAngles angles = angles_for(params);
      damped = sagnac_decoherence(psi, angles.theta2);
      const PipelineOutcome outcome = full_optical_pipeline(psi, angles);
      suppressed = outcome.state;
      transmit = outcome.success_probability;
    } else {
      damped = amplitude_damping(d).apply(reference);
      const PipelineOutcome outcome = apply_pipeline(psi, params);
      suppressed = outcome.state;
      transmit = outcome.success_probability;
    }
    if (sampled) {
      const std::uint64_t base = derive_stream_seed(cfg.seed, k);
      initial = qst_reconstruct(
          sample_tomography(reference, ShotConfig{cfg.shots, derive_stream_seed(base, 0), cfg.noise}));
      damped = qst_reconstruct(
          sample_tomography(damped, ShotConfig{cfg.shots, derive_stream_seed(base, 1), cfg.noise}));
      const ProtocolCounts counts = simulate_protocol_counts(
          psi, params, ShotConfig{cfg.shots, derive_stream_seed(base, 2), cfg.noise});
      suppressed = qst_reconstruct(counts.tomography_input);
      transmit = counts.observed_transmittance;
    }

    nlohmann::json stages = nlohmann::json::array();
    stages.push_back(stage_json("initial", initial, reference));
    stages.push_back(stage_json("after_damping", damped, reference));
    nlohmann::json suppressed_stage = stage_json("after_suppression", suppressed, reference);
    suppressed_stage["transmittance"] = transmit;
    stages.push_back(suppressed_stage);

    trajectories.push_back(nlohmann::json{{"input", cfg.states[k]}, {"stages", stages}});
  }

  nlohmann::json out{
      {"command", "bloch-trajectory"},
      {"config", config_json("bloch-trajectory", cfg, true, sampled)},
      {"trajectories", trajectories},
  };
  return out.dump(2) + "\n";
}

std::string run_qpt(const SweepConfig& cfg) {
  require_single_point(cfg, "qpt");
  const double d = cfg.d_single;
  const double p = cfg.p_single;
  const ProtocolParams params = params_for(p, d, cfg.strategy);
  const bool sampled = cfg.mode == Mode::montecarlo;

  ChiMatrix bare = chi_identity();
  ChiMatrix suppressed = chi_identity();
  switch (cfg.mode) {
    case Mode::analytic:
      bare = chi_of_operation(amplitude_damping(d));
      suppressed = suppressed_chi_analytic(params);
      break;
    case Mode::optical:
      bare = bare_chi_optical(d);
      suppressed = suppressed_chi_optical(params);
      break;
    case Mode::montecarlo:
      bare = bare_chi_montecarlo(d, cfg, derive_stream_seed(cfg.seed, 0));
      suppressed = suppressed_chi_montecarlo(params, cfg, derive_stream_seed(cfg.seed, 1));
      break;
  }

  nlohmann::json out{
      {"command", "qpt"},
      {"config", config_json("qpt", cfg, false, sampled)},
      {"bare", nlohmann::json::parse(chi_to_json(bare))},
      {"suppressed", nlohmann::json::parse(chi_to_json(suppressed))},
      {"process_fidelity",
       {{"bare", process_fidelity(bare)}, {"suppressed", process_fidelity(suppressed)}}},
  };
  return out.dump(2) + "\n";
}

std::string run_simulate_counts(const SweepConfig& cfg) {
  require_single_point(cfg, "simulate-counts");
  SweepConfig resolved = cfg;
  if (!resolved.states_explicit) resolved.states = {"V"};
  if (resolved.states.size() != 1) {
    throw ConfigError("config error: simulate-counts needs exactly one state");
  }
  const PureState psi = parse_state(resolved.states[0]);
  const ProtocolParams params = params_for(resolved.p_single, resolved.d_single,
                                           resolved.strategy);
  const ProtocolCounts counts =
      simulate_protocol_counts(psi, params, ShotConfig{resolved.shots, resolved.seed,
                                                       resolved.noise});

  std::ostringstream out;
  append_provenance(out, "simulate-counts", resolved, false, true, true, true);
  out << counts_to_csv(counts);
  return out.str();
}

}  // namespace qmr
