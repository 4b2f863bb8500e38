#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qmr/sweep.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 degenerate physics
// (zero transmittance), 1 anything else.
constexpr int kExitConfigError = 2;
constexpr int kExitDegenerate = 3;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::string> mode;
  std::optional<std::string> seed;
  std::optional<std::string> shots;
  std::optional<std::string> strategy;
  std::optional<std::string> noise;
  std::optional<std::string> d;
  std::optional<std::string> p;
  std::optional<std::string> p_start;
  std::optional<std::string> p_stop;
  std::optional<std::string> p_step;
  std::optional<std::string> states;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "Flat key-value config file; flags override it");
  cmd->add_option("--out", flags.out, "Output path (default: stdout)");
  cmd->add_option("--seed", flags.seed, "Base RNG seed (montecarlo mode)");
  cmd->add_option("--shots", flags.shots, "Shots per measurement setting (montecarlo mode)");
  cmd->add_option("--strategy", flags.strategy, "Reversal strategy: optimal | equal");
  cmd->add_option("--noise", flags.noise, "Counting noise model: multinomial | poisson");
}

void add_mode_flag(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--mode", flags.mode, "Evaluation mode: analytic | optical | montecarlo");
}

void add_grid_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--d", flags.d, "Comma-separated decoherence magnitudes in [0, 1]");
  cmd->add_option("--p-start", flags.p_start, "First weak-measurement strength");
  cmd->add_option("--p-stop", flags.p_stop, "Last weak-measurement strength");
  cmd->add_option("--p-step", flags.p_step, "Grid step for p");
}

void add_point_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--d", flags.d, "Decoherence magnitude in [0, 1]");
  cmd->add_option("--p", flags.p, "Weak-measurement strength in [0, 1]");
}

qmr::SweepConfig resolve_config(const Flags& flags) {
  qmr::SweepConfig cfg;
  if (flags.config) {
    qmr::apply_config_entries(cfg, qmr::read_config_file(*flags.config));
  }
  const auto apply = [&cfg](const char* key, const std::optional<std::string>& value) {
    if (value) qmr::set_config_value(cfg, key, *value);
  };
  apply("mode", flags.mode);
  apply("strategy", flags.strategy);
  apply("noise", flags.noise);
  apply("seed", flags.seed);
  apply("shots", flags.shots);
  apply("d", flags.d);
  apply("p", flags.p);
  apply("p_start", flags.p_start);
  apply("p_stop", flags.p_stop);
  apply("p_step", flags.p_step);
  apply("states", flags.states);
  apply("out", flags.out);
  return cfg;
}

void write_output(const qmr::SweepConfig& cfg, const std::string& contents) {
  if (cfg.out.empty()) {
    std::cout << contents;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    throw qmr::ConfigError("config error: cannot open output file '" + cfg.out + "'");
  }
  file << contents;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amplitude-damping decoherence suppression via quantum measurement reversal"};
  app.require_subcommand(1);

  Flags flags;
  std::string (*runner)(const qmr::SweepConfig&) = nullptr;

  CLI::App* sweep_f = app.add_subcommand(
      "sweep-fidelity", "Process fidelity over a (D, p) grid");
  add_common_flags(sweep_f, flags);
  add_mode_flag(sweep_f, flags);
  add_grid_flags(sweep_f, flags);
  sweep_f->callback([&runner]() { runner = qmr::run_sweep_fidelity; });

  CLI::App* sweep_t = app.add_subcommand(
      "sweep-transmittance", "Channel transmittance over a (D, p) grid");
  add_common_flags(sweep_t, flags);
  add_mode_flag(sweep_t, flags);
  add_grid_flags(sweep_t, flags);
  sweep_t->callback([&runner]() { runner = qmr::run_sweep_transmittance; });

  CLI::App* trajectory = app.add_subcommand(
      "bloch-trajectory", "Bloch vectors before damping, after damping and after suppression");
  add_common_flags(trajectory, flags);
  add_mode_flag(trajectory, flags);
  add_point_flags(trajectory, flags);
  trajectory->add_option("--states", flags.states,
                         "Comma-separated inputs: H,V,D,A,R,L or wp:<hwp_deg>:<qwp_deg>");
  trajectory->callback([&runner]() { runner = qmr::run_bloch_trajectory; });

  CLI::App* qpt = app.add_subcommand(
      "qpt", "Chi matrices of the bare and the suppressed channel");
  add_common_flags(qpt, flags);
  add_mode_flag(qpt, flags);
  add_point_flags(qpt, flags);
  qpt->callback([&runner]() { runner = qmr::run_qpt; });

  CLI::App* counts = app.add_subcommand(
      "simulate-counts", "Seeded coincidence counts for one input state");
  add_common_flags(counts, flags);
  add_point_flags(counts, flags);
  counts->add_option("--state,--states", flags.states, "Input state (exactly one)");
  counts->callback([&runner]() { runner = qmr::run_simulate_counts; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    const qmr::SweepConfig cfg = resolve_config(flags);
    write_output(cfg, runner(cfg));
    return 0;
  } catch (const qmr::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfigError;
  } catch (const qmr::DegenerateOutcomeError& e) {
    std::cerr << "degenerate physics: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
