// Acceptance suite: one pass/fail line per criterion. The first argument is
// the path of the qmr CLI binary (needed for the byte-determinism criterion).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmr/montecarlo.hpp"
#include "qmr/optics.hpp"
#include "qmr/sweep.hpp"
#include "qmr/tomography.hpp"

using namespace qmr;

namespace {

struct Harness {
  int failures = 0;

  void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                title.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
};

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Harness harness;

  harness.criterion(1, "bare-channel process fidelity at D = 0.8", [](std::string& detail) {
    const double f = process_fidelity(chi_of_operation(amplitude_damping(0.8)));
    const double expected = std::pow((1.0 + std::sqrt(0.2)) / 2.0, 2);
    detail = "F = " + format_real(f);
    return std::abs(f - expected) <= 1e-9;
  });

  harness.criterion(2, "suppressed-channel process fidelity at p = 0.9, D = 0.8",
                    [](std::string& detail) {
    const double p = 0.9, d = 0.8;
    const double p_r = optimal_reversal_strength(p, d);
    const ProtocolParams params{p, d, p_r};
    // QPT over the analytic pipeline outputs.
    const auto probes = qpt_probe_states();
    std::array<DensityMatrix, 4> outputs = {
        pure_to_density(probes[0]), pure_to_density(probes[1]),
        pure_to_density(probes[2]), pure_to_density(probes[3])};
    std::array<double, 4> transmittances{};
    for (std::size_t i = 0; i < 4; ++i) {
      const PipelineOutcome outcome = apply_pipeline(probes[i], params);
      outputs[i] = outcome.state;
      transmittances[i] = outcome.success_probability;
    }
    const double f = process_fidelity(qpt_reconstruct(outputs, transmittances));
    // Independent brute-force chi from the composite Kraus operators.
    const oracle::Matrix4 brute =
        oracle::chi_brute_force(oracle::composite_pipeline_kraus(p, d, p_r));
    const double f_oracle = (brute / brute.trace().real())(0, 0).real();
    detail = "F = " + format_real(f) + ", oracle = " + format_real(f_oracle);
    return f > 0.94 && std::abs(f - f_oracle) <= 1e-9;
  });

  harness.criterion(3, "|V> through D = 0.5 collapses to purity 0.50", [](std::string& detail) {
    const double gamma = purity(amplitude_damping(0.5).apply(pure_to_density(state_v())));
    detail = "purity = " + format_real(gamma);
    return std::abs(gamma - 0.5) <= 1e-12;
  });

  harness.criterion(4, "closed form equals the pipeline on 1000 random cases",
                    [](std::string& detail) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> unit(0.0, 0.999);
    double max_state = 0.0, max_t = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const PureState psi = haar_random_state(rng);
      const double p = unit(rng), d = unit(rng);
      const double p_r = optimal_reversal_strength(p, d);
      const PipelineOutcome pipeline = apply_pipeline(psi, ProtocolParams{p, d, p_r});
      const DensityMatrix closed = final_state_optimal(psi, p, d);
      max_state = std::max(max_state, max_abs_diff(pipeline.state.entries(), closed.entries()));
      const double b2 = std::norm(psi.beta());
      const double p_recover = (1.0 - p) * (1.0 - d);
      const double p_decohere = b2 * (1.0 - p) * (1.0 - p) * d * (1.0 - d);
      max_t = std::max(max_t, std::abs(pipeline.success_probability - (p_recover + p_decohere)));
    }
    detail = "max state dev = " + format_real(max_state) + ", max T dev = " + format_real(max_t);
    return max_state <= 1e-12 && max_t <= 1e-12;
  });

  harness.criterion(5, "optical pipeline equals the analytic pipeline on the angle grid",
                    [](std::string& detail) {
    std::mt19937_64 rng(505);
    std::vector<double> thetas;
    for (double t = 0.0; t < M_PI / 4 - 1e-9; t += 0.05) thetas.push_back(t);
    thetas.push_back(M_PI / 4);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const PureState psi = haar_random_state(rng);
      for (double t1 : thetas) {
        for (double t2 : thetas) {
          for (double t3 : thetas) {
            const ProtocolParams params{angle_to_strength(t1), angle_to_strength(t2),
                                        angle_to_strength(t3)};
            if (transmittance(psi, params) <= 1e-12) continue;
            const PipelineOutcome optical =
                full_optical_pipeline(psi, WaveplateAngles{t1, t2, t3});
            const PipelineOutcome analytic = apply_pipeline(psi, params);
            worst = std::max(worst,
                             max_abs_diff(optical.state.entries(), analytic.state.entries()));
            worst = std::max(worst, std::abs(optical.success_probability -
                                             analytic.success_probability));
          }
        }
      }
    }
    detail = "max deviation = " + format_real(worst);
    return worst <= 1e-10;
  });

  harness.criterion(6, "fidelity ordering and monotonicity across the Fig. 4(a) grid",
                    [](std::string& detail) {
    for (double d : {0.5, 0.7, 0.8}) {
      double previous = 0.0;
      for (int i = 0; i <= 19; ++i) {
        const double p = i * 0.05;
        const ProtocolParams optimal{p, d, optimal_reversal_strength(p, d)};
        const ProtocolParams equal{p, d, p};
        const double f_optimal = process_fidelity(
            chi_of_map([&](const Matrix2& rho) { return pipeline_map(rho, optimal); }));
        const double f_equal = process_fidelity(
            chi_of_map([&](const Matrix2& rho) { return pipeline_map(rho, equal); }));
        if (f_optimal < f_equal - 1e-12) {
          detail = "ordering violated at D = " + format_real(d) + ", p = " + format_real(p);
          return false;
        }
        if (f_optimal < previous - 1e-12) {
          detail = "monotonicity violated at D = " + format_real(d) + ", p = " + format_real(p);
          return false;
        }
        previous = f_optimal;
      }
    }
    return true;
  });

  harness.criterion(7, "channel transmittance value, monotonicity and Bloch average",
                    [](std::string& detail) {
    const double t = channel_transmittance(
        ProtocolParams{0.9, 0.5, optimal_reversal_strength(0.9, 0.5)});
    if (std::abs(t - 0.05125) > 1e-12) {
      detail = "T_ch = " + format_real(t);
      return false;
    }
    for (double d : {0.3, 0.5, 0.7, 0.8}) {
      double previous = 2.0;
      for (int i = 0; i <= 19; ++i) {
        const double p = i * 0.05;
        const double value = channel_transmittance(
            ProtocolParams{p, d, optimal_reversal_strength(p, d)});
        if (value >= previous + 1e-12) {
          detail = "not decreasing at D = " + format_real(d);
          return false;
        }
        previous = value;
      }
    }
    std::mt19937_64 rng(707);
    const ProtocolParams params{0.9, 0.5, optimal_reversal_strength(0.9, 0.5)};
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double sample = transmittance(haar_random_state(rng), params);
      sum += sample;
      sum_sq += sample * sample;
    }
    const double mean = sum / n;
    const double standard_error = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
    detail = "MC mean = " + format_real(mean) + " vs T_ch = " + format_real(0.05125);
    return std::abs(mean - channel_transmittance(params)) < 3.0 * standard_error;
  });

  harness.criterion(8, "recovered-state fidelities at p = 0.9 under the optimal reversal",
                    [](std::string& detail) {
    const double p = 0.9;
    // |R> at D = 0.5 and 0.7, against the closed-form oracle and the pipeline.
    struct Case { double d; double reference; bool check_reference; };
    for (const Case& c : {Case{0.5, 0.98780, true}, Case{0.7, 0.96, false}}) {
      const oracle::Matrix2 expected = oracle::recovered_state(state_r().amplitudes(), p, c.d);
      const double f_oracle =
          (pure_to_density(state_r()).entries() * expected).trace().real();
      const double f = fidelity(pure_to_density(state_r()), final_state_optimal(state_r(), p, c.d));
      const double f_pipeline = fidelity(
          pure_to_density(state_r()),
          apply_pipeline(state_r(),
                         ProtocolParams{p, c.d, optimal_reversal_strength(p, c.d)}).state);
      if (std::abs(f - f_oracle) > 1e-9 || std::abs(f_pipeline - f_oracle) > 1e-9) {
        detail = "oracle mismatch at D = " + format_real(c.d);
        return false;
      }
      if (c.check_reference && std::abs(f - c.reference) > 1e-5) {
        detail = "|R> fidelity = " + format_real(f);
        return false;
      }
      if (!c.check_reference && f < 0.96) {
        detail = "|R> fidelity at D = 0.7 is " + format_real(f);
        return false;
      }
    }
    // |V>: fidelity = 1 / (1 + (1-p) D) exactly.
    for (double d : {0.5, 0.7}) {
      const double f = fidelity(pure_to_density(state_v()), final_state_optimal(state_v(), p, d));
      if (std::abs(f - 1.0 / (1.0 + (1.0 - p) * d)) > 1e-9) {
        detail = "|V> fidelity at D = " + format_real(d) + " is " + format_real(f);
        return false;
      }
    }
    return true;
  });

  harness.criterion(9, "tomography round trips: exact and at 1e4 shots per setting",
                    [](std::string& detail) {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double x, y, z;
      do {
        x = unit(rng);
        y = unit(rng);
        z = unit(rng);
      } while (x * x + y * y + z * z > 1.0);
      const DensityMatrix rho = density_from_bloch(BlochVector(x, y, z));
      const DensityMatrix back = qst_reconstruct(TomographyInput::exact_for(rho));
      worst = std::max(worst, max_abs_diff(rho.entries(), back.entries()));
    }
    if (worst > 1e-12) {
      detail = "exact round-trip error = " + format_real(worst);
      return false;
    }
    std::vector<double> fidelities;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 state_rng(seed);
      const DensityMatrix target = pure_to_density(haar_random_state(state_rng));
      TomographyInput input(TomographyInput::Kind::counts);
      for (MeasurementSetting setting : kAllSettings) {
        const CountRecord record = sample_counts(target, setting, ShotConfig{10000, seed});
        input.set_counts(setting, record.outcome0, record.outcome1);
      }
      fidelities.push_back(fidelity(target, qst_reconstruct(input)));
    }
    std::sort(fidelities.begin(), fidelities.end());
    const double median = 0.5 * (fidelities[49] + fidelities[50]);
    detail = "noisy median fidelity = " + format_real(median);
    return median >= 0.99;
  });

  harness.criterion(10, "montecarlo commands are byte-identical for a fixed seed",
                    [&cli](std::string& detail) {
    if (cli.empty()) {
      detail = "CLI path not provided";
      return false;
    }
    const auto dir = std::filesystem::temp_directory_path() / "qmr_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"sweep_f", " sweep-fidelity --mode montecarlo --d 0.5 --p-start 0.85 --p-stop 0.9"
                    " --p-step 0.05 --shots 2000 --seed 7"},
        {"sweep_t", " sweep-transmittance --mode montecarlo --d 0.5 --p-start 0.9 --p-stop 0.9"
                    " --p-step 0.05 --shots 5000 --seed 8"},
        {"traj", " bloch-trajectory --mode montecarlo --d 0.5 --p 0.9 --states H,V,R"
                 " --shots 4000 --seed 9"},
        {"qpt", " qpt --mode montecarlo --d 0.8 --p 0.9 --shots 4000 --seed 10"},
        {"counts", " simulate-counts --state V --d 0.5 --p 0.9 --shots 3000 --seed 11"},
    };
    for (const auto& [name, args] : commands) {
      const auto first = dir / (name + "_run1");
      const auto second = dir / (name + "_run2");
      for (const auto& path : {first, second}) {
        const int status = run_command(cli + args + " --out " + path.string());
        if (status != 0) {
          detail = name + " exited with status " + std::to_string(status);
          return false;
        }
      }
      const std::string a = read_file(first);
      const std::string b = read_file(second);
      if (a.empty() || a != b) {
        detail = name + " outputs differ";
        return false;
      }
    }
    std::filesystem::remove_all(dir);
    return true;
  });

  if (harness.failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", harness.failures);
  }
  return harness.failures;
}
