#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "qmr/channels.hpp"
#include "qmr/qubit.hpp"

namespace qmr {

/// Analyzer basis of a single-qubit projective measurement:
/// Z = H/V, X = D/A, Y = L/R. Outcome 0 is the +1 eigenstate of the Pauli.
enum class MeasurementSetting { Z = 0, X = 1, Y = 2 };

inline constexpr std::array<MeasurementSetting, 3> kAllSettings = {
    MeasurementSetting::Z, MeasurementSetting::X, MeasurementSetting::Y};

std::string_view setting_name(MeasurementSetting setting);
std::optional<MeasurementSetting> parse_setting(std::string_view name);
Matrix2 setting_pauli(MeasurementSetting setting);

/// Born probabilities (outcome 0, outcome 1) of measuring rho in a setting.
std::array<double, 2> born_probabilities(const DensityMatrix& rho, MeasurementSetting setting);

/// Per-setting measurement record: exact outcome probabilities or integer counts.
class TomographyInput {
 public:
  enum class Kind { probabilities, counts };

  explicit TomographyInput(Kind kind) : kind_(kind) {}

  /// Exact Born probabilities of rho in all three settings.
  static TomographyInput exact_for(const DensityMatrix& rho);

  void set_probabilities(MeasurementSetting setting, double p0, double p1);
  void set_counts(MeasurementSetting setting, std::uint64_t n0, std::uint64_t n1);

  Kind kind() const { return kind_; }
  bool has(MeasurementSetting setting) const;
  std::array<double, 2> data(MeasurementSetting setting) const;

 private:
  Kind kind_;
  std::array<std::optional<std::array<double, 2>>, 3> data_;
};

struct QstOptions {
  bool max_likelihood = false;  // iterative refinement instead of plain inversion
  double ml_tolerance = 1e-10;
  int ml_max_iterations = 10000;
};

/// QST forward model: the Bloch expectation values of rho.
BlochVector qst_expectations(const DensityMatrix& rho);

/// Clips negative eigenvalues to zero and renormalizes the trace.
DensityMatrix project_to_physical(const Matrix2& hermitian);

/// Linear-inversion QST, rho = (I + x X + y Y + z Z)/2 from empirical
/// expectations, projected to the physical set when needed. With
/// options.max_likelihood, runs the iterative R-rho-R refinement instead.
DensityMatrix qst_reconstruct(const TomographyInput& input, const QstOptions& options = {});

/// Process matrix over the operator basis {I, X, Y, Z}:
///   map(rho) = sum_mn chi_mn P_m rho P_n^dag.
/// normalization() records the trace divided out of the raw matrix (1 if none).
class ChiMatrix {
 public:
  explicit ChiMatrix(const Matrix4& entries, double normalization = 1.0);

  const Matrix4& entries() const { return entries_; }
  double normalization() const { return normalization_; }
  bool is_normalized() const;

  /// Rescales to unit trace, folding the trace into normalization().
  ChiMatrix normalized() const;

 private:
  Matrix4 entries_;
  double normalization_;
};

/// chi of the identity operation: 1 at (I, I), zero elsewhere.
ChiMatrix chi_identity();

/// Informationally complete probe set {|H>, |V>, |D>, |R>}.
std::array<PureState, 4> qpt_probe_states();

/// Reconstructs the process matrix from the four probe outputs, weighting each
/// normalized output state by its transmittance so the reconstructed map is
/// linear; the result is normalized to unit trace.
ChiMatrix qpt_reconstruct(const std::array<DensityMatrix, 4>& outputs,
                          const std::array<double, 4>& transmittances);

/// Analytic chi of a linear (possibly trace-decreasing) map on 2x2 operators.
ChiMatrix chi_of_map(const std::function<Matrix2(const Matrix2&)>& map, bool normalize = true);
ChiMatrix chi_of_operation(const QuantumOperation& op, bool normalize = true);

/// Process fidelity F = Tr[chi_I chi] = chi_II of a unit-trace chi.
double process_fidelity(const ChiMatrix& chi);

/// JSON wire format: 4x4 array of [re, im] pairs in basis order [I, X, Y, Z],
/// plus the normalization scalar.
std::string chi_to_json(const ChiMatrix& chi);
ChiMatrix chi_from_json(const std::string& text);

}  // namespace qmr
