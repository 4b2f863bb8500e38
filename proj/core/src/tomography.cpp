#include "qmr/tomography.hpp"

#include <cmath>

#include "json.hpp"

namespace qmr {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t index_of(MeasurementSetting setting) { return static_cast<std::size_t>(setting); }

std::array<Matrix2, 4> pauli_basis() {
  return {identity2(), pauli_x(), pauli_y(), pauli_z()};
}

Vector4 vec(const Matrix2& m) {
  return Eigen::Map<const Vector4>(m.data());
}

// chi_mn = <vec(P_m)| C |vec(P_n)> / 4 for the Choi matrix
// C = sum_ij |i><j| (x) map(|i><j|).
Matrix4 chi_from_choi(const Matrix4& choi) {
  const std::array<Matrix2, 4> basis = pauli_basis();
  Matrix4 chi;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      chi(m, n) = 0.25 * (vec(basis[m]).adjoint() * choi * vec(basis[n]))(0, 0);
    }
  }
  return chi;
}

Matrix4 choi_of_basis_images(const std::array<Matrix2, 4>& images) {
  // images = map(|0><0|), map(|0><1|), map(|1><0|), map(|1><1|)
  Matrix4 choi;
  choi.block<2, 2>(0, 0) = images[0];
  choi.block<2, 2>(0, 2) = images[1];
  choi.block<2, 2>(2, 0) = images[2];
  choi.block<2, 2>(2, 2) = images[3];
  return choi;
}

}  // namespace

std::string_view setting_name(MeasurementSetting setting) {
  switch (setting) {
    case MeasurementSetting::Z: return "Z";
    case MeasurementSetting::X: return "X";
    case MeasurementSetting::Y: return "Y";
  }
  throw std::logic_error("unreachable");
}

std::optional<MeasurementSetting> parse_setting(std::string_view name) {
  if (name == "Z") return MeasurementSetting::Z;
  if (name == "X") return MeasurementSetting::X;
  if (name == "Y") return MeasurementSetting::Y;
  return std::nullopt;
}

Matrix2 setting_pauli(MeasurementSetting setting) {
  switch (setting) {
    case MeasurementSetting::Z: return pauli_z();
    case MeasurementSetting::X: return pauli_x();
    case MeasurementSetting::Y: return pauli_y();
  }
  throw std::logic_error("unreachable");
}

std::array<double, 2> born_probabilities(const DensityMatrix& rho, MeasurementSetting setting) {
  const double expectation = (rho.entries() * setting_pauli(setting)).trace().real();
  const double p0 = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
  return {p0, 1.0 - p0};
}

TomographyInput TomographyInput::exact_for(const DensityMatrix& rho) {
  TomographyInput input(Kind::probabilities);
  for (MeasurementSetting setting : kAllSettings) {
    const auto probs = born_probabilities(rho, setting);
    input.set_probabilities(setting, probs[0], probs[1]);
  }
  return input;
}

void TomographyInput::set_probabilities(MeasurementSetting setting, double p0, double p1) {
  if (kind_ != Kind::probabilities) {
    throw std::invalid_argument("TomographyInput: counts input cannot take probabilities");
  }
  if (!(p0 >= 0.0 && p0 <= 1.0 && p1 >= 0.0 && p1 <= 1.0)) {
    throw std::invalid_argument("TomographyInput: probabilities must lie in [0, 1]");
  }
  if (std::abs(p0 + p1 - 1.0) > 1e-9) {
    throw std::invalid_argument("TomographyInput: probabilities must sum to 1 per setting");
  }
  data_[index_of(setting)] = {p0, p1};
}

void TomographyInput::set_counts(MeasurementSetting setting, std::uint64_t n0, std::uint64_t n1) {
  if (kind_ != Kind::counts) {
    throw std::invalid_argument("TomographyInput: probabilities input cannot take counts");
  }
  data_[index_of(setting)] = {static_cast<double>(n0), static_cast<double>(n1)};
}

bool TomographyInput::has(MeasurementSetting setting) const {
  return data_[index_of(setting)].has_value();
}

std::array<double, 2> TomographyInput::data(MeasurementSetting setting) const {
  const auto& slot = data_[index_of(setting)];
  if (!slot.has_value()) {
    throw std::invalid_argument(std::string("TomographyInput: missing setting ") +
                                std::string(setting_name(setting)));
  }
  return *slot;
}

BlochVector qst_expectations(const DensityMatrix& rho) { return bloch_from_density(rho); }

DensityMatrix project_to_physical(const Matrix2& hermitian) {
  Matrix2 sym = 0.5 * (hermitian + hermitian.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(sym);
  Eigen::Vector2d values = solver.eigenvalues().cwiseMax(0.0);
  const double total = values.sum();
  if (total <= 0.0) {
    throw std::invalid_argument("project_to_physical: matrix has no positive part");
  }
  values /= total;
  const Matrix2 out = solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint().eval()));
}

namespace {

// Iterative R-rho-R maximum-likelihood refinement over the three Pauli
// settings, weights w_{s,o} = counts (or probabilities in exact mode).
DensityMatrix qst_max_likelihood(const TomographyInput& input, const QstOptions& options) {
  std::array<Matrix2, 6> povm;
  std::array<double, 6> weight{};
  double total_weight = 0.0;
  for (MeasurementSetting setting : kAllSettings) {
    const auto data = input.data(setting);
    const Matrix2 pauli = setting_pauli(setting);
    const std::size_t base = 2 * index_of(setting);
    povm[base] = 0.5 * (identity2() + pauli);
    povm[base + 1] = 0.5 * (identity2() - pauli);
    weight[base] = data[0];
    weight[base + 1] = data[1];
    total_weight += data[0] + data[1];
  }
  if (total_weight <= 0.0) {
    throw std::invalid_argument("qst_reconstruct: no events recorded");
  }

  Matrix2 rho = 0.5 * identity2();
  for (int iteration = 0; iteration < options.ml_max_iterations; ++iteration) {
    Matrix2 r = Matrix2::Zero();
    for (std::size_t k = 0; k < povm.size(); ++k) {
      if (weight[k] == 0.0) continue;
      const double prob = std::max((rho * povm[k]).trace().real(), 1e-15);
      r += (weight[k] / (total_weight * prob)) * povm[k];
    }
    Matrix2 next = r * rho * r;
    next /= next.trace().real();
    next = 0.5 * (next + next.adjoint().eval());
    const double delta = (next - rho).cwiseAbs().maxCoeff();
    rho = next;
    if (delta < options.ml_tolerance) break;
  }
  return DensityMatrix(rho);
}

}  // namespace

DensityMatrix qst_reconstruct(const TomographyInput& input, const QstOptions& options) {
  for (MeasurementSetting setting : kAllSettings) {
    if (!input.has(setting)) {
      throw std::invalid_argument(std::string("qst_reconstruct: missing setting ") +
                                  std::string(setting_name(setting)));
    }
    if (input.kind() == TomographyInput::Kind::counts) {
      const auto data = input.data(setting);
      if (data[0] + data[1] <= 0.0) {
        throw std::invalid_argument(std::string("qst_reconstruct: zero total counts in setting ") +
                                    std::string(setting_name(setting)));
      }
    }
  }
  if (options.max_likelihood) {
    return qst_max_likelihood(input, options);
  }

  double expectation[3];
  for (MeasurementSetting setting : kAllSettings) {
    const auto data = input.data(setting);
    expectation[index_of(setting)] = (data[0] - data[1]) / (data[0] + data[1]);
  }
  const Matrix2 rho = 0.5 * (identity2() + expectation[1] * pauli_x() +
                             expectation[2] * pauli_y() + expectation[0] * pauli_z());
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < 0.0) {
    return project_to_physical(rho);
  }
  return DensityMatrix(rho);
}

ChiMatrix::ChiMatrix(const Matrix4& entries, double normalization)
    : entries_(0.5 * (entries + entries.adjoint().eval())), normalization_(normalization) {
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("ChiMatrix: entries are not Hermitian");
  }
  if (!(normalization > 0.0)) {
    throw std::invalid_argument("ChiMatrix: normalization must be positive");
  }
}

bool ChiMatrix::is_normalized() const {
  return std::abs(entries_.trace() - Complex(1.0, 0.0)) <= 1e-10;
}

ChiMatrix ChiMatrix::normalized() const {
  const double trace = entries_.trace().real();
  if (trace <= 0.0) {
    throw DegenerateOutcomeError("ChiMatrix: trace is not positive, map is empty");
  }
  return ChiMatrix(entries_ / trace, normalization_ * trace);
}

ChiMatrix chi_identity() {
  Matrix4 chi = Matrix4::Zero();
  chi(0, 0) = 1.0;
  return ChiMatrix(chi);
}

std::array<PureState, 4> qpt_probe_states() {
  return {state_h(), state_v(), state_d(), state_r()};
}

ChiMatrix qpt_reconstruct(const std::array<DensityMatrix, 4>& outputs,
                          const std::array<double, 4>& transmittances) {
  for (double t : transmittances) {
    if (!(t >= 0.0 && t <= 1.0 + 1e-9)) {
      throw std::invalid_argument("qpt_reconstruct: transmittances must lie in [0, 1]");
    }
  }
  // Transmittance-weighted images of the probe projectors.
  const Matrix2 s_h = transmittances[0] * outputs[0].entries();
  const Matrix2 s_v = transmittances[1] * outputs[1].entries();
  const Matrix2 s_d = transmittances[2] * outputs[2].entries();
  const Matrix2 s_r = transmittances[3] * outputs[3].entries();
  // |H><H| = (I+Z)/2, |V><V| = (I-Z)/2, |D><D| = (I+X)/2, |R><R| = (I-Y)/2.
  const Matrix2 s_i = s_h + s_v;
  const Matrix2 s_z = s_h - s_v;
  const Matrix2 s_x = 2.0 * s_d - s_i;
  const Matrix2 s_y = s_i - 2.0 * s_r;
  const std::array<Matrix2, 4> images = {
      0.5 * (s_i + s_z),              // map(|0><0|)
      0.5 * (s_x + kI * s_y),         // map(|0><1|)
      0.5 * (s_x - kI * s_y),         // map(|1><0|)
      0.5 * (s_i - s_z),              // map(|1><1|)
  };
  return ChiMatrix(chi_from_choi(choi_of_basis_images(images))).normalized();
}

ChiMatrix chi_of_map(const std::function<Matrix2(const Matrix2&)>& map, bool normalize) {
  std::array<Matrix2, 4> images;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Matrix2 basis = Matrix2::Zero();
      basis(i, j) = 1.0;
      images[2 * i + j] = map(basis);
    }
  }
  const ChiMatrix chi(chi_from_choi(choi_of_basis_images(images)));
  return normalize ? chi.normalized() : chi;
}

ChiMatrix chi_of_operation(const QuantumOperation& op, bool normalize) {
  return chi_of_map([&op](const Matrix2& rho) { return op.apply_raw(rho); }, normalize);
}

double process_fidelity(const ChiMatrix& chi) {
  if (!chi.is_normalized()) {
    throw std::invalid_argument("process_fidelity: chi must be normalized to unit trace");
  }
  return std::clamp(chi.entries()(0, 0).real(), 0.0, 1.0);
}

std::string chi_to_json(const ChiMatrix& chi) {
  nlohmann::json entries = nlohmann::json::array();
  for (int m = 0; m < 4; ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (int n = 0; n < 4; ++n) {
      row.push_back({chi.entries()(m, n).real(), chi.entries()(m, n).imag()});
    }
    entries.push_back(row);
  }
  nlohmann::json out{
      {"basis", {"I", "X", "Y", "Z"}},
      {"entries", entries},
      {"normalization", chi.normalization()},
  };
  return out.dump(2);
}

ChiMatrix chi_from_json(const std::string& text) {
  const nlohmann::json parsed = nlohmann::json::parse(text);
  if (parsed.at("basis") != nlohmann::json({"I", "X", "Y", "Z"})) {
    throw std::invalid_argument("chi_from_json: unexpected operator basis");
  }
  const auto& entries = parsed.at("entries");
  if (entries.size() != 4) {
    throw std::invalid_argument("chi_from_json: entries must be 4x4");
  }
  Matrix4 chi;
  for (int m = 0; m < 4; ++m) {
    const auto& row = entries.at(m);
    if (row.size() != 4) {
      throw std::invalid_argument("chi_from_json: entries must be 4x4");
    }
    for (int n = 0; n < 4; ++n) {
      const auto& pair = row.at(n);
      if (pair.size() != 2) {
        throw std::invalid_argument("chi_from_json: entries must be [re, im] pairs");
      }
      chi(m, n) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
  }
  return ChiMatrix(chi, parsed.at("normalization").get<double>());
}

}  // namespace qmr
