#include "qpump/model.hpp"

#include <cmath>

namespace qpump {

std::vector<BathSpec> SystemConfig::default_baths() {
  BathSpec left;
  left.label = "L";
  left.axis = Axis::X;
  BathSpec right;
  right.label = "R";
  right.axis = Axis::Z;
  return {left, right};
}

void SystemConfig::validate() const {
  if (n_qubits < 1) throw ConfigError("n_qubits must be >= 1");
  if (baths.empty()) throw ConfigError("at least one bath is required");
  for (const auto& bath : baths) {
    if (!(bath.g > 0)) throw ConfigError("bath '" + bath.label + "': g must be > 0");
    if (!(bath.T > 0)) throw ConfigError("bath '" + bath.label + "': T must be > 0");
    if (!(bath.omega_c > 0)) throw ConfigError("bath '" + bath.label + "': omega_c must be > 0");
    if (bath.axis == Axis::Zero) throw ConfigError("bath '" + bath.label + "': axis must be x, y or z");
  }
  if (cold_bath < 0 || cold_bath >= int(baths.size()))
    throw ConfigError("cold_bath index out of range");
  if (!(degeneracy_tol > 0) || !(fd_step > 0) || !(kernel_rank_tol > 0))
    throw ConfigError("numeric tolerances must be > 0");
  if (!std::isfinite(J) || !std::isfinite(eta) || !std::isfinite(b))
    throw ConfigError("J, eta, b must be finite");
}

Model::Model(SystemConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.baths.empty()) cfg_.baths = SystemConfig::default_baths();
  cfg_.validate();

  const int n = cfg_.n_qubits;
  dim_ = 1 << n;
  const double scale = cfg_.resolved_convention() == SpinConvention::Pauli ? 1.0 : 0.5;

  auto spin_op = [&](Axis a, int site) { return Mat(scale * embed(pauli(a), site, n)); };
  auto eta_of = [&](int site) { return site == 0 ? 1.0 : cfg_.eta; };

  field_ops_.clear();
  for (Axis a : {Axis::X, Axis::Z}) {
    Mat op = Mat::Zero(dim_, dim_);
    for (int j = 0; j < n; ++j) op += eta_of(j) * spin_op(a, j);
    field_ops_.push_back(op);
  }

  exchange_ = Mat::Zero(dim_, dim_);
  for (int j = 0; j + 1 < n; ++j)
    for (Axis a : {Axis::X, Axis::Y, Axis::Z})
      exchange_ += spin_op(a, j) * spin_op(a, j + 1);

  dH_ = {Mat(-field_ops_[0]), Mat(-field_ops_[1])};

  pi_.clear();
  for (const auto& bath : cfg_.baths) {
    Mat op = Mat::Zero(dim_, dim_);
    for (int j = 0; j < n; ++j) op += (j == 0 ? 1.0 : cfg_.b) * spin_op(bath.axis, j);
    pi_.push_back(op);
  }
}

Mat Model::hamiltonian(const RVec& X) const {
  if (X.size() != 2) throw ConfigError("control point must have 2 components (B_x, B_z)");
  if (!X.allFinite()) throw ConfigError("control point has non-finite entries");
  return Mat(-X[0] * field_ops_[0] - X[1] * field_ops_[1] + cfg_.J * exchange_);
}

double Model::temperature() const {
  const double T = cfg_.baths.front().T;
  for (const auto& bath : cfg_.baths)
    if (std::abs(bath.T - T) > 1e-14 * T)
      throw InvariantViolation("equal-temperature operation requested with unequal bath temperatures");
  return T;
}

}  // namespace qpump
