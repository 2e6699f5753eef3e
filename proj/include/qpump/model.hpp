#pragma once

#include "qpump/common.hpp"
#include "qpump/spin.hpp"

#include <optional>
#include <vector>

namespace qpump {

/// Operator normalization for the spin degrees of freedom.
///  - Half:  S = sigma/2 (spin-1/2 operators); used by the multi-qubit model.
///  - Pauli: S = sigma; used by the single-qubit reference model, whose
///    published benchmark values are quoted in this convention.
///  - Auto resolves to Pauli for n_qubits == 1 and Half otherwise.
enum class SpinConvention { Auto, Half, Pauli };

struct BathSpec {
  std::string label = "L";
  double g = 0.002;        ///< coupling strength; rates scale as g^2 gamma(omega)
  double T = 1.0;          ///< bath temperature (k_B = 1)
  double omega_c = 120.0;  ///< Ohmic exponential cutoff
  Axis axis = Axis::X;     ///< spin component the bath couples to
};

struct SystemConfig {
  // Defaults are the asymmetric reference configuration: perfectly symmetric
  // couplings (b = 1 together with eta = 1) conserve the total-spin sector
  // and leave the steady state non-unique.
  int n_qubits = 2;
  double J = 0.0;    ///< exchange coupling (nearest-neighbor chain)
  double eta = 1.2;  ///< drive asymmetry: field on qubit j>0 is eta * B
  double b = 2.0;    ///< coupling asymmetry: bath weight on qubit j>0 is b
  SpinConvention convention = SpinConvention::Auto;
  std::vector<BathSpec> baths;  ///< default: L on x, R on z, g=0.002, T=1, wc=120
  int cold_bath = 1;            ///< index into baths designating the cold bath

  // Numerics.
  double degeneracy_tol = 1e-9;  ///< relative eigenvalue/Bohr-frequency merge tolerance
  double fd_step = 1e-5;         ///< finite-difference step (relative to max(1, |X|))
  bool analytic_derivative = true;  ///< Gibbs-state derivative: analytic vs central FD
  double kernel_rank_tol = 1e-12;   ///< singular values below tol*s_max count as kernel

  SpinConvention resolved_convention() const {
    if (convention != SpinConvention::Auto) return convention;
    return n_qubits == 1 ? SpinConvention::Pauli : SpinConvention::Half;
  }

  void validate() const;

  static std::vector<BathSpec> default_baths();
};

/// Assembled operator set for a SystemConfig: Hamiltonian builder, its
/// parameter derivatives, and the bath coupling operators.
class Model {
 public:
  explicit Model(SystemConfig cfg);

  int dim() const { return dim_; }
  int n_controls() const { return 2; }
  const SystemConfig& config() const { return cfg_; }

  /// H(X) = -B_x sum_j eta_j S_j^x - B_z sum_j eta_j S_j^z + J sum_j S_j . S_{j+1}
  /// with X = (B_x, B_z), eta_0 = 1, eta_{j>0} = eta.
  Mat hamiltonian(const RVec& X) const;

  /// dH/dX_j; constant in X (the Hamiltonian is linear in the controls).
  const std::vector<Mat>& dH() const { return dH_; }

  /// Bath coupling operators pi_alpha = S_0^a + b sum_{j>0} S_j^a.
  const std::vector<Mat>& couplings() const { return pi_; }

  double temperature() const;  ///< common bath temperature (validated equal)

 private:
  SystemConfig cfg_;
  int dim_;
  std::vector<Mat> field_ops_;  ///< sum_j eta_j S_j^a for a = x, z
  Mat exchange_;                ///< sum_j S_j . S_{j+1} (zero matrix for n = 1)
  std::vector<Mat> dH_;
  std::vector<Mat> pi_;
};

}  // namespace qpump
