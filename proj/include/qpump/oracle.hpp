#pragma once

#include "qpump/model.hpp"
#include "qpump/response.hpp"

#include <vector>

namespace qpump {

// ---------------------------------------------------------------------------
// Closed-form single-qubit reference (H = -B.sigma, baths on sigma^x, sigma^z).
// Exercised against the general engine as an independent check.
// ---------------------------------------------------------------------------

/// Lab-frame Bloch vector of the frozen steady state: tanh(|B|/T) * (Bx,0,Bz)/|B|.
Eigen::Vector3d single_qubit_bloch(const RVec& B, double T = 1.0);

/// Frozen steady state (I + r.sigma)/2 assembled from the Bloch vector.
Mat single_qubit_steady(const RVec& B, double T = 1.0);

/// Binary entropy of the frozen populations (1 +- tanh(|B|/T))/2.
double single_qubit_entropy(double Bnorm, double T = 1.0);

/// dS^f/dt = -(|B|/T^2) (1 - tanh^2(|B|/T)) d|B|/dt for a driven field B(t).
double single_qubit_entropy_rate(const RVec& B, const RVec& Bdot, double T = 1.0);

/// First-order heat currents of the driven single qubit:
///   J^(1)_a = w_a T dS^f/dt,
///   w_a = g_a^2 (1 - n_a^2) / sum_b g_b^2 (1 - n_b^2),
/// where n = B/|B| and n_a is its component along bath a's coupling axis.
/// The spectral factors gamma(+-2|B|) are common to both baths (equal
/// temperatures and cutoffs) and cancel in the weights, so the result is
/// independent of the cutoff. Requires a single-qubit config in the Pauli
/// convention with x/z couplings.
std::vector<double> single_qubit_heat1(const SystemConfig& config, const RVec& B,
                                       const RVec& Bdot);

// ---------------------------------------------------------------------------
// Product solver: exact factorized solution for uncoupled qubits (J = 0).
// Each qubit is an independent single-spin problem with field eta_j B and
// bath couplings scaled by w_j (1 for qubit 0, b for the rest); observables
// are additive. Assembled with the same engine on the 2x2 subproblems, so it
// cross-checks the multi-qubit tensor algebra, not the solver core.
// ---------------------------------------------------------------------------

struct ProductSolution {
  Mat rho_f;                    ///< tensor product of the per-qubit frozen states
  Mat rho_1;                    ///< sum_j rho^f x ... x rho^(1)_j x ... x rho^f
  std::vector<double> j1;       ///< per-bath first-order currents, summed over qubits
  std::vector<RVec> lambda1;    ///< per-bath pumping kernels d(J^(1)_a)/d(Xdot)
  RMat lambda;                  ///< power kernel: P^(2) = Xd^T lambda Xd
};

ProductSolution product_state_solve(const SystemConfig& config, const RVec& X,
                                    const RVec& Xdot);

// ---------------------------------------------------------------------------
// Correlation decomposition of the first-order heat current (two qubits).
// ---------------------------------------------------------------------------

/// Reduced density matrix of one qubit (all others traced out).
Mat reduced_qubit(const Mat& rho, int site, int n_qubits);

/// Splits J^(1)_a = Tr{D_a[rho^(1)] H} into single-qubit and correlation
/// parts by the exact linear decomposition
///   rho^(1) = r1 x rho^f_2 + rho^f_1 x r2 + Delta,
/// with r_j the reduced first-order corrections. At J = 0 Delta vanishes and
/// the split reproduces the product solver.
struct CorrelationSplit {
  double j_q1 = 0;   ///< current carried by qubit 1's reduced correction
  double j_q2 = 0;   ///< current carried by qubit 2's reduced correction
  double j_corr = 0; ///< remainder carried by interqubit correlations
  double total = 0;  ///< j_q1 + j_q2 + j_corr, equal to the direct trace
  RMat delta_r;      ///< frozen-state correlations <S_a S_b> - <S_a><S_b>, a,b in {x,y,z}
};

CorrelationSplit correlation_current_split(const Model& model, const RVec& X,
                                           const RVec& Xdot, int bath);

}  // namespace qpump
