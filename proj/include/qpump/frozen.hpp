#pragma once

#include "qpump/common.hpp"

#include <vector>

namespace qpump {

/// Eigen-decomposition of a frozen Hamiltonian with degenerate eigenvalues
/// merged into spectral projectors (gauge-free representation).
struct FrozenBasis {
  std::vector<double> eigenvalues;  ///< distinct eigenvalues, ascending
  std::vector<Mat> projectors;      ///< Hermitian idempotent, sum to identity
  RVec all_eigenvalues;             ///< full (repeated) spectrum, ascending

  double spectral_range() const {
    return eigenvalues.empty() ? 0.0 : eigenvalues.back() - eigenvalues.front();
  }
};

/// One Bohr-frequency channel of a coupling operator:
/// pi_w = sum_{(l,m): e_m - e_l = w} P_l pi P_m, so [H, pi_w] = -w pi_w.
struct BohrChannel {
  double omega = 0.0;
  Mat op;  ///< eigenoperator pi_{alpha,omega}
};

/// Decompose a Hermitian matrix; eigenvalues within
/// tol * max(1, spectral range) are merged into a single projector.
FrozenBasis eigendecompose(const Mat& H, double degeneracy_tol);

/// Spectral decomposition of a coupling operator into Bohr channels,
/// frequencies grouped with the same relative tolerance.
std::vector<BohrChannel> bohr_channels(const FrozenBasis& basis, const Mat& pi,
                                       double degeneracy_tol);

/// Ohmic bath rate:
///   omega > 0: omega (1 + n(omega)) exp(-omega/omega_c)   (emission into the bath)
///   omega < 0: |omega| n(|omega|) exp(-|omega|/omega_c)    (absorption)
///   omega = 0: T (the common two-sided limit)
/// Detailed balance gamma(w)/gamma(-w) = exp(w/T) holds exactly, cutoff included.
double ohmic_rate(double omega, double T, double omega_c);

}  // namespace qpump
