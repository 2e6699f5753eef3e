#pragma once

#include "qpump/superop.hpp"

namespace qpump {

/// Analytic derivative of the Gibbs state e^{-H/T}/Z with respect to each
/// control parameter, via divided differences of the exponential in the
/// instantaneous eigenbasis. Machine-precision: no finite-difference noise,
/// which matters where the Lindbladian has a nearly conserved mode (symmetric
/// couplings b = 1) that amplifies any error in the right-hand side.
std::vector<Mat> gibbs_derivative(const Model& model, const RVec& X);

/// Central finite difference of the steady state in one control direction
/// (the laboratory-frame steady state is basis-independent, so no frame
/// rotation is needed). Step h is absolute. Richardson extrapolation combines
/// steps h and h/2 to cancel the O(h^2) term.
Mat frozen_derivative_fd(const Model& model, const RVec& X, int direction, double h,
                         bool richardson = false);

/// d rho^f / dX_j for all directions, dispatching on config
/// (analytic_derivative -> gibbs_derivative, else central FD with fd_step).
std::vector<Mat> frozen_derivatives(const Model& model, const RVec& X);

struct KernelOptions {
  bool second_order = true;  ///< also build Lambda^(2), Omega^(1), Omega^(2)
  /// FD step for the Omega builds, scaled by max(1, |X|_inf). 3e-4 balances
  /// Richardson truncation (h^4) against roundoff (eps/h) for kernels with
  /// order-one feature scales; the kernel sum rule closes to ~1e-10 there.
  double step = 3e-4;
  bool richardson = true;    ///< combine steps h and h/2
};

/// Response kernels at a control point. d = number of control parameters.
///   Lambda_{jl}      = Tr{ [Linv d_j rho^f] d_l H }          (P^(2) = Xd^T Lambda Xd)
///   Lambda^(n)_{a,j} = Tr{ D_a[ Linv^n d_j rho^f ] H }       (J^(1) = Lambda^(1).Xd)
///   Omega^(1)_{a,jl} = Tr{ D_a[ Linv d_j (Linv d_l rho^f) ] H }
///   Omega^(2)_{a,jl} = -d_j Lambda^(2)_{a,l}
/// J^(2)_a = Xd^T Omega^(1)_a Xd + Lambda^(2)_a . Xdd.
struct ResponseKernels {
  RMat lambda;
  std::vector<RVec> lambda1;
  std::vector<RVec> lambda2;
  std::vector<RMat> omega1;
  std::vector<RMat> omega2;
  /// True when every FD displacement of the Omega builds kept the secular
  /// channel structure of the base point. Across a Bohr-frequency coincidence
  /// the merged channels reorganize and the kernels jump, so an FD row that
  /// straddles such a boundary estimates a derivative that does not exist;
  /// the builder shrinks the stencil to stay on-branch and clears this flag
  /// when no clean stencil was found (base point on the coincidence set).
  bool fd_stencil_clean = true;

  RMat lambda_sym() const { return 0.5 * (lambda + lambda.transpose()); }
  RMat omega_total(int bath) const { return omega1.at(bath) + omega2.at(bath); }
  RMat omega_total_sym(int bath) const {
    RMat o = omega_total(bath);
    return 0.5 * (o + o.transpose());
  }
};

ResponseKernels response_kernels(const Model& model, const RVec& X,
                                 const KernelOptions& opt = {});

/// Kernels together with the frozen solution and the intermediate fields,
/// for callers that need rho^f, d_j rho^f, y_j = Linv[d_j rho^f] and the
/// kernels at the same point without refactorizing.
struct PointKernels {
  FrozenPoint point;
  std::vector<Mat> drho;  ///< d rho^f / dX_j
  std::vector<Mat> y;     ///< Linv[d_j rho^f]
  ResponseKernels kernels;

  /// rho^(1) for a given velocity.
  Mat rho1(const RVec& Xdot) const;
};

PointKernels point_kernels(const Model& model, const RVec& X, const KernelOptions& opt = {});

/// First-order (adiabatic-response) correction:
/// rho^(1) = sum_j Xdot_j Linv[d_j rho^f]. Traceless, Hermitian.
Mat rho_order1(const Model& model, const RVec& X, const RVec& Xdot);

/// Second-order correction rho^(2) = Linv[d rho^(1)/dt], where
/// d rho^(1)/dt = sum_j Xdot_j d_j rho^(1) + sum_j Xddot_j Linv[d_j rho^f].
/// The parameter derivative of the rho^(1) field uses central differences
/// (optionally Richardson-extrapolated).
Mat rho_order2(const Model& model, const RVec& X, const RVec& Xdot, const RVec& Xddot,
               double step = 1e-3, bool richardson = true);

}  // namespace qpump
