#pragma once

#include "qpump/common.hpp"
#include "qpump/frozen.hpp"
#include "qpump/model.hpp"

#include <memory>
#include <vector>

namespace qpump {

/// Superoperator for -i[H, rho] in column-stacking vectorization.
Mat commutator_superop(const Mat& H);

/// Dissipator superoperator for one bath:
///   D[rho] = sum_w (L_w rho L_w^+ - 1/2 {L_w^+ L_w, rho}),  L_w = g sqrt(gamma(w)) pi_w.
Mat dissipator_superop(const BathSpec& bath, const std::vector<BohrChannel>& channels);

/// unvec(S vec(rho)).
Mat apply_superop(const Mat& superop, const Mat& rho);

/// Gibbs state exp(-H/T)/Z.
Mat gibbs_state(const Mat& H, double T);

/// Von Neumann entropy -Tr[rho ln rho] with the 0 ln 0 = 0 convention.
double von_neumann_entropy(const Mat& rho);

/// Linear-solve engine for one frozen Lindbladian: steady state and the
/// inverse restricted to the traceless subspace.
///
/// Primary route: the Lindbladian has vec(I) as an exact left null vector
/// (trace preservation), so the square bordered system
///   [ L        vec(I)/sqrt(N) ] [x     ]   [y]
///   [ vec(I)^H/sqrt(N)   0    ] [lambda] = [t]
/// is nonsingular whenever the kernel is one-dimensional, and solves both the
/// steady state (y=0, t=1) and the traceless inverse (y traceless, t=0)
/// exactly — no least-squares bias. One LU factorization is reused for all
/// right-hand sides at this parameter point.
///
/// If the LU solution fails its residual check (near-degenerate kernel), the
/// solver falls back to a minimum-norm SVD solve and reports kernel
/// diagnostics.
class FrozenSolver {
 public:
  FrozenSolver(Mat lindbladian, int dim, double rank_tol = 1e-12);

  const Mat& lindbladian() const { return L_; }
  int dim() const { return dim_; }

  /// Hermitian, unit-trace steady state. Throws NumericalError with the kernel
  /// dimension if the kernel is not one-dimensional.
  Mat steady_state() const;

  /// Solve L x = y with Tr x = 0 for traceless y (minimum-norm in the
  /// degenerate fallback). Throws if Tr y exceeds tolerance.
  Mat solve_traceless(const Mat& y) const;

  /// Kernel dimension: number of singular values below rank_tol * s_max.
  int kernel_dimension() const;

  /// sigma_second_smallest / sigma_max — conditioning diagnostic of the
  /// restricted inverse.
  double kernel_gap_ratio() const;

 private:
  Mat L_;
  int dim_;
  double rank_tol_;
  double scale_;           // max |L| entry, used in residual checks
  double lu_pivot_ratio_;  // min/max |U diagonal| — collapses for a rank-deficient border
  Eigen::PartialPivLU<Mat> lu_;
  mutable std::unique_ptr<Eigen::BDCSVD<Mat>> svd_;  // lazy fallback

  const Eigen::BDCSVD<Mat>& svd() const;
  Vec lu_solve(const Vec& rhs_top, double rhs_bottom) const;
  Mat svd_solve_traceless(const Vec& y) const;
};

/// Everything frozen at one control point X: spectral data, channels,
/// dissipators, the Lindbladian and its solver.
struct FrozenPoint {
  RVec X;
  Mat H;
  FrozenBasis basis;
  std::vector<std::vector<BohrChannel>> channels;  // per bath
  std::vector<Mat> dissipators;                    // superops, per bath
  Mat lindbladian;
  std::shared_ptr<const FrozenSolver> solver;

  /// Steady state (cached; solves on first use).
  const Mat& rho_f() const;

  /// Tr{ D_alpha[rho] H } — the heat current into the system from bath alpha
  /// for a given density-matrix correction.
  double heat_trace(int bath, const Mat& rho) const;

 private:
  mutable std::shared_ptr<const Mat> rho_f_cache_;
};

FrozenPoint freeze(const Model& model, const RVec& X);

}  // namespace qpump
