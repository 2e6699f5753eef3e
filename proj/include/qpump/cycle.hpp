#pragma once

#include "qpump/protocol.hpp"
#include "qpump/response.hpp"

#include <string>
#include <vector>

namespace qpump {

struct CycleOptions {
  int nodes = 2048;          ///< uniform midpoint grid over one period
  bool second_order = true;  ///< also integrate J^(2) / the dissipation balance
  double delta_T = 0.1;      ///< temperature bias for the figures of merit
  KernelOptions kernels{};
};

/// Integral quantities over one closed driving cycle.
struct CycleReport {
  // Geometric (parameterization-independent):
  std::vector<double> q_pump;  ///< per-bath pumped heat, contour integral of Lambda^(1)_a
  double pump_sum = 0;         ///< sum over baths, vanishes for closed cycles
  double length = 0;           ///< thermodynamic length L = contour integral of sqrt(Xd^T Lambda^s Xd) dt
  double length_sq = 0;        ///< L^2 — the minimum of W^(2) tau over reparameterizations

  // Dynamic (depend on the traversal rate):
  double w2 = 0;               ///< dissipated work per cycle, integral of P^(2)
  double w2_tau = 0;           ///< W^(2) tau, bounded below by L^2
  std::vector<double> q2;      ///< per-bath second-order heat per cycle
  double balance = 0;          ///< |W^(2) + sum_a Q^(2)_a| / max term (energy bookkeeping)

  // Figures of merit at the configured temperature bias:
  int cold_bath = 1;
  double A = 0;                ///< pumped heat into the cold bath per cycle
  double merit = 0;            ///< A^2 / L^2
  double tau_D = 0;            ///< optimal period 2 T L^2 / (A dT); 0 when A = 0
  double p_max = 0;            ///< max time-averaged power (A/L)^2 (dT/T)^2 / 4
  bool bias_warning = false;   ///< delta_T / T outside the linear-response regime
};

CycleReport run_cycle(const Model& model, const Protocol& proto, const CycleOptions& opt = {});

/// Pumped heat into one bath over a closed cycle (first-order kernels only).
double pumped_heat_line(const Model& model, const Protocol& proto, int bath, int nodes = 512);

/// Pumped heat into one bath along one open path segment, by Gauss-Legendre
/// quadrature of Lambda^(1)_a . dX/du over u in [0, 1].
double segment_heat(const Model& model, const PathSegment& seg, int bath, int gl_nodes = 64);

/// Scalar field sampled on a rectangular control grid (values(iz, ix)).
struct FieldMap {
  RVec xs, zs;
  RMat values;
};

/// Rotor of the pumping field, rot_a = d(Lambda^(1)_{a,z})/dX_x
/// - d(Lambda^(1)_{a,x})/dX_z, evaluated pointwise at every grid node by
/// central differences at the kernel FD step (Richardson-extrapolated per
/// opt). Differencing across grid spacings instead would bury the exact
/// cancellation rot_L + rot_R = 0 under O(grid^2) truncation.
FieldMap rotor_map(const Model& model, int bath, const RVec& xs, const RVec& zs,
                   const KernelOptions& opt = {false});

/// Surface integral of a rotor map over the region enclosed by a closed
/// protocol (Stokes form of the pumped heat). Bilinear interpolation on the
/// map; cells crossing the boundary are subdivided. The map must cover the
/// curve with at least one interior-grid margin.
double pumped_heat_stokes(const FieldMap& rotor, const Protocol& proto,
                          int boundary_samples = 1024, int subdivision = 8);

/// Max relative defect of the kernel sum rule Lambda^s + sum_a Omega^s_a = 0
/// over a control grid, with the worst grid point and the smallest kernel gap
/// encountered. Points whose FD stencil crossed a Bohr-coincidence branch
/// (kernels jump there, the sum rule has no pointwise meaning) are counted
/// separately: `max_residual` covers every point, `max_residual_clean` only
/// the on-branch ones.
struct KernelScan {
  double max_residual = 0;
  double max_residual_clean = 0;
  int n_dirty = 0;
  RVec argmax;
  double min_gap = 1;
  RMat residual_map;  ///< (zs.size() x xs.size())
  RMat clean_map;     ///< 1 = FD stencil stayed on the base branch
};
KernelScan kernel_balance_scan(const Model& model, const RVec& xs, const RVec& zs,
                               const KernelOptions& opt = {});

/// Reparameterize a closed protocol to constant metric speed
/// sqrt(Xd^T Lambda^s Xd) (the minimizer of W^(2) tau at fixed path and
/// period). Tabulates the metric speed on `table_nodes` midpoints and inverts
/// the cumulative arc length by monotone linear interpolation. The metric is
/// nearly rank-one at weak coupling, so closed paths generically touch zero
/// metric speed; a relative floor (1e-6 of the path maximum) keeps the
/// traversal rate finite through those crossings.
Protocol arc_length_profile(const Model& model, const Protocol& base, int table_nodes = 512);

}  // namespace qpump
