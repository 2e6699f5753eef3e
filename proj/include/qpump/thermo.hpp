#pragma once

#include "qpump/protocol.hpp"
#include "qpump/response.hpp"

#include <vector>

namespace qpump {

/// Instantaneous thermodynamic quantities at one node of a driving cycle.
/// Bath-indexed vectors follow the order of config.baths.
struct InstantReport {
  double t = 0;
  RVec X, Xdot, Xddot;

  double P1 = 0;               ///< Tr{rho^f dH/dt}
  double P2 = 0;               ///< Xd^T Lambda Xd
  std::vector<double> Jf;      ///< Tr{D_a[rho^f] H}, zero up to solver accuracy
  std::vector<double> J1;      ///< Lambda^(1)_a . Xd
  std::vector<double> J2;      ///< Xd^T Omega_a Xd + Lambda^(2)_a . Xdd

  double Sf = 0;               ///< von Neumann entropy of rho^f
  double S1 = 0;               ///< Tr{rho^(1) H} / T
  double dSf_dt = 0;           ///< analytic, sum_j Tr{d_j rho^f H} Xd_j / T
  double energy = 0;           ///< Tr{(rho^f + rho^(1)) H}

  // Filled by the series post-pass (periodic differentiation of the series):
  double dS1_dt = 0;
  double dE_dt = 0;
  double r1 = 0, r2 = 0, r3 = 0;  ///< relative balance residuals

  double sumJ1() const;
  double sumJ2() const;
};

struct BenchmarkSeries {
  std::vector<InstantReport> nodes;
  double max_r1 = 0, max_r2 = 0, max_r3 = 0;
};

/// First/second-order currents and powers on a uniform midpoint grid over one
/// cycle, plus three consistency residuals:
///   r1: first law through second order,
///       d/dt Tr{(rho^f + rho^(1)) H} = P^(1) + P^(2) + sum_a (J^f + J^(1) + J^(2))_a,
///       with the energy derivative from periodic differentiation of the
///       sampled series — a route independent of the kernel assembly.
///   r2: first-order entropy balance dS^f/dt = sum_a J^(1)_a / T, with the
///       Gibbs derivative taken analytically.
///   r3: second-order entropy balance dS^(1)/dt = (sum_a J^(2)_a + P^(2)) / T,
///       with dS^(1)/dt from periodic differentiation of S^(1)(t).
/// Each residual is normalized by the cycle maximum of its constituent terms.
BenchmarkSeries benchmark_series(const Model& model, const Protocol& proto, int nodes,
                                 const KernelOptions& opt = {});

/// Centered 6th-order periodic derivative of a uniformly sampled series
/// (period tau). Exact to O((tau/n)^6) for smooth periodic data.
RVec periodic_derivative(const RVec& samples, double tau);

}  // namespace qpump
