#pragma once

#include "qpump/common.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qpump {

/// Closed parametric curve X(t) in control space, t in [0, tau], with analytic
/// velocity and acceleration evaluators.
struct Protocol {
  std::string kind;
  double tau = 1.0;
  std::function<RVec(double)> position;
  std::function<RVec(double)> velocity;
  std::function<RVec(double)> acceleration;

  RVec X(double t) const { return position(t); }
  RVec Xdot(double t) const { return velocity(t); }
  RVec Xddot(double t) const { return acceleration(t); }

  /// max |X(tau) - X(0)| — closure diagnostic.
  double closure_defect() const;
};

/// B_x = B0 (1 + 0.5 cos 2 pi t/tau), B_z = B0 (0.5 + 0.25 sin 2 pi t/tau).
Protocol ellipse_protocol(double B0, double tau = 1.0);

/// Circle of radius B0 centered at (B0, B0), tangent to both axes:
/// B_x = B0 (1 + cos 2 pi t/tau), B_z = B0 (1 + sin 2 pi t/tau).
Protocol circle_protocol(double B0, double tau = 1.0);

/// One leg of a piecewise path, parameterized by u in [0, 1].
struct PathSegment {
  std::string label;
  std::function<RVec(double)> position;
  std::function<RVec(double)> tangent;  ///< dX/du
};

/// Quadrant-sector path (sharp corners, for velocity-only line integrals):
///   C>  : horizontal leg inward, (R, 0) -> (0, 0)
///   C<  : vertical leg outward,  (0, 0) -> (0, R)
///   arc : quarter circle,        (0, R) -> (R, 0)
std::vector<PathSegment> sector_segments(double R);

/// Smooth C^1 realization of the quadrant sector: corners rounded with
/// fillets of the given radius and traversed at C^1-ramped speed, so the
/// acceleration stays bounded and second-order quantities are well defined.
Protocol sector_protocol(double R, double corner_radius, double tau = 1.0);

/// Random smooth closed loop: truncated Fourier series per component around
/// `center`, peak excursion bounded by `amplitude`. Deterministic in `seed`.
Protocol fourier_loop(unsigned seed, const RVec& center, double amplitude,
                      int harmonics = 3, double tau = 1.0);

/// Reparameterize a protocol by a smooth bijective time warp
/// phi: [0,tau] -> [0,tau] with phi' > 0 (same path, different velocity
/// profile). Deterministic in `seed`; strength < 1 controls |phi' - 1|.
Protocol time_warp(const Protocol& base, unsigned seed, double strength = 0.5);

/// Same path traversed over a different period (linear time rescale).
Protocol with_period(const Protocol& base, double new_tau);

/// Uniform-grid cycle integral of a periodic integrand over [0, tau):
/// (tau/n) * sum f((i + 1/2) tau/n) — the midpoint rule, trapezoid-equivalent
/// (spectrally accurate) on smooth periodic data.
double cycle_integral(const std::function<double(double)>& f, double tau, int nodes);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, RVec& nodes, RVec& weights);

}  // namespace qpump
