#include "qpump/protocol.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace qpump {

namespace {

RVec vec2(double x, double z) {
  RVec v(2);
  v << x, z;
  return v;
}

}  // namespace

double Protocol::closure_defect() const {
  return (position(tau) - position(0.0)).cwiseAbs().maxCoeff();
}

Protocol ellipse_protocol(double B0, double tau) {
  if (B0 <= 0 || tau <= 0) throw ConfigError("ellipse_protocol: B0 and tau must be positive");
  Protocol p;
  p.kind = "ellipse";
  p.tau = tau;
  const double w = 2.0 * kPi / tau;
  p.position = [B0, w](double t) {
    return vec2(B0 * (1.0 + 0.5 * std::cos(w * t)), B0 * (0.5 + 0.25 * std::sin(w * t)));
  };
  p.velocity = [B0, w](double t) {
    return vec2(-B0 * 0.5 * w * std::sin(w * t), B0 * 0.25 * w * std::cos(w * t));
  };
  p.acceleration = [B0, w](double t) {
    return vec2(-B0 * 0.5 * w * w * std::cos(w * t), -B0 * 0.25 * w * w * std::sin(w * t));
  };
  return p;
}

Protocol circle_protocol(double B0, double tau) {
  if (B0 <= 0 || tau <= 0) throw ConfigError("circle_protocol: B0 and tau must be positive");
  Protocol p;
  p.kind = "circle";
  p.tau = tau;
  const double w = 2.0 * kPi / tau;
  p.position = [B0, w](double t) {
    return vec2(B0 * (1.0 + std::cos(w * t)), B0 * (1.0 + std::sin(w * t)));
  };
  p.velocity = [B0, w](double t) {
    return vec2(-B0 * w * std::sin(w * t), B0 * w * std::cos(w * t));
  };
  p.acceleration = [B0, w](double t) {
    return vec2(-B0 * w * w * std::cos(w * t), -B0 * w * w * std::sin(w * t));
  };
  return p;
}

std::vector<PathSegment> sector_segments(double R) {
  if (R <= 0) throw ConfigError("sector_segments: R must be positive");
  std::vector<PathSegment> segs(3);

  segs[0].label = "C>";
  segs[0].position = [R](double u) { return vec2(R * (1.0 - u), 0.0); };
  segs[0].tangent = [R](double) { return vec2(-R, 0.0); };

  segs[1].label = "C<";
  segs[1].position = [R](double u) { return vec2(0.0, R * u); };
  segs[1].tangent = [R](double) { return vec2(0.0, R); };

  segs[2].label = "arc";
  segs[2].position = [R](double u) {
    const double phi = 0.5 * kPi * (1.0 - u);
    return vec2(R * std::cos(phi), R * std::sin(phi));
  };
  segs[2].tangent = [R](double u) {
    const double phi = 0.5 * kPi * (1.0 - u);
    return vec2(R * std::sin(phi) * 0.5 * kPi, -R * std::cos(phi) * 0.5 * kPi);
  };
  return segs;
}

namespace {

/// Arclength-parameterized path piece with closed-form derivatives.
struct ArcPiece {
  double length;
  std::function<RVec(double)> pos;   // s in [0, length]
  std::function<RVec(double)> der;   // unit tangent
  std::function<RVec(double)> der2;  // curvature vector
};

ArcPiece line_piece(const RVec& a, const RVec& b) {
  const RVec d = b - a;
  const double len = d.norm();
  const RVec u = d / len;
  return {len, [a, u](double s) { return RVec(a + s * u); }, [u](double) { return u; },
          [](double) { return vec2(0.0, 0.0); }};
}

/// Circular arc around `c` with radius r, angle phi(s) = phi0 + sgn * s / r.
ArcPiece arc_piece(const RVec& c, double r, double phi0, double phi1) {
  const double sgn = (phi1 >= phi0) ? 1.0 : -1.0;
  const double len = r * std::abs(phi1 - phi0);
  return {len,
          [c, r, phi0, sgn](double s) {
            const double phi = phi0 + sgn * s / r;
            return RVec(c + r * vec2(std::cos(phi), std::sin(phi)));
          },
          [r, phi0, sgn](double s) {
            const double phi = phi0 + sgn * s / r;
            return RVec(sgn * vec2(-std::sin(phi), std::cos(phi)));
          },
          [r, phi0, sgn](double s) {
            const double phi = phi0 + sgn * s / r;
            return RVec(-vec2(std::cos(phi), std::sin(phi)) / r);
          }};
}

}  // namespace

Protocol sector_protocol(double R, double corner_radius, double tau) {
  if (R <= 0 || tau <= 0) throw ConfigError("sector_protocol: R and tau must be positive");
  const double rc = corner_radius;
  if (rc <= 0 || rc >= 0.25 * R)
    throw ConfigError("sector_protocol: corner_radius must lie in (0, R/4)");

  // Fillet geometry: x0 is the tangency abscissa of the corner fillets that
  // join the straight legs to the quarter-circle arc of radius R.
  const double x0 = std::sqrt((R - rc) * (R - rc) - rc * rc);
  const double phi_c = std::atan2(x0, rc);       // fillet angle at the (0,R) corner
  const double theta3 = 0.5 * kPi - phi_c;       // big-arc angle at the (R,0) fillet

  std::vector<ArcPiece> pieces;
  // Bottom leg inward, fillet at the origin, vertical leg outward,
  // fillet onto the big arc, quarter arc, fillet back onto the bottom leg.
  pieces.push_back(line_piece(vec2(x0, 0.0), vec2(rc, 0.0)));
  pieces.push_back(arc_piece(vec2(rc, rc), rc, -0.5 * kPi, -kPi));
  pieces.push_back(line_piece(vec2(0.0, rc), vec2(0.0, x0)));
  pieces.push_back(arc_piece(vec2(rc, x0), rc, kPi, phi_c));
  pieces.push_back(arc_piece(vec2(0.0, 0.0), R, phi_c, theta3));
  pieces.push_back(arc_piece(vec2(x0, rc), rc, theta3, -0.5 * kPi));

  double total = 0.0;
  std::vector<double> offsets(pieces.size());
  for (size_t i = 0; i < pieces.size(); ++i) {
    offsets[i] = total;
    total += pieces[i].length;
  }

  auto locate = [pieces, offsets, total](double s) {
    s = std::fmod(s, total);
    if (s < 0) s += total;
    size_t i = pieces.size() - 1;
    while (i > 0 && offsets[i] > s) --i;
    return std::pair<size_t, double>(i, s - offsets[i]);
  };

  Protocol p;
  p.kind = "sector";
  p.tau = tau;
  const double rate = total / tau;  // constant traversal speed
  p.position = [pieces, locate, rate](double t) {
    auto [i, sl] = locate(rate * t);
    return pieces[i].pos(sl);
  };
  p.velocity = [pieces, locate, rate](double t) {
    auto [i, sl] = locate(rate * t);
    return RVec(rate * pieces[i].der(sl));
  };
  p.acceleration = [pieces, locate, rate](double t) {
    auto [i, sl] = locate(rate * t);
    return RVec(rate * rate * pieces[i].der2(sl));
  };
  return p;
}

Protocol fourier_loop(unsigned seed, const RVec& center, double amplitude, int harmonics,
                      double tau) {
  if (amplitude <= 0 || tau <= 0 || harmonics < 1)
    throw ConfigError("fourier_loop: amplitude, tau, harmonics must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  const int nc = static_cast<int>(center.size());
  RMat a(nc, harmonics), b(nc, harmonics);
  for (int i = 0; i < nc; ++i)
    for (int k = 0; k < harmonics; ++k) {
      a(i, k) = uni(rng) / (k + 1.0);
      b(i, k) = uni(rng) / (k + 1.0);
    }
  // Bound the excursion per component and rescale to the requested amplitude.
  double bound = 0.0;
  for (int i = 0; i < nc; ++i) {
    double s = 0.0;
    for (int k = 0; k < harmonics; ++k) s += std::abs(a(i, k)) + std::abs(b(i, k));
    bound = std::max(bound, s);
  }
  a *= amplitude / bound;
  b *= amplitude / bound;

  Protocol p;
  p.kind = "fourier";
  p.tau = tau;
  const double w = 2.0 * kPi / tau;
  p.position = [center, a, b, w, nc](double t) {
    RVec x = center;
    for (int i = 0; i < nc; ++i)
      for (int k = 0; k < a.cols(); ++k)
        x[i] += a(i, k) * std::cos(w * (k + 1) * t) + b(i, k) * std::sin(w * (k + 1) * t);
    return x;
  };
  p.velocity = [a, b, w, nc](double t) {
    RVec v = RVec::Zero(nc);
    for (int i = 0; i < nc; ++i)
      for (int k = 0; k < a.cols(); ++k) {
        const double wk = w * (k + 1);
        v[i] += wk * (-a(i, k) * std::sin(wk * t) + b(i, k) * std::cos(wk * t));
      }
    return v;
  };
  p.acceleration = [a, b, w, nc](double t) {
    RVec acc = RVec::Zero(nc);
    for (int i = 0; i < nc; ++i)
      for (int k = 0; k < a.cols(); ++k) {
        const double wk = w * (k + 1);
        acc[i] -= wk * wk * (a(i, k) * std::cos(wk * t) + b(i, k) * std::sin(wk * t));
      }
    return acc;
  };
  return p;
}

Protocol time_warp(const Protocol& base, unsigned seed, double strength) {
  if (strength <= 0 || strength >= 1)
    throw ConfigError("time_warp: strength must lie in (0, 1)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);

  const int K = 3;
  const double tau = base.tau;
  const double w = 2.0 * kPi / tau;
  RVec c(K), psi(K);
  double budget = 0.0;
  for (int k = 0; k < K; ++k) {
    c[k] = uni(rng);
    psi[k] = phase(rng);
    budget += std::abs(c[k]) * w * (k + 1);
  }
  c *= strength / budget;  // guarantees phi' in (1 - strength, 1 + strength)

  auto phi = [c, psi, w, K](double t) {
    double s = t;
    for (int k = 0; k < K; ++k)
      s += c[k] * (std::sin(w * (k + 1) * t + psi[k]) - std::sin(psi[k]));
    return s;
  };
  auto dphi = [c, psi, w, K](double t) {
    double s = 1.0;
    for (int k = 0; k < K; ++k) s += c[k] * w * (k + 1) * std::cos(w * (k + 1) * t + psi[k]);
    return s;
  };
  auto ddphi = [c, psi, w, K](double t) {
    double s = 0.0;
    for (int k = 0; k < K; ++k) {
      const double wk = w * (k + 1);
      s -= c[k] * wk * wk * std::sin(wk * t + psi[k]);
    }
    return s;
  };

  Protocol p;
  p.kind = base.kind + "+warp";
  p.tau = tau;
  p.position = [base, phi](double t) { return base.position(phi(t)); };
  p.velocity = [base, phi, dphi](double t) { return RVec(base.velocity(phi(t)) * dphi(t)); };
  p.acceleration = [base, phi, dphi, ddphi](double t) {
    const double s = phi(t), v = dphi(t);
    return RVec(base.acceleration(s) * v * v + base.velocity(s) * ddphi(t));
  };
  return p;
}

Protocol with_period(const Protocol& base, double new_tau) {
  if (new_tau <= 0) throw ConfigError("with_period: tau must be positive");
  Protocol p;
  p.kind = base.kind;
  p.tau = new_tau;
  const double r = base.tau / new_tau;
  p.position = [base, r](double t) { return base.position(r * t); };
  p.velocity = [base, r](double t) { return RVec(r * base.velocity(r * t)); };
  p.acceleration = [base, r](double t) { return RVec(r * r * base.acceleration(r * t)); };
  return p;
}

double cycle_integral(const std::function<double(double)>& f, double tau, int nodes) {
  if (nodes < 1) throw ConfigError("cycle_integral: nodes must be >= 1");
  // Midpoint rule on a uniform grid; for smooth periodic integrands this is
  // trapezoid-equivalent (spectrally accurate) and avoids endpoint aliasing.
  const double h = tau / nodes;
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) acc += f((i + 0.5) * h);
  return acc * h;
}

void gauss_legendre(int n, RVec& nodes, RVec& weights) {
  if (n < 1) throw ConfigError("gauss_legendre: n must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on Legendre polynomials, mapped from [-1,1] to [0,1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace qpump
