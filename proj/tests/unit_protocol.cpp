#include "qpump/protocol.hpp"

#include "doctest.h"

#include <cmath>

using namespace qpump;

namespace {

void check_derivatives(const Protocol& p, double t, double tol = 1e-6) {
  const double h = 1e-6 * p.tau;
  const RVec vfd = (p.position(t + h) - p.position(t - h)) / (2 * h);
  const RVec afd = (p.velocity(t + h) - p.velocity(t - h)) / (2 * h);
  CHECK((p.velocity(t) - vfd).norm() < tol * std::max(1.0, vfd.norm()));
  CHECK((p.acceleration(t) - afd).norm() < tol * std::max(1.0, afd.norm()));
}

}  // namespace

TEST_SUITE_BEGIN("protocol");

TEST_CASE("ellipse: parameterization and closure") {
  const Protocol p = ellipse_protocol(1.0, 1.0);
  CHECK(p.closure_defect() < 1e-12);
  const RVec X0 = p.position(0.0);
  CHECK(X0[0] == doctest::Approx(1.5));
  CHECK(X0[1] == doctest::Approx(0.5));
  const RVec Xq = p.position(0.25);
  CHECK(Xq[0] == doctest::Approx(1.0));
  CHECK(Xq[1] == doctest::Approx(0.75));
  for (double t : {0.13, 0.49, 0.77}) check_derivatives(p, t);
}

TEST_CASE("circle: radius and center") {
  const Protocol p = circle_protocol(0.8, 2.0);
  CHECK(p.closure_defect() < 1e-12);
  for (double t : {0.0, 0.31, 1.2, 1.9}) {
    const RVec X = p.position(t);
    const double r = std::hypot(X[0] - 0.8, X[1] - 0.8);
    CHECK(r == doctest::Approx(0.8).epsilon(1e-12));
  }
  for (double t : {0.41, 1.37}) check_derivatives(p, t);
}

TEST_CASE("sector segments: endpoints and tangents") {
  const auto segs = sector_segments(20.0);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].label == "C>");
  CHECK(segs[1].label == "C<");
  CHECK(segs[2].label == "arc");

  CHECK((segs[0].position(0.0) - (RVec(2) << 20, 0).finished()).norm() < 1e-12);
  CHECK((segs[0].position(1.0) - RVec(RVec::Zero(2))).norm() < 1e-12);
  CHECK((segs[1].position(0.0) - RVec(RVec::Zero(2))).norm() < 1e-12);
  CHECK((segs[1].position(1.0) - (RVec(2) << 0, 20).finished()).norm() < 1e-12);
  CHECK((segs[2].position(0.0) - (RVec(2) << 0, 20).finished()).norm() < 1e-12);
  CHECK((segs[2].position(1.0) - (RVec(2) << 20, 0).finished()).norm() < 1e-12);

  // Arc stays on the circle of radius R; tangent matches finite differences.
  for (double u : {0.2, 0.5, 0.9}) {
    CHECK(segs[2].position(u).norm() == doctest::Approx(20.0).epsilon(1e-12));
    const double h = 1e-7;
    const RVec fd = (segs[2].position(u + h) - segs[2].position(u - h)) / (2 * h);
    CHECK((segs[2].tangent(u) - fd).norm() < 1e-5);
  }
}

TEST_CASE("rounded sector: closed, C^1, constant speed, near the sharp path") {
  const double R = 20.0, rc = 1.0;
  const Protocol p = sector_protocol(R, rc, 1.0);
  CHECK(p.closure_defect() < 1e-10);

  // Constant traversal speed (arclength parameterization).
  const double v0 = p.velocity(0.1).norm();
  for (double t : {0.3, 0.52, 0.74, 0.98})
    CHECK(p.velocity(t).norm() == doctest::Approx(v0).epsilon(1e-9));

  // Velocity is continuous across the piece boundaries (C^1): scan a fine
  // grid for jumps.
  double max_jump = 0.0;
  const int n = 4000;
  for (int i = 0; i + 1 < n; ++i) {
    const double t0 = i * 1.0 / n, t1 = (i + 1) * 1.0 / n;
    max_jump = std::max(max_jump, (p.velocity(t1) - p.velocity(t0)).norm());
  }
  CHECK(max_jump < 3.0 * v0 / n * 2.0 * kPi * R / rc / 4.0);  // bounded curvature

  // The rounded path deviates from the sharp sector by at most the corner
  // radius, and only near the corners.
  for (double t : {0.0, 0.2, 0.5, 0.8}) {
    const RVec X = p.position(t);
    CHECK(X[0] > -1e-9);
    CHECK(X[1] > -1e-9);
    CHECK(X.norm() < R + 1e-9);
  }
  for (double t : {0.13, 0.37, 0.61, 0.83}) check_derivatives(p, t, 1e-4);
}

TEST_CASE("fourier loop: closed, smooth, bounded excursion, deterministic") {
  RVec center(2);
  center << 1.2, 1.2;
  const Protocol p1 = fourier_loop(42, center, 0.5, 3, 1.0);
  const Protocol p2 = fourier_loop(42, center, 0.5, 3, 1.0);
  const Protocol p3 = fourier_loop(43, center, 0.5, 3, 1.0);
  CHECK(p1.closure_defect() < 1e-12);
  CHECK((p1.position(0.37) - p2.position(0.37)).norm() == doctest::Approx(0.0));
  CHECK((p1.position(0.37) - p3.position(0.37)).norm() > 1e-6);
  for (double t : {0.0, 0.21, 0.5, 0.83}) {
    CHECK((p1.position(t) - center).cwiseAbs().maxCoeff() <= 0.5 + 1e-12);
  }
  for (double t : {0.11, 0.67}) check_derivatives(p1, t, 1e-5);
}

TEST_CASE("time warp: same path, same period, different speed") {
  const Protocol base = circle_protocol(1.0, 1.0);
  const Protocol warped = time_warp(base, 5, 0.5);
  CHECK(warped.tau == doctest::Approx(1.0));
  CHECK((warped.position(0.0) - base.position(0.0)).norm() < 1e-12);
  CHECK(warped.closure_defect() < 1e-10);
  // Warped positions stay on the base path (distance to circle is zero).
  for (double t : {0.1, 0.33, 0.72, 0.95}) {
    const RVec X = warped.position(t);
    CHECK(std::hypot(X[0] - 1.0, X[1] - 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
  // The velocity profile actually changes.
  double dev = 0.0;
  for (double t : {0.1, 0.3, 0.5, 0.7})
    dev = std::max(dev, (warped.velocity(t) - base.velocity(t)).norm());
  CHECK(dev > 1e-3);
  for (double t : {0.19, 0.58}) check_derivatives(warped, t, 1e-5);
}

TEST_CASE("with_period: linear rescale of time") {
  const Protocol base = ellipse_protocol(1.0, 1.0);
  const Protocol slow = with_period(base, 4.0);
  CHECK(slow.tau == doctest::Approx(4.0));
  CHECK((slow.position(2.0) - base.position(0.5)).norm() < 1e-12);
  CHECK((slow.velocity(2.0) - RVec(base.velocity(0.5) / 4.0)).norm() < 1e-12);
  CHECK((slow.acceleration(2.0) - RVec(base.acceleration(0.5) / 16.0)).norm() < 1e-12);
}

TEST_CASE("cycle integral: spectral accuracy on periodic data") {
  const double tau = 2.0;
  const auto f = [tau](double t) {
    return 1.3 + std::sin(2 * kPi * t / tau) + 0.25 * std::cos(6 * kPi * t / tau);
  };
  CHECK(cycle_integral(f, tau, 64) == doctest::Approx(1.3 * tau).epsilon(1e-12));
}

TEST_CASE("gauss-legendre on [0,1]: exact for polynomials, sums to 1") {
  RVec x, w;
  gauss_legendre(16, x, w);
  REQUIRE(x.size() == 16);
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-14));
  for (int k : {1, 2, 7, 20, 31}) {
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) acc += w[i] * std::pow(x[i], k);
    CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
  }
  // Nodes are interior and ascending.
  CHECK(x.minCoeff() > 0.0);
  CHECK(x.maxCoeff() < 1.0);
  for (int i = 0; i + 1 < 16; ++i) CHECK(x[i] < x[i + 1]);
}

TEST_SUITE_END();
