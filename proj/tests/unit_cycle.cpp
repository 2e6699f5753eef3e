#include "qpump/cycle.hpp"

#include "doctest.h"

#include <cmath>

using namespace qpump;

namespace {

SystemConfig fig_config(double J = 0.0, double eta = 1.2, double b = 2.0) {
  SystemConfig cfg;
  cfg.n_qubits = 2;
  cfg.J = J;
  cfg.eta = eta;
  cfg.b = b;
  cfg.baths = SystemConfig::default_baths();
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("cycle");

TEST_CASE("closed cycle: pumped heats cancel and work balances heat") {
  const Model m(fig_config(1.0));
  const Protocol p = circle_protocol(1.0, 1.0);
  CycleOptions opt;
  opt.nodes = 512;
  const CycleReport rep = run_cycle(m, p, opt);
  CHECK(std::abs(rep.pump_sum) <
        1e-10 * std::max({std::abs(rep.q_pump[0]), std::abs(rep.q_pump[1]), 1e-300}));
  // This circle grazes the B_z = 0 axis, where two Bohr frequencies cross
  // the secular merge window: the kernels pick up a kink there and the
  // midpoint sums close only to O(nodes^-2) instead of spectrally (smooth
  // paths close to ~1e-13, see the acceptance suite).
  CHECK(rep.balance < 1e-5);
  CHECK(rep.w2 > 0.0);
  CHECK(rep.length > 0.0);
  CHECK(rep.w2_tau >= rep.length_sq * (1.0 - 1e-12));
}

TEST_CASE("pumped heat is invariant under reparameterization") {
  const Model m(fig_config(2.0));
  const Protocol base = circle_protocol(1.0, 1.0);
  const double q_base = pumped_heat_line(m, base, 0, 1024);
  for (unsigned seed : {1u, 2u}) {
    const Protocol warped = time_warp(base, seed, 0.5);
    const double q_warp = pumped_heat_line(m, warped, 0, 1024);
    CHECK(q_warp == doctest::Approx(q_base).epsilon(1e-9));
  }
  // And under a change of period.
  const double q_slow = pumped_heat_line(m, with_period(base, 7.0), 0, 1024);
  CHECK(q_slow == doctest::Approx(q_base).epsilon(1e-11));
}

TEST_CASE("dissipated work is not below the squared length; arc profile saturates") {
  const Model m(fig_config(1.0));
  const Protocol base = circle_protocol(1.0, 1.0);
  CycleOptions opt;
  opt.nodes = 512;
  opt.second_order = false;

  const CycleReport rep0 = run_cycle(m, base, opt);
  CHECK(rep0.w2_tau >= rep0.length_sq * (1.0 - 1e-12));

  for (unsigned seed : {3u, 4u, 5u}) {
    const CycleReport rep = run_cycle(m, time_warp(base, seed, 0.6), opt);
    CHECK(rep.w2_tau >= rep.length_sq * (1.0 - 1e-12));
    // The same geometric path: same length, larger dissipation. The metric
    // speed of a closed path touches zero where the tangent crosses the
    // near-null metric direction, so the sqrt integrand has kinks and the
    // 512-node midpoint lengths agree only to O(nodes^-2).
    CHECK(rep.length == doctest::Approx(rep0.length).epsilon(3e-5));
    CHECK(rep.w2_tau > rep0.w2_tau * (1.0 - 1e-12));
  }

  const Protocol flat = arc_length_profile(m, base, 512);
  const CycleReport repf = run_cycle(m, flat, opt);
  CHECK(repf.w2_tau == doctest::Approx(repf.length_sq).epsilon(1e-6));
}

TEST_CASE("arc-length profile: constant metric speed, same geometry") {
  const Model m(fig_config(1.0));
  const Protocol base = time_warp(circle_protocol(1.0, 1.0), 9, 0.5);
  const Protocol flat = arc_length_profile(m, base, 512);
  CHECK(flat.tau == doctest::Approx(base.tau));
  CHECK(flat.closure_defect() < 1e-9);

  const auto metric_speed = [&](const Protocol& p, double t) {
    const ResponseKernels k = response_kernels(m, p.position(t), KernelOptions{false});
    const RVec v = p.velocity(t);
    return std::sqrt(std::max(0.0, v.dot(k.lambda_sym() * v)));
  };
  const double s0 = metric_speed(flat, 0.2);
  for (double t : {0.4, 0.6, 0.8})
    CHECK(metric_speed(flat, t) == doctest::Approx(s0).epsilon(1e-4));

  // Same circle, just retimed.
  for (double t : {0.1, 0.5, 0.9}) {
    const RVec X = flat.position(t);
    CHECK(std::hypot(X[0] - 1.0, X[1] - 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("segment heat: quasi-static heats sum to the entropy change") {
  // Along any open path, sum_a Q_a = T [S(end) - S(start)] at first order.
  const Model m(fig_config(2.0));
  const auto segs = sector_segments(20.0);
  const auto& seg = segs[0];  // (R,0) -> (0,0)
  const double qL = segment_heat(m, seg, 0, 64);
  const double qR = segment_heat(m, seg, 1, 64);

  const auto entropy_at = [&](const RVec& X) {
    return von_neumann_entropy(gibbs_state(m.hamiltonian(X), 1.0));
  };
  RVec X0(2), X1(2);
  X0 << 20.0, 0.0;
  X1 << 0.0, 0.0;
  const double dS = entropy_at(X1) - entropy_at(X0);
  CHECK(qL + qR == doctest::Approx(dS).epsilon(1e-6));
}

TEST_CASE("rotor maps of the two baths cancel") {
  // sum_a Lambda^(1)_a = T grad S^f is a gradient field, so the rotors of the
  // two pumping fields are opposite.
  const Model m(fig_config(1.0));
  RVec xs(12), zs(12);
  for (int i = 0; i < 12; ++i) {
    xs[i] = 0.3 + 0.15 * i;
    zs[i] = 0.3 + 0.15 * i;
  }
  const FieldMap rL = rotor_map(m, 0, xs, zs);
  const FieldMap rR = rotor_map(m, 1, xs, zs);
  REQUIRE(rL.values.rows() == 12);
  const double scale = std::max(max_abs(rL.values), max_abs(rR.values));
  CHECK(max_abs(RMat(rL.values + rR.values)) < 1e-6 * scale);
}

TEST_CASE("stokes form agrees with the line integral") {
  const Model m(fig_config(2.0));
  const Protocol p = circle_protocol(0.6, 1.0);
  const double q_line = pumped_heat_line(m, p, 0, 1024);

  const int n = 41;
  RVec xs(n), zs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = -0.25 + 1.7 * i / (n - 1);
    zs[i] = -0.25 + 1.7 * i / (n - 1);
  }
  const FieldMap rot = rotor_map(m, 0, xs, zs);
  const double q_flux = pumped_heat_stokes(rot, p);
  CHECK(q_flux == doctest::Approx(q_line).epsilon(5e-3));
}

TEST_CASE("kernel balance scan reports a small residual and the grid minimum gap") {
  const Model m(fig_config(1.0));
  RVec xs(8), zs(8);
  for (int i = 0; i < 8; ++i) {
    xs[i] = 0.4 + 0.25 * i;
    zs[i] = 0.4 + 0.25 * i;
  }
  const KernelScan scan = kernel_balance_scan(m, xs, zs);
  CHECK(scan.max_residual < 1e-8);
  CHECK(scan.min_gap > 0.0);
  CHECK(scan.residual_map.rows() == 8);
  CHECK(scan.residual_map.cols() == 8);
}

TEST_SUITE_END();
