#include "qpump/oracle.hpp"

#include "doctest.h"

#include <cmath>

using namespace qpump;

namespace {

SystemConfig one_qubit_config() {
  SystemConfig cfg;
  cfg.n_qubits = 1;
  cfg.baths = SystemConfig::default_baths();
  return cfg;
}

SystemConfig two_qubit_config(double J, double eta = 1.2, double b = 2.0) {
  SystemConfig cfg;
  cfg.n_qubits = 2;
  cfg.J = J;
  cfg.eta = eta;
  cfg.b = b;
  cfg.baths = SystemConfig::default_baths();
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("bloch vector and steady state closed forms") {
  RVec B(2);
  B << 0.6, 0.8;
  const auto r = single_qubit_bloch(B);
  CHECK(r.norm() == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
  CHECK(r[0] == doctest::Approx(0.6 * std::tanh(1.0)).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(0.0));
  const Mat rho = single_qubit_steady(B);
  CHECK(std::abs(rho.trace() - cplx(1, 0)) < 1e-14);
  CHECK((rho.adjoint() - rho).norm() < 1e-14);
  // Purity from the Bloch norm.
  CHECK((rho * rho).trace().real() ==
        doctest::Approx(0.5 * (1 + std::pow(std::tanh(1.0), 2))).epsilon(1e-12));
}

TEST_CASE("entropy rate matches finite differences of the entropy") {
  RVec B(2), Bd(2);
  B << 1.1, 0.4;
  Bd << -0.3, 0.9;
  const double h = 1e-6;
  const double sp = single_qubit_entropy((B + h * Bd).norm());
  const double sm = single_qubit_entropy((B - h * Bd).norm());
  const double fd = (sp - sm) / (2 * h);
  CHECK(single_qubit_entropy_rate(B, Bd) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("first-order currents: weights sum to one, cutoff independent") {
  const SystemConfig cfg = one_qubit_config();
  RVec B(2), Bd(2);
  B << 0.9, 0.7;
  Bd << 1.0, -2.0;
  const auto j1 = single_qubit_heat1(cfg, B, Bd);
  REQUIRE(j1.size() == 2);
  const double total = single_qubit_entropy_rate(B, Bd);  // T = 1
  CHECK(j1[0] + j1[1] == doctest::Approx(total).epsilon(1e-12));

  SystemConfig other = cfg;
  other.baths[0].omega_c = 7.0;
  other.baths[1].omega_c = 7.0;
  const auto j1b = single_qubit_heat1(other, B, Bd);
  CHECK(j1b[0] == doctest::Approx(j1[0]).epsilon(1e-12));
}

TEST_CASE("engine matches the single-qubit oracle pointwise") {
  const SystemConfig cfg = one_qubit_config();
  const Model m(cfg);
  RVec B(2), Bd(2);
  B << 1.3, 0.2;
  Bd << -0.6, 1.1;
  const PointKernels pk = point_kernels(m, B, KernelOptions{false});
  CHECK((pk.point.rho_f() - single_qubit_steady(B)).norm() < 1e-12);
  const auto j_ref = single_qubit_heat1(cfg, B, Bd);
  for (int a = 0; a < 2; ++a) {
    const double j_eng = pk.kernels.lambda1[size_t(a)].dot(Bd);
    CHECK(j_eng == doctest::Approx(j_ref[size_t(a)]).epsilon(1e-9));
  }
}

TEST_CASE("oracle rejects configurations it does not cover") {
  RVec B(2), Bd(2);
  B << 1.0, 0.5;
  Bd << 0.0, 1.0;
  SystemConfig two = two_qubit_config(0.0);
  CHECK_THROWS_AS(single_qubit_heat1(two, B, Bd), ConfigError);
  SystemConfig hot = one_qubit_config();
  hot.baths[0].T = 2.0;
  CHECK_THROWS_AS(single_qubit_heat1(hot, B, Bd), ConfigError);
}

TEST_CASE("product solution reproduces the engine at J = 0") {
  const SystemConfig cfg = two_qubit_config(0.0);
  const Model m(cfg);
  RVec X(2), Xd(2);
  X << 1.0, 0.5;
  Xd << -0.7, 1.3;
  const ProductSolution prod = product_state_solve(cfg, X, Xd);
  const PointKernels pk = point_kernels(m, X, KernelOptions{false});

  CHECK((prod.rho_f - pk.point.rho_f()).norm() < 1e-10);
  CHECK((prod.rho_1 - pk.rho1(Xd)).norm() < 1e-8 * std::max(1.0, pk.rho1(Xd).norm()));
  for (int a = 0; a < 2; ++a) {
    CHECK(prod.j1[size_t(a)] ==
          doctest::Approx(pk.kernels.lambda1[size_t(a)].dot(Xd)).epsilon(1e-8));
    CHECK((prod.lambda1[size_t(a)] - pk.kernels.lambda1[size_t(a)]).norm() <
          1e-8 * std::max(1.0, pk.kernels.lambda1[size_t(a)].norm()));
  }
  CHECK((prod.lambda - pk.kernels.lambda).norm() <
        1e-7 * std::max(1.0, max_abs(pk.kernels.lambda)));

  CHECK_THROWS_AS(product_state_solve(two_qubit_config(1.0), X, Xd), ConfigError);
}

TEST_CASE("correlation split: additive, and trivial at J = 0") {
  RVec X(2), Xd(2);
  X << 1.1, 0.7;
  Xd << 0.9, -0.4;

  const Model free_model(two_qubit_config(0.0));
  const CorrelationSplit free_split = correlation_current_split(free_model, X, Xd, 1);
  CHECK(free_split.total ==
        doctest::Approx(free_split.j_q1 + free_split.j_q2 + free_split.j_corr)
            .epsilon(1e-10));
  CHECK(std::abs(free_split.j_corr) <
        1e-8 * std::max({std::abs(free_split.j_q1), std::abs(free_split.j_q2), 1e-300}));
  CHECK(free_split.delta_r.norm() < 1e-10);

  const Model int_model(two_qubit_config(2.0));
  const CorrelationSplit split = correlation_current_split(int_model, X, Xd, 1);
  CHECK(split.total ==
        doctest::Approx(split.j_q1 + split.j_q2 + split.j_corr).epsilon(1e-10));
  // Interactions actually correlate the qubits.
  CHECK(split.delta_r.norm() > 1e-3);
  // The direct engine current agrees with the decomposition's total.
  const PointKernels pk = point_kernels(int_model, X, KernelOptions{false});
  CHECK(split.total == doctest::Approx(pk.kernels.lambda1[1].dot(Xd)).epsilon(1e-9));
}

TEST_SUITE_END();
