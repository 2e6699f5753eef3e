#include "qpump/model.hpp"
#include "qpump/oracle.hpp"

#include "doctest.h"

#include <cmath>

using namespace qpump;

namespace {

SystemConfig two_qubit(double J = 0.0, double eta = 1.2, double b = 2.0) {
  SystemConfig cfg;
  cfg.n_qubits = 2;
  cfg.J = J;
  cfg.eta = eta;
  cfg.b = b;
  cfg.baths = SystemConfig::default_baths();
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("lattice");

TEST_CASE("pauli matrices: algebra and traces") {
  const Mat sx = pauli(Axis::X), sy = pauli(Axis::Y), sz = pauli(Axis::Z);
  CHECK((sx * sx - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));
  CHECK((sx * sy - cplx(0, 1) * sz).norm() == doctest::Approx(0.0));
  CHECK(std::abs(sx.trace()) == doctest::Approx(0.0));
  CHECK((sx.adjoint() - sx).norm() == doctest::Approx(0.0));
  CHECK((sy.adjoint() - sy).norm() == doctest::Approx(0.0));
}

TEST_CASE("embed: site 0 is the leftmost tensor factor") {
  const Mat sz = pauli(Axis::Z);
  const Mat a = embed(sz, 0, 2);
  const Mat b = embed(sz, 1, 2);
  // Site 0: sz (x) I has diagonal (1, 1, -1, -1).
  CHECK(a(0, 0).real() == doctest::Approx(1.0));
  CHECK(a(1, 1).real() == doctest::Approx(1.0));
  CHECK(a(2, 2).real() == doctest::Approx(-1.0));
  // Site 1: I (x) sz has diagonal (1, -1, 1, -1).
  CHECK(b(1, 1).real() == doctest::Approx(-1.0));
  CHECK(b(2, 2).real() == doctest::Approx(1.0));
  CHECK((a * b - b * a).norm() == doctest::Approx(0.0));
}

TEST_CASE("kron and vectorization identities") {
  Mat A(2, 2), B(2, 2), X(2, 2);
  A << cplx(1, 0), cplx(0, 2), cplx(3, 0), cplx(0, -1);
  B << cplx(0, 1), cplx(2, 0), cplx(1, 1), cplx(0, 0);
  X << cplx(1, 1), cplx(0, 0), cplx(2, 0), cplx(0, 3);
  // vec(A X B) = (B^T (x) A) vec(X)
  const Vec lhs = vectorize(Mat(A * X * B));
  const Vec rhs = kron(B.transpose(), A) * vectorize(X);
  CHECK((lhs - rhs).norm() < 1e-14);
  CHECK((unvectorize(vectorize(X), 2) - X).norm() == doctest::Approx(0.0));
}

TEST_CASE("single-qubit model uses the Pauli convention") {
  SystemConfig cfg;
  cfg.n_qubits = 1;
  cfg.baths = SystemConfig::default_baths();
  const Model m(cfg);
  RVec X(2);
  X << 0.3, -0.7;
  const Mat H = m.hamiltonian(X);
  const Mat ref = -X[0] * pauli(Axis::X) - X[1] * pauli(Axis::Z);
  CHECK((H - ref).norm() < 1e-14);
  CHECK((m.couplings()[0] - pauli(Axis::X)).norm() < 1e-14);
  CHECK((m.couplings()[1] - pauli(Axis::Z)).norm() < 1e-14);
}

TEST_CASE("two-qubit model: fields, drive asymmetry, exchange, couplings") {
  const double J = 1.5, eta = 1.2, b = 2.0;
  const Model m(two_qubit(J, eta, b));
  RVec X(2);
  X << 0.8, 0.4;

  const Mat S1x = 0.5 * embed(pauli(Axis::X), 0, 2);
  const Mat S2x = 0.5 * embed(pauli(Axis::X), 1, 2);
  const Mat S1z = 0.5 * embed(pauli(Axis::Z), 0, 2);
  const Mat S2z = 0.5 * embed(pauli(Axis::Z), 1, 2);
  const Mat S1y = 0.5 * embed(pauli(Axis::Y), 0, 2);
  const Mat S2y = 0.5 * embed(pauli(Axis::Y), 1, 2);

  const Mat Href = -X[0] * (S1x + eta * S2x) - X[1] * (S1z + eta * S2z) +
                   J * (S1x * S2x + S1y * S2y + S1z * S2z);
  CHECK((m.hamiltonian(X) - Href).norm() < 1e-14);
  CHECK((m.dH()[0] + (S1x + eta * S2x)).norm() < 1e-14);
  CHECK((m.dH()[1] + (S1z + eta * S2z)).norm() < 1e-14);
  CHECK((m.couplings()[0] - (S1x + b * S2x)).norm() < 1e-14);
  CHECK((m.couplings()[1] - (S1z + b * S2z)).norm() < 1e-14);
}

TEST_CASE("hamiltonian is linear in the controls") {
  const Model m(two_qubit(2.0));
  RVec X0(2), X1(2);
  X0 << 0.2, 1.1;
  X1 << 1.3, 0.1;
  const Mat lhs = m.hamiltonian(X0) + m.hamiltonian(X1) - m.hamiltonian(RVec(X0 + X1));
  // H(X0) + H(X1) - H(X0+X1) leaves exactly one copy of the exchange term.
  const Mat exch = m.hamiltonian(RVec(RVec::Zero(2)));
  CHECK((lhs - exch).norm() < 1e-13);
}

TEST_CASE("reduced_qubit: partial traces of a product state") {
  Mat r1(2, 2), r2(2, 2);
  r1 << 0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3;
  r2 << 0.4, cplx(0.0, -0.1), cplx(0.0, 0.1), 0.6;
  const Mat rho = kron(r1, r2);
  CHECK((reduced_qubit(rho, 0, 2) - r1).norm() < 1e-14);
  CHECK((reduced_qubit(rho, 1, 2) - r2).norm() < 1e-14);
  CHECK(std::abs(reduced_qubit(rho, 0, 2).trace() - cplx(1, 0)) < 1e-14);
}

TEST_CASE("config validation rejects nonsense") {
  SystemConfig cfg = two_qubit();
  cfg.baths[0].T = 2.0;  // mismatched temperatures are rejected where equality is assumed
  CHECK_THROWS_AS(Model{cfg}.temperature(), InvariantViolation);

  SystemConfig bad_n = two_qubit();
  bad_n.n_qubits = 0;
  CHECK_THROWS_AS(Model{bad_n}, ConfigError);

  SystemConfig bad_g = two_qubit();
  bad_g.baths[0].g = -1.0;
  CHECK_THROWS_AS(Model{bad_g}, ConfigError);
}

TEST_SUITE_END();
