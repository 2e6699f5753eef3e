#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qpump {

using cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr const char* kVersion = "1.0.0";

/// Configuration / input errors (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A physical invariant failed beyond tolerance (CLI exit code 3).
struct InvariantViolation : std::runtime_error {
  explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

/// Linear algebra / numerical failure, e.g. a degenerate kernel (CLI exit code 4).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Kronecker product A (x) B.
Mat kron(const Mat& a, const Mat& b);

/// Column-stacking vectorization, vec(A X B) = (B^T (x) A) vec(X).
Vec vectorize(const Mat& m);
Mat unvectorize(const Vec& v, int n);

/// (A + A^dagger) / 2.
Mat hermitize(const Mat& m);

/// Max absolute entry.
double max_abs(const Mat& m);
double max_abs(const RMat& m);

}  // namespace qpump
