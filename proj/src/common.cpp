#include "qpump/common.hpp"

namespace qpump {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec vectorize(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvectorize(const Vec& v, int n) {
  if (v.size() != Eigen::Index(n) * n)
    throw NumericalError("unvectorize: size mismatch");
  return Eigen::Map<const Mat>(v.data(), n, n);
}

Mat hermitize(const Mat& m) {
  return 0.5 * (m + m.adjoint());
}

double max_abs(const Mat& m) {
  return m.cwiseAbs().maxCoeff();
}

double max_abs(const RMat& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace qpump
