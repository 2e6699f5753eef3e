#include "qpump/frozen.hpp"

#include <algorithm>
#include <cmath>

namespace qpump {

FrozenBasis eigendecompose(const Mat& H, double degeneracy_tol) {
  if (H.rows() != H.cols()) throw NumericalError("eigendecompose: non-square input");
  if (max_abs(Mat(H - H.adjoint())) > 1e-12 * std::max(1.0, max_abs(H)))
    throw NumericalError("eigendecompose: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecompose: eigensolver failed");

  FrozenBasis basis;
  basis.all_eigenvalues = es.eigenvalues();
  const double range = basis.all_eigenvalues(basis.all_eigenvalues.size() - 1) -
                       basis.all_eigenvalues(0);
  const double tol = degeneracy_tol * std::max(1.0, range);

  const int n = int(H.rows());
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n &&
           basis.all_eigenvalues(stop) - basis.all_eigenvalues(start) <= tol)
      ++stop;
    Mat proj = Mat::Zero(n, n);
    double ev = 0.0;
    for (int k = start; k < stop; ++k) {
      proj += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      ev += basis.all_eigenvalues(k);
    }
    basis.eigenvalues.push_back(ev / (stop - start));
    basis.projectors.push_back(hermitize(proj));
    start = stop;
  }
  return basis;
}

std::vector<BohrChannel> bohr_channels(const FrozenBasis& basis, const Mat& pi,
                                       double degeneracy_tol) {
  const double tol = degeneracy_tol * std::max(1.0, basis.spectral_range());
  const int levels = int(basis.eigenvalues.size());

  struct Pair {
    double omega;
    Mat op;
  };
  std::vector<Pair> pairs;
  pairs.reserve(size_t(levels) * levels);
  for (int l = 0; l < levels; ++l)
    for (int m = 0; m < levels; ++m) {
      Mat op = basis.projectors[l] * pi * basis.projectors[m];
      if (max_abs(op) < 1e-15) continue;
      pairs.push_back({basis.eigenvalues[m] - basis.eigenvalues[l], std::move(op)});
    }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.omega < b.omega; });

  std::vector<BohrChannel> channels;
  size_t i = 0;
  while (i < pairs.size()) {
    size_t j = i + 1;
    double omega_sum = pairs[i].omega;
    Mat op = pairs[i].op;
    while (j < pairs.size() && pairs[j].omega - pairs[i].omega <= tol) {
      omega_sum += pairs[j].omega;
      op += pairs[j].op;
      ++j;
    }
    BohrChannel ch;
    ch.omega = omega_sum / double(j - i);
    // Snap near-zero frequencies to exactly zero (they arise from degenerate levels).
    if (std::abs(ch.omega) <= tol) ch.omega = 0.0;
    ch.op = std::move(op);
    channels.push_back(std::move(ch));
    i = j;
  }
  return channels;
}

double ohmic_rate(double omega, double T, double omega_c) {
  if (!std::isfinite(omega)) throw NumericalError("ohmic_rate: non-finite frequency");
  if (omega == 0.0) return T;
  const double cutoff = std::exp(-std::abs(omega) / omega_c);
  // omega > 0: w (1 + n(w)) = w / (1 - e^{-w/T});  omega < 0: |w| n(|w|) = -w / (e^{-w/T} - 1).
  // Both reduce to -w / expm1(-w/T), which is also the stable w -> 0 limit (-> T).
  return cutoff * (-omega / std::expm1(-omega / T));
}

}  // namespace qpump
