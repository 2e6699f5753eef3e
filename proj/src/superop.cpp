#include "qpump/superop.hpp"

#include <cmath>

namespace qpump {

Mat commutator_superop(const Mat& H) {
  const int n = int(H.rows());
  const Mat id = Mat::Identity(n, n);
  const cplx i(0.0, 1.0);
  return Mat(-i * (kron(id, H) - kron(H.transpose(), id)));
}

Mat dissipator_superop(const BathSpec& bath, const std::vector<BohrChannel>& channels) {
  if (channels.empty()) throw NumericalError("dissipator_superop: no channels");
  const int n = int(channels.front().op.rows());
  const Mat id = Mat::Identity(n, n);
  Mat out = Mat::Zero(n * n, n * n);
  const double g2 = bath.g * bath.g;
  for (const auto& ch : channels) {
    const double rate = g2 * ohmic_rate(ch.omega, bath.T, bath.omega_c);
    if (rate == 0.0) continue;
    const Mat& L = ch.op;
    const Mat LdL = L.adjoint() * L;
    out += rate * (kron(L.conjugate(), L) -
                   0.5 * kron(id, LdL) -
                   0.5 * kron(LdL.transpose(), id));
  }
  return out;
}

Mat apply_superop(const Mat& superop, const Mat& rho) {
  return unvectorize(Vec(superop * vectorize(rho)), int(rho.rows()));
}

Mat gibbs_state(const Mat& H, double T) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("gibbs_state: eigensolver failed");
  const RVec ev = es.eigenvalues();
  RVec w(ev.size());
  const double e0 = ev.minCoeff();
  for (Eigen::Index k = 0; k < ev.size(); ++k) w(k) = std::exp(-(ev(k) - e0) / T);
  w /= w.sum();
  return Mat(es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
}

double von_neumann_entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  if (es.info() != Eigen::Success) throw NumericalError("entropy: eigensolver failed");
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()(k);
    if (p > 1e-300) s -= p * std::log(p);
  }
  return s;
}

FrozenSolver::FrozenSolver(Mat lindbladian, int dim, double rank_tol)
    : L_(std::move(lindbladian)), dim_(dim), rank_tol_(rank_tol) {
  const int nn = dim_ * dim_;
  if (L_.rows() != nn || L_.cols() != nn)
    throw NumericalError("FrozenSolver: superoperator dimension mismatch");
  scale_ = std::max(1e-300, max_abs(L_));

  // Square bordered matrix; the border weight is scaled to the Lindbladian's
  // magnitude to keep the factorization balanced.
  Mat aug = Mat::Zero(nn + 1, nn + 1);
  aug.topLeftCorner(nn, nn) = L_;
  Vec tr = vectorize(Mat(Mat::Identity(dim_, dim_)));
  const double w = scale_ / std::sqrt(double(dim_));
  aug.block(0, nn, nn, 1) = w * tr;
  aug.block(nn, 0, 1, nn) = w * tr.adjoint();
  lu_.compute(aug);

  // Rank-deficiency heuristic: a multi-dimensional kernel (a conserved
  // quantity besides the trace) leaves the bordered matrix singular, which a
  // pure residual check cannot see — any kernel combination solves L x = 0.
  // The smallest pivot of the partial-pivoting LU collapses to rounding noise
  // in that case.
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (int k = 0; k < nn + 1; ++k) {
    const double d = std::abs(lu_.matrixLU()(k, k));
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  lu_pivot_ratio_ = dmax > 0 ? dmin / dmax : 0.0;
}

Vec FrozenSolver::lu_solve(const Vec& rhs_top, double rhs_bottom) const {
  const int nn = dim_ * dim_;
  Vec rhs(nn + 1);
  rhs.head(nn) = rhs_top;
  rhs(nn) = rhs_bottom;
  Vec sol = lu_.solve(rhs);
  return sol.head(nn);
}

const Eigen::BDCSVD<Mat>& FrozenSolver::svd() const {
  if (!svd_) {
    svd_ = std::make_unique<Eigen::BDCSVD<Mat>>(
        L_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  }
  return *svd_;
}

int FrozenSolver::kernel_dimension() const {
  const auto& s = svd().singularValues();
  const double cut = rank_tol_ * s(0);
  int dim = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) <= cut) ++dim;
  return dim;
}

double FrozenSolver::kernel_gap_ratio() const {
  const auto& s = svd().singularValues();
  return s(s.size() - 2) / s(0);
}

Mat FrozenSolver::steady_state() const {
  const int nn = dim_ * dim_;
  const double w = scale_ / std::sqrt(double(dim_));
  // The border row reads w * tr^H x = rhs_bottom, so rhs_bottom = w enforces
  // Tr x = 1. One step of iterative refinement removes the backward-error
  // component that the near-degenerate kernel would otherwise amplify.
  Vec x = lu_solve(Vec(Vec::Zero(nn)), w);
  if (x.allFinite()) x += lu_solve(Vec(-(L_ * x)), 0.0);

  const auto finalize = [this](const Vec& v) {
    Mat rho = hermitize(unvectorize(v, dim_));
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12) throw NumericalError("steady_state: traceless kernel vector");
    return Mat(rho / tr);
  };
  const auto min_eigenvalue = [](const Mat& rho) {
    return Eigen::SelfAdjointEigenSolver<Mat>(rho, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .minCoeff();
  };

  // Three independent degeneracy alarms: a bad LU residual, a collapsed LU
  // pivot, and a non-positive candidate state (a unique steady state is
  // positive semidefinite; an arbitrary kernel combination almost never is).
  bool suspicious = !x.allFinite() || (L_ * x).norm() > 1e-9 * scale_ * x.norm() ||
                    lu_pivot_ratio_ < 1e-12;
  if (!suspicious && min_eigenvalue(finalize(x)) < -1e-8) suspicious = true;
  if (suspicious) {
    const int kdim = kernel_dimension();
    if (kdim != 1)
      throw NumericalError(
          "steady_state: Lindbladian kernel has dimension " + std::to_string(kdim) +
          ", the steady state is not unique (a symmetry such as b = 1 with eta = 1 "
          "conserves the total-spin sector; break it or restrict to one sector)");
    // Unique kernel but the LU route was untrustworthy: take the kernel
    // singular vector directly.
    x = svd().matrixV().col(nn - 1);
    const Mat rho = finalize(x);
    if ((L_ * vectorize(rho)).norm() > 1e-8 * scale_ || min_eigenvalue(rho) < -1e-8)
      throw NumericalError("steady_state: kernel vector failed the stationarity check");
    return rho;
  }
  return finalize(x);
}

Mat FrozenSolver::svd_solve_traceless(const Vec& y) const {
  // Minimum-norm rescue is only sound while the kernel is one-dimensional
  // (trace direction): the traceless right-hand sides of the response
  // hierarchy are then exactly in range. With an extra conserved quantity the
  // hierarchy itself is ill-posed, so fail loudly instead of projecting.
  const int kdim = kernel_dimension();
  if (kdim != 1)
    throw NumericalError(
        "solve_traceless: Lindbladian kernel has dimension " + std::to_string(kdim) +
        "; the slow-driving expansion is undefined in a degenerate steady sector");
  const auto& dec = svd();
  const auto& s = dec.singularValues();
  const double cut = rank_tol_ * s(0);
  Vec coeffs = dec.matrixU().adjoint() * y;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    coeffs(k) = s(k) > cut ? coeffs(k) / s(k) : cplx(0.0, 0.0);
  Vec x = dec.matrixV() * coeffs;
  // Restore Tr x = 0 by shifting along the kernel (minimum-norm adjustment).
  std::vector<Vec> kernel;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) <= cut) kernel.push_back(dec.matrixV().col(k));
  if (!kernel.empty()) {
    cplx tr = unvectorize(x, dim_).trace();
    double den = 0.0;
    std::vector<cplx> ktr(kernel.size());
    for (size_t k = 0; k < kernel.size(); ++k) {
      ktr[k] = unvectorize(kernel[k], dim_).trace();
      den += std::norm(ktr[k]);
    }
    if (den > 1e-300) {
      for (size_t k = 0; k < kernel.size(); ++k)
        x -= (tr * std::conj(ktr[k]) / den) * kernel[k];
    }
  }
  return unvectorize(x, dim_);
}

Mat FrozenSolver::solve_traceless(const Mat& y) const {
  const double ynorm = y.norm();
  if (std::abs(y.trace()) > 1e-10 * std::max(1.0, ynorm))
    throw InvariantViolation("solve_traceless: right-hand side is not traceless");
  const Vec yv = vectorize(y);
  Vec x = lu_solve(yv, 0.0);
  if (x.allFinite()) x += lu_solve(Vec(yv - L_ * x), 0.0);
  const double resid = (L_ * x - yv).norm();
  const double tol = 1e-8 * std::max(ynorm, scale_ * x.norm());
  if (x.allFinite() && resid <= tol && lu_pivot_ratio_ >= 1e-12) return unvectorize(x, dim_);
  return svd_solve_traceless(yv);  // near-degenerate kernel: minimum-norm solution
}

const Mat& FrozenPoint::rho_f() const {
  if (!rho_f_cache_) rho_f_cache_ = std::make_shared<const Mat>(solver->steady_state());
  return *rho_f_cache_;
}

double FrozenPoint::heat_trace(int bath, const Mat& rho) const {
  return (apply_superop(dissipators.at(size_t(bath)), rho) * H).trace().real();
}

FrozenPoint freeze(const Model& model, const RVec& X) {
  FrozenPoint f;
  f.X = X;
  f.H = model.hamiltonian(X);
  const double tol = model.config().degeneracy_tol;
  f.basis = eigendecompose(f.H, tol);
  f.lindbladian = commutator_superop(f.H);
  const auto& baths = model.config().baths;
  for (size_t a = 0; a < baths.size(); ++a) {
    f.channels.push_back(bohr_channels(f.basis, model.couplings()[a], tol));
    f.dissipators.push_back(dissipator_superop(baths[a], f.channels.back()));
    f.lindbladian += f.dissipators.back();
  }
  f.solver = std::make_shared<const FrozenSolver>(f.lindbladian, model.dim(),
                                                  model.config().kernel_rank_tol);
  return f;
}

}  // namespace qpump
