#include "qpump/response.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>

namespace qpump {

namespace {

/// Displace X along direction j by step s.
RVec displaced(const RVec& X, int j, double s) {
  RVec out = X;
  out[j] += s;
  return out;
}

/// Project onto the traceless subspace. Central differences of traceless
/// fields pick up a roundoff trace amplified by 1/(2h); the exact derivative
/// is traceless, so the noise is removed before the resolvent solve.
Mat detraced(Mat m) {
  const int n = int(m.rows());
  m -= (m.trace() / double(n)) * Mat::Identity(n, n);
  return m;
}

}  // namespace

std::vector<Mat> gibbs_derivative(const Model& model, const RVec& X) {
  const double T = model.temperature();
  const double beta = 1.0 / T;
  const Mat H = model.hamiltonian(X);

  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success)
    throw NumericalError("gibbs_derivative: eigensolver failed");
  const RVec ev = es.eigenvalues();
  const Mat& V = es.eigenvectors();
  const int n = int(ev.size());

  RVec w(n);
  const double e0 = ev.minCoeff();
  for (int k = 0; k < n; ++k) w(k) = std::exp(-beta * (ev(k) - e0));
  const double Z = w.sum();
  const double range = std::max(1.0, ev.maxCoeff() - e0);

  std::vector<Mat> out;
  out.reserve(model.dH().size());
  for (const Mat& dH : model.dH()) {
    const Mat M = V.adjoint() * dH * V;
    Mat G(n, n);
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        const double de = ev(a) - ev(c);
        if (std::abs(de) < 1e-11 * range) {
          G(a, c) = -beta * w(a) * M(a, c);  // degenerate divided difference
        } else {
          G(a, c) = M(a, c) * (w(a) - w(c)) / de;
        }
      }
    const double trG = G.trace().real();
    Mat d_eig = G / Z - Mat((w / Z).cast<cplx>().asDiagonal()) * (trG / Z);
    out.push_back(hermitize(V * d_eig * V.adjoint()));
  }
  return out;
}

Mat frozen_derivative_fd(const Model& model, const RVec& X, int direction, double h,
                         bool richardson) {
  if (!(h > 0)) throw ConfigError("frozen_derivative: step must be > 0");
  auto central = [&](double hh) {
    const Mat plus = freeze(model, displaced(X, direction, hh)).rho_f();
    const Mat minus = freeze(model, displaced(X, direction, -hh)).rho_f();
    return Mat((plus - minus) / (2.0 * hh));
  };
  Mat d = central(h);
  if (richardson) {
    Mat d2 = central(h / 2);
    d = (4.0 * d2 - d) / 3.0;
  }
  return hermitize(d);
}

std::vector<Mat> frozen_derivatives(const Model& model, const RVec& X) {
  if (model.config().analytic_derivative) return gibbs_derivative(model, X);
  const double h = model.config().fd_step * std::max(1.0, X.cwiseAbs().maxCoeff());
  std::vector<Mat> out;
  for (int j = 0; j < model.n_controls(); ++j)
    out.push_back(frozen_derivative_fd(model, X, j, h));
  return out;
}

namespace {

/// Per-point evaluation reused by the kernel builder: the frozen solution,
/// the first-order fields y_j = Linv[d_j rho^f], and (for second order) the
/// Lambda^(2) row evaluated entirely at this point.
struct PointEval {
  FrozenPoint f;
  std::vector<Mat> drho;
  std::vector<Mat> y;
  RMat lambda2;            // baths x d
  std::vector<int> sig;    // channels per bath: the secular branch signature
  std::vector<RVec> freqs; // per bath, channel frequencies sorted ascending

  PointEval(const Model& model, const RVec& X, bool second_order)
      : f(freeze(model, X)), drho(frozen_derivatives(model, X)) {
    const int d = int(drho.size());
    const int nb = int(model.config().baths.size());
    for (const auto& ch : f.channels) {
      sig.push_back(int(ch.size()));
      RVec w(ch.size());
      for (int c = 0; c < int(ch.size()); ++c) w[c] = ch[size_t(c)].omega;
      std::sort(w.begin(), w.end());
      freqs.push_back(std::move(w));
    }
    y.reserve(size_t(d));
    for (const Mat& dr : drho) y.push_back(f.solver->solve_traceless(dr));
    if (second_order) {
      lambda2.resize(nb, d);
      for (int l = 0; l < d; ++l) {
        const Mat y2 = f.solver->solve_traceless(y[size_t(l)]);
        for (int a = 0; a < nb; ++a) lambda2(a, l) = f.heat_trace(a, y2);
      }
    }
  }
};

struct OmegaBuild {
  std::vector<RMat> omega1, omega2;  // per bath
  bool clean = true;
};

/// Omega kernels by central differences of the y fields and the Lambda^(2)
/// rows. The kernels jump across Bohr-frequency coincidences (the secular
/// channels reorganize there), so each direction keeps halving its step
/// until the whole stencil provably stays on the base branch: the channel
/// counts must match and no frequency may move by a significant fraction of
/// the base point's smallest channel separation (a larger excursion could
/// hide a regrouping between the sample points even when the counts agree).
/// When the base point itself sits on the coincidence set no clean stencil
/// exists and the build falls back to the requested step with the clean flag
/// cleared.
OmegaBuild build_omegas(const Model& model, const PointEval& base, const RVec& X,
                        double h0, bool richardson) {
  const int d = model.n_controls();
  const int nb = int(model.config().baths.size());
  OmegaBuild out;
  out.omega1.assign(size_t(nb), RMat::Zero(d, d));
  out.omega2.assign(size_t(nb), RMat::Zero(d, d));

  std::vector<double> base_sep(base.freqs.size(),
                               std::numeric_limits<double>::infinity());
  for (size_t a = 0; a < base.freqs.size(); ++a)
    for (int c = 0; c + 1 < base.freqs[a].size(); ++c)
      base_sep[a] = std::min(base_sep[a], base.freqs[a][c + 1] - base.freqs[a][c]);

  const auto on_branch = [&](const PointEval& p) {
    if (p.sig != base.sig) return false;
    for (size_t a = 0; a < base.freqs.size(); ++a) {
      if (base.freqs[a].size() == 0) continue;
      const double moved = (p.freqs[a] - base.freqs[a]).cwiseAbs().maxCoeff();
      if (moved > 0.25 * base_sep[a]) return false;
    }
    return true;
  };

  for (int j = 0; j < d; ++j) {
    using Pair = std::array<std::unique_ptr<PointEval>, 2>;
    const auto eval_pair = [&](double hh, Pair& pair) {
      pair[0] = std::make_unique<PointEval>(model, displaced(X, j, hh), true);
      pair[1] = std::make_unique<PointEval>(model, displaced(X, j, -hh), true);
      return on_branch(*pair[0]) && on_branch(*pair[1]);
    };

    double h = h0;
    Pair coarse, fine, first_coarse, first_fine;
    bool clean = false;
    for (int attempt = 0; attempt < 5; ++attempt, h /= 2) {
      clean = eval_pair(h, coarse);
      if (richardson) clean = eval_pair(h / 2, fine) && clean;
      if (attempt == 0) {
        first_coarse = std::move(coarse);
        first_fine = std::move(fine);
        if (clean) {
          coarse = std::move(first_coarse);
          fine = std::move(first_fine);
        }
      }
      if (clean) break;
    }
    if (!clean) {
      // On the coincidence set itself: the largest step dilutes the branch
      // jump the least relative to 1/(2h).
      h = h0;
      coarse = std::move(first_coarse);
      fine = std::move(first_fine);
      out.clean = false;
    }

    const auto accumulate = [&](const Pair& pair, double hh, double weight) {
      for (int l = 0; l < d; ++l) {
        const Mat dy =
            detraced((pair[0]->y[size_t(l)] - pair[1]->y[size_t(l)]) / (2.0 * hh));
        const Mat z = base.f.solver->solve_traceless(dy);
        for (int a = 0; a < nb; ++a) {
          out.omega1[size_t(a)](j, l) += weight * base.f.heat_trace(a, z);
          out.omega2[size_t(a)](j, l) -=
              weight * (pair[0]->lambda2(a, l) - pair[1]->lambda2(a, l)) / (2.0 * hh);
        }
      }
    };
    if (richardson) {
      accumulate(coarse, h, -1.0 / 3.0);
      accumulate(fine, h / 2, 4.0 / 3.0);
    } else {
      accumulate(coarse, h, 1.0);
    }
  }
  return out;
}

}  // namespace

PointKernels point_kernels(const Model& model, const RVec& X, const KernelOptions& opt) {
  const int d = model.n_controls();
  const int nb = int(model.config().baths.size());
  PointEval base(model, X, opt.second_order);

  ResponseKernels k;
  k.lambda.resize(d, d);
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l)
      k.lambda(j, l) = (base.y[size_t(j)] * model.dH()[size_t(l)]).trace().real();

  k.lambda1.assign(size_t(nb), RVec::Zero(d));
  for (int a = 0; a < nb; ++a)
    for (int j = 0; j < d; ++j)
      k.lambda1[size_t(a)](j) = base.f.heat_trace(a, base.y[size_t(j)]);

  if (opt.second_order) {
    k.lambda2.assign(size_t(nb), RVec::Zero(d));
    for (int a = 0; a < nb; ++a)
      for (int l = 0; l < d; ++l) k.lambda2[size_t(a)](l) = base.lambda2(a, l);

    const double h = opt.step * std::max(1.0, X.cwiseAbs().maxCoeff());
    OmegaBuild build = build_omegas(model, base, X, h, opt.richardson);
    k.omega1 = std::move(build.omega1);
    k.omega2 = std::move(build.omega2);
    k.fd_stencil_clean = build.clean;
  }

  PointKernels out{std::move(base.f), std::move(base.drho), std::move(base.y), std::move(k)};
  return out;
}

Mat PointKernels::rho1(const RVec& Xdot) const {
  Mat r = Mat::Zero(point.H.rows(), point.H.cols());
  for (int j = 0; j < int(y.size()); ++j) r += Xdot[j] * y[size_t(j)];
  return hermitize(r);
}

ResponseKernels response_kernels(const Model& model, const RVec& X,
                                 const KernelOptions& opt) {
  return point_kernels(model, X, opt).kernels;
}

Mat rho_order1(const Model& model, const RVec& X, const RVec& Xdot) {
  const FrozenPoint f = freeze(model, X);
  const auto drho = frozen_derivatives(model, X);
  Mat rhs = Mat::Zero(model.dim(), model.dim());
  for (int j = 0; j < model.n_controls(); ++j) rhs += Xdot[j] * drho[size_t(j)];
  return hermitize(f.solver->solve_traceless(rhs));
}

Mat rho_order2(const Model& model, const RVec& X, const RVec& Xdot, const RVec& Xddot,
               double step, bool richardson) {
  const FrozenPoint f = freeze(model, X);
  const double h = step * std::max(1.0, X.cwiseAbs().maxCoeff());
  const int d = model.n_controls();

  auto rho1_at = [&](const RVec& Xp) { return rho_order1(model, Xp, Xdot); };
  auto drho1_dir = [&](int j, double hh) {
    return detraced((rho1_at(displaced(X, j, hh)) - rho1_at(displaced(X, j, -hh))) /
                    (2.0 * hh));
  };

  Mat drho1_dt = Mat::Zero(model.dim(), model.dim());
  for (int j = 0; j < d; ++j) {
    Mat dj = drho1_dir(j, h);
    if (richardson) dj = (4.0 * drho1_dir(j, h / 2) - dj) / 3.0;
    drho1_dt += Xdot[j] * dj;
  }
  const auto drho = frozen_derivatives(model, X);
  for (int j = 0; j < d; ++j)
    drho1_dt += Xddot[j] * f.solver->solve_traceless(drho[size_t(j)]);

  return hermitize(f.solver->solve_traceless(drho1_dt));
}

}  // namespace qpump
