#include "qpump/cycle.hpp"

#include "qpump/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace qpump {

CycleReport run_cycle(const Model& model, const Protocol& proto, const CycleOptions& opt) {
  if (opt.nodes < 8) throw ConfigError("run_cycle: need at least 8 nodes");
  const int nb = int(model.config().baths.size());
  const double h = proto.tau / opt.nodes;
  KernelOptions kopt = opt.kernels;
  kopt.second_order = opt.second_order;

  RMat pump(nb, opt.nodes), j2 = RMat::Zero(nb, opt.nodes);
  RVec sigma(opt.nodes), p2(opt.nodes);

  parallel_for(opt.nodes, [&](int i) {
    const double t = (i + 0.5) * h;
    const RVec X = proto.position(t);
    const RVec Xd = proto.velocity(t);
    const ResponseKernels k = response_kernels(model, X, kopt);
    for (int a = 0; a < nb; ++a) pump(a, i) = k.lambda1[size_t(a)].dot(Xd);
    p2[i] = Xd.dot(k.lambda * Xd);
    sigma[i] = std::sqrt(std::max(0.0, Xd.dot(k.lambda_sym() * Xd)));
    if (opt.second_order) {
      const RVec Xdd = proto.acceleration(t);
      for (int a = 0; a < nb; ++a)
        j2(a, i) = Xd.dot(k.omega1[size_t(a)] * Xd) + k.lambda2[size_t(a)].dot(Xdd);
    }
  });

  CycleReport rep;
  rep.q_pump.resize(size_t(nb));
  rep.q2.assign(size_t(nb), 0.0);
  for (int a = 0; a < nb; ++a) rep.q_pump[size_t(a)] = h * pump.row(a).sum();
  rep.pump_sum = std::accumulate(rep.q_pump.begin(), rep.q_pump.end(), 0.0);
  rep.length = h * sigma.sum();
  rep.length_sq = rep.length * rep.length;
  rep.w2 = h * p2.sum();
  rep.w2_tau = rep.w2 * proto.tau;

  if (opt.second_order) {
    double qmax = 0.0;
    for (int a = 0; a < nb; ++a) {
      rep.q2[size_t(a)] = h * j2.row(a).sum();
      qmax = std::max(qmax, std::abs(rep.q2[size_t(a)]));
    }
    const double qsum = std::accumulate(rep.q2.begin(), rep.q2.end(), 0.0);
    rep.balance = std::abs(rep.w2 + qsum) / std::max({std::abs(rep.w2), qmax, 1e-300});
  }

  const double T = model.temperature();
  rep.cold_bath = model.config().cold_bath;
  rep.A = rep.q_pump.at(size_t(rep.cold_bath));
  if (rep.length > 0) {
    rep.merit = rep.A * rep.A / rep.length_sq;
    rep.p_max = 0.25 * rep.merit * (opt.delta_T / T) * (opt.delta_T / T);
    // The optimal period assumes the cycle is traversed in the direction that
    // extracts heat from the cold bath; reversing the orientation flips the
    // sign of A, so |A| enters here.
    if (rep.A != 0 && opt.delta_T != 0)
      rep.tau_D = 2.0 * T * rep.length_sq / (std::abs(rep.A) * opt.delta_T);
  }
  rep.bias_warning = std::abs(opt.delta_T) / T > 0.2;
  return rep;
}

double pumped_heat_line(const Model& model, const Protocol& proto, int bath, int nodes) {
  CycleOptions opt;
  opt.nodes = nodes;
  opt.second_order = false;
  const CycleReport rep = run_cycle(model, proto, opt);
  return rep.q_pump.at(size_t(bath));
}

double segment_heat(const Model& model, const PathSegment& seg, int bath, int gl_nodes) {
  RVec u, w;
  gauss_legendre(gl_nodes, u, w);
  KernelOptions kopt;
  kopt.second_order = false;
  RVec vals(gl_nodes);
  parallel_for(gl_nodes, [&](int k) {
    const ResponseKernels ker = response_kernels(model, seg.position(u[k]), kopt);
    vals[k] = ker.lambda1.at(size_t(bath)).dot(seg.tangent(u[k]));
  });
  return w.dot(vals);
}

FieldMap rotor_map(const Model& model, int bath, const RVec& xs, const RVec& zs,
                   const KernelOptions& opt) {
  const int W = int(xs.size()), H = int(zs.size());
  if (W < 1 || H < 1) throw ConfigError("rotor_map: empty grid");

  KernelOptions kopt = opt;
  kopt.second_order = false;

  FieldMap map;
  map.xs = xs;
  map.zs = zs;
  map.values.resize(H, W);
  parallel_for(W * H, [&](int idx) {
    const int ix = idx % W, iz = idx / W;
    RVec X(2);
    X << xs[ix], zs[iz];
    const auto lam = [&](double bx, double bz, int comp) {
      RVec P(2);
      P << bx, bz;
      return response_kernels(model, P, kopt).lambda1.at(size_t(bath))(comp);
    };
    const auto curl_at = [&](double hh) {
      return (lam(X[0] + hh, X[1], 1) - lam(X[0] - hh, X[1], 1) -
              lam(X[0], X[1] + hh, 0) + lam(X[0], X[1] - hh, 0)) /
             (2.0 * hh);
    };
    const double h = opt.step * std::max(1.0, X.cwiseAbs().maxCoeff());
    double r = curl_at(h);
    if (opt.richardson) r = (4.0 * curl_at(h / 2) - r) / 3.0;
    map.values(iz, ix) = r;
  });
  return map;
}

namespace {

/// Even-odd point-in-polygon test against a closed polyline.
bool point_inside(const std::vector<double>& px, const std::vector<double>& pz, double x,
                  double z) {
  bool inside = false;
  const size_t n = px.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((pz[i] > z) != (pz[j] > z)) {
      const double xcross = px[j] + (px[i] - px[j]) * (z - pz[j]) / (pz[i] - pz[j]);
      if (x < xcross) inside = !inside;
    }
  }
  return inside;
}

/// Bilinear interpolation on a rectilinear map (clamped to the grid hull).
double bilinear(const FieldMap& map, double x, double z) {
  const auto locate = [](const RVec& g, double v) {
    int lo = 0, hi = int(g.size()) - 1;
    v = std::clamp(v, g[lo], g[hi]);
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (g[mid] <= v ? lo : hi) = mid;
    }
    return std::pair<int, double>(lo, (v - g[lo]) / (g[lo + 1] - g[lo]));
  };
  const auto [ix, fx] = locate(map.xs, x);
  const auto [iz, fz] = locate(map.zs, z);
  return (1 - fz) * ((1 - fx) * map.values(iz, ix) + fx * map.values(iz, ix + 1)) +
         fz * ((1 - fx) * map.values(iz + 1, ix) + fx * map.values(iz + 1, ix + 1));
}

}  // namespace

double pumped_heat_stokes(const FieldMap& rotor, const Protocol& proto, int boundary_samples,
                          int subdivision) {
  if (boundary_samples < 16) throw ConfigError("pumped_heat_stokes: too few boundary samples");
  std::vector<double> px(static_cast<size_t>(boundary_samples));
  std::vector<double> pz(static_cast<size_t>(boundary_samples));
  double area2 = 0.0;  // shoelace, for the orientation sign
  for (int k = 0; k < boundary_samples; ++k) {
    const RVec P = proto.position(k * proto.tau / boundary_samples);
    px[size_t(k)] = P[0];
    pz[size_t(k)] = P[1];
  }
  for (int k = 0; k < boundary_samples; ++k) {
    const int j = (k + 1) % boundary_samples;
    area2 += px[size_t(k)] * pz[size_t(j)] - px[size_t(j)] * pz[size_t(k)];
  }
  const double orientation = area2 >= 0 ? 1.0 : -1.0;

  const int W = int(rotor.xs.size()), H = int(rotor.zs.size());
  // Node inclusion, precomputed once.
  std::vector<uint8_t> node_in(size_t(W) * size_t(H));
  parallel_for(W * H, [&](int idx) {
    const int ix = idx % W, iz = idx / W;
    node_in[size_t(idx)] = point_inside(px, pz, rotor.xs[ix], rotor.zs[iz]) ? 1 : 0;
  });

  std::vector<double> cell_flux(size_t(W - 1) * size_t(H - 1), 0.0);
  parallel_for((W - 1) * (H - 1), [&](int idx) {
    const int ix = idx % (W - 1), iz = idx / (W - 1);
    const double x0 = rotor.xs[ix], x1 = rotor.xs[ix + 1];
    const double z0 = rotor.zs[iz], z1 = rotor.zs[iz + 1];
    const double area = (x1 - x0) * (z1 - z0);
    const int corners = node_in[size_t(iz) * size_t(W) + size_t(ix)] +
                        node_in[size_t(iz) * size_t(W) + size_t(ix) + 1] +
                        node_in[size_t(iz + 1) * size_t(W) + size_t(ix)] +
                        node_in[size_t(iz + 1) * size_t(W) + size_t(ix) + 1];
    if (corners == 4) {
      cell_flux[size_t(idx)] = area * bilinear(rotor, 0.5 * (x0 + x1), 0.5 * (z0 + z1));
    } else if (corners > 0 ||
               point_inside(px, pz, 0.5 * (x0 + x1), 0.5 * (z0 + z1))) {
      // Boundary cell: subdivide and test subcell centers.
      double acc = 0.0;
      const double sub_area = area / (subdivision * subdivision);
      for (int a = 0; a < subdivision; ++a)
        for (int b = 0; b < subdivision; ++b) {
          const double x = x0 + (a + 0.5) * (x1 - x0) / subdivision;
          const double z = z0 + (b + 0.5) * (z1 - z0) / subdivision;
          if (point_inside(px, pz, x, z)) acc += sub_area * bilinear(rotor, x, z);
        }
      cell_flux[size_t(idx)] = acc;
    }
  });

  return orientation * std::accumulate(cell_flux.begin(), cell_flux.end(), 0.0);
}

KernelScan kernel_balance_scan(const Model& model, const RVec& xs, const RVec& zs,
                               const KernelOptions& opt) {
  const int W = int(xs.size()), H = int(zs.size());
  const int nb = int(model.config().baths.size());
  KernelScan scan;
  scan.residual_map.resize(H, W);
  scan.clean_map.resize(H, W);
  RMat gap_map(H, W);

  parallel_for(W * H, [&](int idx) {
    const int ix = idx % W, iz = idx / W;
    RVec X(2);
    X << xs[ix], zs[iz];
    const PointKernels pk = point_kernels(model, X, opt);
    RMat total = pk.kernels.lambda_sym();
    for (int a = 0; a < nb; ++a) total += pk.kernels.omega_total_sym(a);
    scan.residual_map(iz, ix) =
        total.norm() / std::max(1.0, pk.kernels.lambda_sym().norm());
    scan.clean_map(iz, ix) = pk.kernels.fd_stencil_clean ? 1.0 : 0.0;
    gap_map(iz, ix) = pk.point.solver->kernel_gap_ratio();
  });

  scan.argmax = RVec::Zero(2);
  for (int iz = 0; iz < H; ++iz)
    for (int ix = 0; ix < W; ++ix) {
      const double r = scan.residual_map(iz, ix);
      if (r > scan.max_residual) {
        scan.max_residual = r;
        scan.argmax << xs[ix], zs[iz];
      }
      if (scan.clean_map(iz, ix) > 0) {
        scan.max_residual_clean = std::max(scan.max_residual_clean, r);
      } else {
        ++scan.n_dirty;
      }
      scan.min_gap = std::min(scan.min_gap, gap_map(iz, ix));
    }
  return scan;
}

namespace {

struct ArcTable {
  double tau = 0, total = 0;
  RVec s_knots, sigma, ell;  // sizes m+1, periodic: sigma[m] = sigma[0]

  /// Base time s and local metric speed/slope for a new time t.
  void locate(double t, double& s, double& sig, double& slope) const {
    const int m = int(sigma.size()) - 1;
    double frac = std::fmod(t, tau) / tau;
    if (frac < 0) frac += 1.0;
    const double target = total * frac;
    int lo = 0, hi = m;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (ell[mid] <= target ? lo : hi) = mid;
    }
    const double ds = s_knots[lo + 1] - s_knots[lo];
    slope = (sigma[lo + 1] - sigma[lo]) / ds;
    const double rem = target - ell[lo];
    double delta;
    if (std::abs(slope) * ds < 1e-12 * sigma[lo]) {
      delta = rem / sigma[lo];
    } else {
      delta = (std::sqrt(sigma[lo] * sigma[lo] + 2.0 * slope * rem) - sigma[lo]) / slope;
    }
    s = s_knots[lo] + delta;
    sig = sigma[lo] + slope * delta;
  }
};

}  // namespace

Protocol arc_length_profile(const Model& model, const Protocol& base, int table_nodes) {
  if (table_nodes < 16) throw ConfigError("arc_length_profile: need at least 16 table nodes");
  const int m = table_nodes;
  auto tab = std::make_shared<ArcTable>();
  tab->tau = base.tau;
  tab->s_knots.resize(m + 1);
  tab->sigma.resize(m + 1);
  tab->ell.resize(m + 1);

  KernelOptions kopt;
  kopt.second_order = false;
  parallel_for(m, [&](int i) {
    const double s = i * base.tau / m;
    tab->s_knots[i] = s;
    const ResponseKernels k = response_kernels(model, base.position(s), kopt);
    const RVec v = base.velocity(s);
    tab->sigma[i] = std::sqrt(std::max(0.0, v.dot(k.lambda_sym() * v)));
  });
  tab->s_knots[m] = base.tau;
  tab->sigma[m] = tab->sigma[0];

  // The weak-coupling metric is nearly rank-one: driving along the
  // constant-population direction dissipates only at O(g^2), so the metric
  // speed of a closed path generically touches zero where the tangent
  // crosses that direction. Constant-speed traversal is still the W^(2) tau
  // minimizer up to the (measure-zero) crossings; a relative floor keeps the
  // reparameterization finite through them.
  const double smax = *std::max_element(tab->sigma.begin(), tab->sigma.end());
  if (!(smax > 0))
    throw NumericalError("arc_length_profile: metric speed vanishes along the entire path");
  for (int i = 0; i < m + 1; ++i) tab->sigma[i] = std::max(tab->sigma[i], 1e-6 * smax);

  tab->ell[0] = 0.0;
  for (int i = 0; i < m; ++i)
    tab->ell[i + 1] = tab->ell[i] + 0.5 * (tab->sigma[i] + tab->sigma[i + 1]) *
                                        (tab->s_knots[i + 1] - tab->s_knots[i]);
  tab->total = tab->ell[m];

  Protocol p;
  p.kind = base.kind + "+arclen";
  p.tau = base.tau;
  const double rate = tab->total / base.tau;  // constant sigma * ds/dt
  p.position = [base, tab](double t) {
    double s, sig, slope;
    tab->locate(t, s, sig, slope);
    return base.position(s);
  };
  p.velocity = [base, tab, rate](double t) {
    double s, sig, slope;
    tab->locate(t, s, sig, slope);
    return RVec(base.velocity(s) * (rate / sig));
  };
  p.acceleration = [base, tab, rate](double t) {
    double s, sig, slope;
    tab->locate(t, s, sig, slope);
    const double v = rate / sig;               // ds/dt
    const double a = -slope * v * v / sig;     // d2s/dt2 = -sigma' (ds/dt)^2 / sigma
    return RVec(base.acceleration(s) * v * v + base.velocity(s) * a);
  };
  return p;
}

}  // namespace qpump
