#include "qpump/thermo.hpp"

#include "qpump/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qpump {

double InstantReport::sumJ1() const { return std::accumulate(J1.begin(), J1.end(), 0.0); }
double InstantReport::sumJ2() const { return std::accumulate(J2.begin(), J2.end(), 0.0); }

RVec periodic_derivative(const RVec& samples, double tau) {
  const int n = int(samples.size());
  if (n < 7) throw ConfigError("periodic_derivative: need at least 7 samples");
  const double h = tau / n;
  RVec out(n);
  auto at = [&](int i) { return samples[((i % n) + n) % n]; };
  for (int i = 0; i < n; ++i) {
    out[i] = (45.0 * (at(i + 1) - at(i - 1)) - 9.0 * (at(i + 2) - at(i - 2)) +
              (at(i + 3) - at(i - 3))) /
             (60.0 * h);
  }
  return out;
}

BenchmarkSeries benchmark_series(const Model& model, const Protocol& proto, int nodes,
                                 const KernelOptions& opt) {
  if (nodes < 8) throw ConfigError("benchmark_series: need at least 8 nodes");
  const int nb = int(model.config().baths.size());
  const int d = model.n_controls();
  const double T = model.temperature();
  const double h = proto.tau / nodes;

  BenchmarkSeries series;
  series.nodes.resize(size_t(nodes));

  parallel_for(nodes, [&](int i) {
    InstantReport& r = series.nodes[size_t(i)];
    r.t = (i + 0.5) * h;
    r.X = proto.position(r.t);
    r.Xdot = proto.velocity(r.t);
    r.Xddot = proto.acceleration(r.t);

    const PointKernels pk = point_kernels(model, r.X, opt);
    const Mat& rho_f = pk.point.rho_f();
    const Mat rho_1 = pk.rho1(r.Xdot);
    const auto& dH = model.dH();

    r.P1 = 0.0;
    for (int j = 0; j < d; ++j)
      r.P1 += r.Xdot[j] * (rho_f * dH[size_t(j)]).trace().real();
    r.P2 = r.Xdot.dot(pk.kernels.lambda * r.Xdot);

    r.Jf.resize(size_t(nb));
    r.J1.resize(size_t(nb));
    r.J2.resize(size_t(nb));
    for (int a = 0; a < nb; ++a) {
      r.Jf[size_t(a)] = pk.point.heat_trace(a, rho_f);
      r.J1[size_t(a)] = pk.kernels.lambda1[size_t(a)].dot(r.Xdot);
      r.J2[size_t(a)] = r.Xdot.dot(pk.kernels.omega1[size_t(a)] * r.Xdot) +
                        pk.kernels.lambda2[size_t(a)].dot(r.Xddot);
    }

    r.Sf = von_neumann_entropy(rho_f);
    r.S1 = (rho_1 * pk.point.H).trace().real() / T;
    r.dSf_dt = 0.0;
    for (int j = 0; j < d; ++j)
      r.dSf_dt += r.Xdot[j] * (pk.drho[size_t(j)] * pk.point.H).trace().real() / T;
    r.energy = ((rho_f + rho_1) * pk.point.H).trace().real();
  });

  // Post-pass: periodic time derivatives of the sampled series, then the
  // three balance residuals normalized by the cycle maxima of their terms.
  RVec e(nodes), s1(nodes);
  for (int i = 0; i < nodes; ++i) {
    e[i] = series.nodes[size_t(i)].energy;
    s1[i] = series.nodes[size_t(i)].S1;
  }
  const RVec de = periodic_derivative(e, proto.tau);
  const RVec ds1 = periodic_derivative(s1, proto.tau);

  double scale1 = 0, scale2 = 0, scale3 = 0;
  for (int i = 0; i < nodes; ++i) {
    InstantReport& r = series.nodes[size_t(i)];
    r.dE_dt = de[i];
    r.dS1_dt = ds1[i];
    const double sJf = std::accumulate(r.Jf.begin(), r.Jf.end(), 0.0);
    scale1 = std::max({scale1, std::abs(r.dE_dt), std::abs(r.P1), std::abs(r.P2),
                       std::abs(r.sumJ1()), std::abs(r.sumJ2()), std::abs(sJf)});
    scale2 = std::max({scale2, std::abs(r.dSf_dt), std::abs(r.sumJ1() / T)});
    scale3 = std::max({scale3, std::abs(r.dS1_dt), std::abs((r.sumJ2() + r.P2) / T)});
  }
  scale1 = std::max(scale1, 1e-300);
  scale2 = std::max(scale2, 1e-300);
  scale3 = std::max(scale3, 1e-300);

  for (int i = 0; i < nodes; ++i) {
    InstantReport& r = series.nodes[size_t(i)];
    const double sJf = std::accumulate(r.Jf.begin(), r.Jf.end(), 0.0);
    r.r1 = std::abs(r.dE_dt - (r.P1 + r.P2 + sJf + r.sumJ1() + r.sumJ2())) / scale1;
    r.r2 = std::abs(r.dSf_dt - r.sumJ1() / T) / scale2;
    r.r3 = std::abs(r.dS1_dt - (r.sumJ2() + r.P2) / T) / scale3;
    series.max_r1 = std::max(series.max_r1, r.r1);
    series.max_r2 = std::max(series.max_r2, r.r2);
    series.max_r3 = std::max(series.max_r3, r.r3);
  }
  return series;
}

}  // namespace qpump
