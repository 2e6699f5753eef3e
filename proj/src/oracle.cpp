#include "qpump/oracle.hpp"

#include <cmath>

namespace qpump {

Eigen::Vector3d single_qubit_bloch(const RVec& B, double T) {
  const double Bn = B.norm();
  if (Bn <= 0) throw ConfigError("single_qubit_bloch: |B| must be positive");
  const double m = std::tanh(Bn / T);
  return Eigen::Vector3d(m * B[0] / Bn, 0.0, m * B[1] / Bn);
}

Mat single_qubit_steady(const RVec& B, double T) {
  const Eigen::Vector3d r = single_qubit_bloch(B, T);
  Mat rho = 0.5 * Mat::Identity(2, 2);
  rho += 0.5 * (r[0] * pauli(Axis::X) + r[1] * pauli(Axis::Y) + r[2] * pauli(Axis::Z));
  return rho;
}

double single_qubit_entropy(double Bnorm, double T) {
  const double m = std::tanh(Bnorm / T);
  const double pp = 0.5 * (1.0 + m), pm = 0.5 * (1.0 - m);
  double s = 0.0;
  if (pp > 0) s -= pp * std::log(pp);
  if (pm > 0) s -= pm * std::log(pm);
  return s;
}

double single_qubit_entropy_rate(const RVec& B, const RVec& Bdot, double T) {
  const double Bn = B.norm();
  if (Bn <= 0) throw ConfigError("single_qubit_entropy_rate: |B| must be positive");
  const double dBn_dt = B.dot(Bdot) / Bn;
  const double m = std::tanh(Bn / T);
  // dS/d|B| = -(|B|/T^2)(1 - m^2): from S(m) with dS/dm = -atanh(m).
  return -(Bn / (T * T)) * (1.0 - m * m) * dBn_dt;
}

std::vector<double> single_qubit_heat1(const SystemConfig& config, const RVec& B,
                                       const RVec& Bdot) {
  if (config.n_qubits != 1)
    throw ConfigError("single_qubit_heat1: reference formula is for one qubit");
  if (config.resolved_convention() != SpinConvention::Pauli)
    throw ConfigError("single_qubit_heat1: reference formula uses the Pauli convention");
  const double Bn = B.norm();
  if (Bn <= 0) throw ConfigError("single_qubit_heat1: |B| must be positive");

  const double T = config.baths.empty() ? 1.0 : config.baths.front().T;
  std::vector<double> weights;
  double norm = 0.0;
  for (const BathSpec& bath : config.baths) {
    if (bath.T != T)
      throw ConfigError("single_qubit_heat1: baths must share one temperature");
    double n_a = 0.0;
    switch (bath.axis) {
      case Axis::X: n_a = B[0] / Bn; break;
      case Axis::Z: n_a = B[1] / Bn; break;
      default:
        throw ConfigError("single_qubit_heat1: couplings must be on x or z");
    }
    const double w = bath.g * bath.g * (1.0 - n_a * n_a);
    weights.push_back(w);
    norm += w;
  }
  if (norm <= 0)
    throw NumericalError("single_qubit_heat1: both couplings aligned with the field");

  const double source = T * single_qubit_entropy_rate(B, Bdot, T);
  std::vector<double> j1;
  j1.reserve(weights.size());
  for (double w : weights) j1.push_back(w / norm * source);
  return j1;
}

namespace {

/// Single-qubit subproblem config for qubit `site` of a J = 0 chain:
/// spin-1/2 convention, field scale eta_j, bath couplings scaled by w_j.
SystemConfig qubit_subconfig(const SystemConfig& parent, int site) {
  SystemConfig sub = parent;
  sub.n_qubits = 1;
  sub.J = 0.0;
  sub.eta = 1.0;
  sub.b = 1.0;
  sub.convention = parent.resolved_convention();
  const double w = site == 0 ? 1.0 : parent.b;
  for (BathSpec& bath : sub.baths) bath.g *= w;
  return sub;
}

}  // namespace

ProductSolution product_state_solve(const SystemConfig& config, const RVec& X,
                                    const RVec& Xdot) {
  config.validate();
  if (config.J != 0.0)
    throw ConfigError("product_state_solve: factorized solution requires J = 0");
  const int n = config.n_qubits;
  const int nb = int(config.baths.size());
  const int d = 2;

  std::vector<Mat> rho_f(static_cast<size_t>(n));
  std::vector<Mat> rho_1(static_cast<size_t>(n));
  ProductSolution out;
  out.j1.assign(size_t(nb), 0.0);
  out.lambda1.assign(size_t(nb), RVec::Zero(d));
  out.lambda = RMat::Zero(d, d);

  for (int j = 0; j < n; ++j) {
    const double eta_j = j == 0 ? 1.0 : config.eta;
    const Model sub(qubit_subconfig(config, j));
    // The subproblem sees the scaled field eta_j X; the chain rule maps its
    // kernels back to derivatives with respect to the shared controls.
    const RVec Xj = eta_j * X;
    KernelOptions kopt;
    kopt.second_order = false;
    const PointKernels pk = point_kernels(sub, Xj, kopt);
    rho_f[size_t(j)] = pk.point.rho_f();
    rho_1[size_t(j)] = pk.rho1(RVec(eta_j * Xdot));
    for (int a = 0; a < nb; ++a) {
      out.lambda1[size_t(a)] += eta_j * pk.kernels.lambda1[size_t(a)];
      out.j1[size_t(a)] += pk.kernels.lambda1[size_t(a)].dot(eta_j * Xdot);
    }
    out.lambda += eta_j * eta_j * pk.kernels.lambda;
  }

  out.rho_f = Mat::Identity(1, 1);
  for (int j = 0; j < n; ++j) out.rho_f = kron(out.rho_f, rho_f[size_t(j)]);

  const int dim = 1 << n;
  out.rho_1 = Mat::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    Mat term = Mat::Identity(1, 1);
    for (int i = 0; i < n; ++i)
      term = kron(term, i == j ? rho_1[size_t(i)] : rho_f[size_t(i)]);
    out.rho_1 += term;
  }
  return out;
}

Mat reduced_qubit(const Mat& rho, int site, int n_qubits) {
  const int dim = 1 << n_qubits;
  if (rho.rows() != dim || rho.cols() != dim)
    throw ConfigError("reduced_qubit: dimension mismatch");
  if (site < 0 || site >= n_qubits) throw ConfigError("reduced_qubit: site out of range");
  Mat out = Mat::Zero(2, 2);
  const int shift = n_qubits - 1 - site;  // site 0 is the leftmost tensor factor
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int rest = 0; rest < dim / 2; ++rest) {
        const int lo = rest & ((1 << shift) - 1);
        const int hi = rest >> shift;
        const int row = (hi << (shift + 1)) | (a << shift) | lo;
        const int col = (hi << (shift + 1)) | (b << shift) | lo;
        out(a, b) += rho(row, col);
      }
  return out;
}

CorrelationSplit correlation_current_split(const Model& model, const RVec& X,
                                           const RVec& Xdot, int bath) {
  if (model.config().n_qubits != 2)
    throw ConfigError("correlation_current_split: defined for two qubits");

  KernelOptions kopt;
  kopt.second_order = false;
  const PointKernels pk = point_kernels(model, X, kopt);
  const Mat& rho_f = pk.point.rho_f();
  const Mat rho_1 = pk.rho1(Xdot);

  const Mat f1 = reduced_qubit(rho_f, 0, 2), f2 = reduced_qubit(rho_f, 1, 2);
  const Mat r1 = reduced_qubit(rho_1, 0, 2), r2 = reduced_qubit(rho_1, 1, 2);

  const Mat term1 = kron(r1, f2);
  const Mat term2 = kron(f1, r2);
  const Mat delta = rho_1 - term1 - term2;

  CorrelationSplit split;
  split.j_q1 = pk.point.heat_trace(bath, term1);
  split.j_q2 = pk.point.heat_trace(bath, term2);
  split.j_corr = pk.point.heat_trace(bath, delta);
  split.total = pk.point.heat_trace(bath, rho_1);

  const double scale = model.config().resolved_convention() == SpinConvention::Pauli ? 1.0 : 0.5;
  const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
  split.delta_r.resize(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Mat Sa = scale * pauli(axes[a]), Sb = scale * pauli(axes[b]);
      const double joint = (rho_f * kron(Sa, Sb)).trace().real();
      const double m1 = (f1 * Sa).trace().real();
      const double m2 = (f2 * Sb).trace().real();
      split.delta_r(a, b) = joint - m1 * m2;
    }
  return split;
}

}  // namespace qpump
