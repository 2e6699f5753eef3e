#include "qpump/config.hpp"
#include "qpump/cycle.hpp"
#include "qpump/io.hpp"
#include "qpump/oracle.hpp"
#include "qpump/parallel.hpp"
#include "qpump/thermo.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace {

using namespace qpump;

struct CommandArgs {
  std::string config;
  std::string out;
  std::string format;
  int nodes = 0;
  std::string grid;
  int workers = 0;
};

void attach_common_flags(CLI::App* cmd, CommandArgs& args) {
  cmd->add_option("--config", args.config, "Config file path or preset name (fig1, fig3a, ...)");
  cmd->add_option("--out", args.out, "Output path (default: stdout)");
  cmd->add_option("--format", args.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--nodes", args.nodes, "Cycle quadrature nodes")->check(CLI::PositiveNumber);
  cmd->add_option("--grid", args.grid, "Sweep grid resolution, WxH");
  cmd->add_option("--workers", args.workers, "Worker threads (overrides QPUMP_WORKERS)")
      ->check(CLI::PositiveNumber);
}

RunConfig make_config(const CommandArgs& args) {
  RunConfig cfg = args.config.empty() ? parse_config("{}") : load_config(args.config);
  if (args.nodes > 0) cfg.nodes = args.nodes;
  if (!args.format.empty()) cfg.output.format = args.format;
  if (!args.out.empty()) cfg.output.path = args.out;
  if (!args.grid.empty()) {
    const size_t x = args.grid.find('x');
    int w = 0, h = 0;
    if (x != std::string::npos) {
      w = std::atoi(args.grid.substr(0, x).c_str());
      h = std::atoi(args.grid.substr(x + 1).c_str());
    }
    if (w < 1 || h < 1) throw ConfigError("--grid must look like 40x40");
    cfg.sweep.grid.nx = w;
    cfg.sweep.grid.nz = h;
  }
  if (args.workers > 0) set_worker_count(args.workers);
  return cfg;
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void stamp(Table& table, const RunConfig& cfg, const std::string& command) {
  table.add_meta("tool", std::string("qpump ") + kVersion);
  table.add_meta("command", command);
  table.add_meta("config_hash", config_hash(cfg.source));
  table.add_meta("generated_at", iso_now());
  table.add_meta("units", "energies in k_B T, times in protocol periods (tau)");
}

void emit_text(const std::string& text, const RunConfig& cfg) {
  if (cfg.output.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output.path);
  if (!out) throw ConfigError("cannot open output path '" + cfg.output.path + "'");
  out << text;
}

void emit(const Table& table, const RunConfig& cfg) {
  if (cfg.output.format == "json") {
    emit_text(table_to_json(table) + "\n", cfg);
  } else {
    std::ostringstream ss;
    write_csv(ss, table, cfg.output.precision);
    emit_text(ss.str(), cfg);
  }
}

// ---------------------------------------------------------------------------

int run_steady(const RunConfig& cfg) {
  const Model model(cfg.model);
  RVec X(2);
  X << cfg.steady_X[0], cfg.steady_X[1];
  const FrozenPoint f = freeze(model, X);
  const Mat rho = f.rho_f();
  const Mat gibbs = gibbs_state(f.H, model.temperature());
  const double residual = (rho - gibbs).norm();

  Eigen::SelfAdjointEigenSolver<Mat> es(f.H);
  const RVec ev = es.eigenvalues();

  Table table;
  stamp(table, cfg, "steady");
  table.add_meta("X", format_number(X[0]) + "," + format_number(X[1]));
  table.add_meta("gibbs_residual_fro", format_number(residual));
  table.add_meta("kernel_gap_ratio", format_number(f.solver->kernel_gap_ratio()));
  table.add_meta("entropy_kB", format_number(von_neumann_entropy(rho)));
  table.columns = {"level", "eigenvalue[kBT]", "population"};
  for (int k = 0; k < ev.size(); ++k) {
    auto& row = table.add_row();
    row[0] = k;
    row[1] = ev[k];
    row[2] = (es.eigenvectors().col(k).adjoint() * rho * es.eigenvectors().col(k))(0, 0).real();
  }

  if (cfg.output.format == "json") {
    nlohmann::json j;
    for (const auto& [key, value] : table.meta) j["meta"][key] = value;
    j["eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
    for (int r = 0; r < rho.rows(); ++r)
      for (int c = 0; c < rho.cols(); ++c) {
        j["rho_f"]["re"][size_t(r)][size_t(c)] = rho(r, c).real();
        j["rho_f"]["im"][size_t(r)][size_t(c)] = rho(r, c).imag();
      }
    j["gibbs_residual_fro"] = residual;
    emit_text(j.dump(2) + "\n", cfg);
  } else {
    emit(table, cfg);
  }
  return 0;
}

int run_benchmark(const RunConfig& cfg) {
  const Model model(cfg.model);
  const Protocol proto = cfg.protocol.build(model);
  const BenchmarkSeries series = benchmark_series(model, proto, cfg.nodes, cfg.kernels);
  const int nb = int(cfg.model.baths.size());
  const double h = proto.tau / cfg.nodes;

  double oint_p2 = 0;
  std::vector<double> oint_j2(size_t(nb), 0.0), oint_j1(size_t(nb), 0.0);
  for (const InstantReport& r : series.nodes) {
    oint_p2 += h * r.P2;
    for (int a = 0; a < nb; ++a) {
      oint_j2[size_t(a)] += h * r.J2[size_t(a)];
      oint_j1[size_t(a)] += h * r.J1[size_t(a)];
    }
  }
  const double oint_sum = oint_p2 + std::accumulate(oint_j2.begin(), oint_j2.end(), 0.0);
  const double oint_scale = std::max(
      {std::abs(oint_p2),
       std::abs(*std::max_element(oint_j2.begin(), oint_j2.end(),
                                  [](double a, double b) { return std::abs(a) < std::abs(b); })),
       1e-300});

  Table table;
  stamp(table, cfg, "benchmark");
  table.add_meta("protocol", proto.kind);
  table.add_meta("tau", format_number(proto.tau));
  table.add_meta("nodes", std::to_string(cfg.nodes));
  for (int a = 0; a < nb; ++a) {
    table.add_meta("oint_J1_" + cfg.model.baths[size_t(a)].label + "[kBT]",
                   format_number(oint_j1[size_t(a)]));
    table.add_meta("oint_J2_" + cfg.model.baths[size_t(a)].label + "[kBT]",
                   format_number(oint_j2[size_t(a)]));
  }
  table.add_meta("oint_P2[kBT]", format_number(oint_p2));
  table.add_meta("second_order_sum_rule_rel", format_number(oint_sum / oint_scale));
  table.add_meta("max_r1", format_number(series.max_r1));
  table.add_meta("max_r2", format_number(series.max_r2));
  table.add_meta("max_r3", format_number(series.max_r3));

  table.columns = {"t[tau]"};
  for (int a = 0; a < nb; ++a)
    table.columns.push_back("J1_" + cfg.model.baths[size_t(a)].label + "[kBT/tau]");
  table.columns.insert(table.columns.end(),
                       {"TdSf_dt[kBT/tau]", "J2_sum[kBT/tau]", "P2[kBT/tau]",
                        "TdS1_dt[kBT/tau]", "r1[rel]", "r2[rel]", "r3[rel]"});
  const double T = model.temperature();
  for (const InstantReport& r : series.nodes) {
    auto& row = table.add_row();
    size_t c = 0;
    row[c++] = r.t;
    for (int a = 0; a < nb; ++a) row[c++] = r.J1[size_t(a)];
    row[c++] = T * r.dSf_dt;
    row[c++] = r.sumJ2();
    row[c++] = r.P2;
    row[c++] = T * r.dS1_dt;
    row[c++] = r.r1;
    row[c++] = r.r2;
    row[c++] = r.r3;
  }
  emit(table, cfg);

  const double worst = std::max({series.max_r1, series.max_r2, series.max_r3});
  if (worst > 1e-6)
    throw InvariantViolation("balance residual " + format_number(worst) +
                             " exceeds 1e-6 (see r1/r2/r3 columns)");
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  const Model model(cfg.model);
  const GridConfig& grid = cfg.sweep.grid;
  const RVec xs = grid.xs(), zs = grid.zs();
  const int W = int(xs.size()), H = int(zs.size());

  bool want_rotor = false, want_omega = false;
  for (const std::string& f : cfg.sweep.fields) {
    if (f == "rotor_L" || f == "rotor_R") want_rotor = true;
    else if (f == "max_eig_neg_Omega_L" || f == "max_eig_neg_Omega_R") want_omega = true;
    else if (f != "max_eig_Lambda")
      throw ConfigError("unknown sweep field '" + f +
                        "' (rotor_L, rotor_R, max_eig_Lambda, max_eig_neg_Omega_L, "
                        "max_eig_neg_Omega_R)");
  }

  std::vector<FieldMap> rotor(2);
  if (want_rotor) {
    for (int a = 0; a < 2; ++a) {
      const std::string name = a == 0 ? "rotor_L" : "rotor_R";
      if (std::find(cfg.sweep.fields.begin(), cfg.sweep.fields.end(), name) !=
          cfg.sweep.fields.end())
        rotor[size_t(a)] = rotor_map(model, a, xs, zs);
    }
  }

  const bool want_eig =
      want_omega || std::find(cfg.sweep.fields.begin(), cfg.sweep.fields.end(),
                              "max_eig_Lambda") != cfg.sweep.fields.end();
  std::vector<RMat> eig_maps(3);  // Lambda, -Omega_L, -Omega_R
  if (want_eig) {
    for (RMat& m : eig_maps) m.resize(H, W);
    KernelOptions kopt = cfg.kernels;
    kopt.second_order = want_omega;
    parallel_for(W * H, [&](int idx) {
      const int ix = idx % W, iz = idx / W;
      RVec X(2);
      X << xs[ix], zs[iz];
      const ResponseKernels k = response_kernels(model, X, kopt);
      const auto max_eig = [](const RMat& m) {
        return Eigen::SelfAdjointEigenSolver<RMat>(m).eigenvalues().maxCoeff();
      };
      eig_maps[0](iz, ix) = max_eig(k.lambda_sym());
      if (want_omega) {
        eig_maps[1](iz, ix) = max_eig(RMat(-k.omega_total_sym(0)));
        eig_maps[2](iz, ix) = max_eig(RMat(-k.omega_total_sym(1)));
      }
    });
  }

  Table table;
  stamp(table, cfg, "sweep");
  table.add_meta("grid", std::to_string(W) + "x" + std::to_string(H));
  table.columns = {"B_x[kBT]", "B_z[kBT]"};
  for (const std::string& f : cfg.sweep.fields) {
    if (f == "rotor_L" || f == "rotor_R")
      table.columns.push_back(f + "[1/kBT]");
    else
      table.columns.push_back(f + "[tau/kBT]");
  }
  for (int iz = 0; iz < H; ++iz)
    for (int ix = 0; ix < W; ++ix) {
      auto& row = table.add_row();
      size_t c = 0;
      row[c++] = xs[ix];
      row[c++] = zs[iz];
      for (const std::string& f : cfg.sweep.fields) {
        if (f == "rotor_L") row[c++] = rotor[0].values(iz, ix);
        else if (f == "rotor_R") row[c++] = rotor[1].values(iz, ix);
        else if (f == "max_eig_Lambda") row[c++] = eig_maps[0](iz, ix);
        else if (f == "max_eig_neg_Omega_L") row[c++] = eig_maps[1](iz, ix);
        else row[c++] = eig_maps[2](iz, ix);
      }
    }
  emit(table, cfg);
  return 0;
}

nlohmann::json cycle_report_json(const CycleReport& rep, const std::vector<BathSpec>& baths) {
  nlohmann::json j;
  for (size_t a = 0; a < baths.size(); ++a) {
    j["q_pump[kBT]"][baths[a].label] = rep.q_pump[a];
    j["q2[kBT]"][baths[a].label] = rep.q2[a];
  }
  j["pump_sum[kBT]"] = rep.pump_sum;
  j["w2[kBT]"] = rep.w2;
  j["w2_tau[kBT tau]"] = rep.w2_tau;
  j["balance[rel]"] = rep.balance;
  j["length[sqrt(kBT tau)]"] = rep.length;
  j["length_sq[kBT tau]"] = rep.length_sq;
  j["cold_bath"] = baths[size_t(rep.cold_bath)].label;
  j["A[kBT]"] = rep.A;
  j["merit_A2_over_L2[1/tau]"] = rep.merit;
  j["tau_D[tau]"] = rep.tau_D;
  j["p_max[kBT/tau]"] = rep.p_max;
  j["bias_warning"] = rep.bias_warning;
  return j;
}

int run_cycle(const RunConfig& cfg) {
  if (cfg.cycle_scan) {
    Table table;
    stamp(table, cfg, "cycle");
    table.add_meta("protocol", cfg.protocol.kind);
    table.add_meta("nodes", std::to_string(cfg.nodes));

    // Single-qubit reference values for circle protocols (the dotted baseline
    // of the published J-scan).
    if (cfg.protocol.kind == "circle") {
      SystemConfig sq;
      sq.n_qubits = 1;
      sq.baths = cfg.model.baths;
      const Model ref(sq);
      CycleOptions opt;
      opt.nodes = cfg.nodes;
      opt.second_order = false;
      opt.delta_T = cfg.delta_T;
      const CycleReport rep = ::qpump::run_cycle(ref, cfg.protocol.build(ref), opt);
      table.add_meta("ref_1qb_q_pump_R[kBT]", format_number(rep.q_pump[1]));
      table.add_meta("ref_1qb_length_sq[kBT tau]", format_number(rep.length_sq));
    }

    table.columns = {"J[kBT]",         "b",
                     "q_pump_L[kBT]",  "q_pump_R[kBT]",
                     "q2_L[kBT]",      "q2_R[kBT]",
                     "w2[kBT]",        "length_sq[kBT tau]",
                     "A[kBT]",         "merit_A2_over_L2[1/tau]"};
    for (double J : cfg.cycle_scan->J_values)
      for (double b : cfg.cycle_scan->b_values) {
        SystemConfig mc = cfg.model;
        mc.J = J;
        mc.b = b;
        const Model model(mc);
        CycleOptions opt;
        opt.nodes = cfg.nodes;
        opt.delta_T = cfg.delta_T;
        opt.kernels = cfg.kernels;
        const CycleReport rep = ::qpump::run_cycle(model, cfg.protocol.build(model), opt);
        auto& row = table.add_row();
        row = {J,          b,          rep.q_pump[0], rep.q_pump[1], rep.q2[0],
               rep.q2[1],  rep.w2,     rep.length_sq, rep.A,         rep.merit};
      }
    emit(table, cfg);
    return 0;
  }

  const Model model(cfg.model);
  const Protocol proto = cfg.protocol.build(model);
  CycleOptions opt;
  opt.nodes = cfg.nodes;
  opt.delta_T = cfg.delta_T;
  opt.kernels = cfg.kernels;
  const CycleReport rep = ::qpump::run_cycle(model, proto, opt);

  if (cfg.output.format == "json") {
    nlohmann::json j = cycle_report_json(rep, cfg.model.baths);
    j["meta"]["tool"] = std::string("qpump ") + kVersion;
    j["meta"]["config_hash"] = config_hash(cfg.source);
    j["meta"]["protocol"] = proto.kind;
    j["meta"]["tau"] = proto.tau;
    j["meta"]["nodes"] = cfg.nodes;
    emit_text(j.dump(2) + "\n", cfg);
  } else {
    Table table;
    stamp(table, cfg, "cycle");
    table.add_meta("protocol", proto.kind);
    table.columns = {"q_pump_L[kBT]", "q_pump_R[kBT]",     "pump_sum[kBT]",
                     "q2_L[kBT]",     "q2_R[kBT]",         "w2[kBT]",
                     "balance[rel]",  "length_sq[kBT tau]", "A[kBT]",
                     "merit_A2_over_L2[1/tau]", "tau_D[tau]", "p_max[kBT/tau]"};
    auto& row = table.add_row();
    row = {rep.q_pump[0], rep.q_pump[1], rep.pump_sum, rep.q2[0],  rep.q2[1], rep.w2,
           rep.balance,   rep.length_sq, rep.A,        rep.merit,  rep.tau_D, rep.p_max};
    emit(table, cfg);
  }
  return 0;
}

int run_oracle_check(const RunConfig& cfg) {
  Table table;
  stamp(table, cfg, "oracle-check");
  table.columns = {"check_index", "measured", "tolerance", "pass"};
  std::vector<std::string> names;
  bool all_pass = true;
  const auto push = [&](const std::string& name, double measured, double tol) {
    auto& row = table.add_row();
    row[0] = double(names.size());
    row[1] = measured;
    row[2] = tol;
    const bool ok = measured < tol;
    row[3] = ok ? 1.0 : 0.0;
    all_pass = all_pass && ok;
    names.push_back(name);
    table.add_meta("check_" + std::to_string(names.size() - 1), name);
  };

  // (i) Single-qubit closed form vs engine along a circle protocol.
  {
    SystemConfig sq;
    sq.n_qubits = 1;
    sq.baths = cfg.model.baths;
    const Model model(sq);
    const Protocol proto = circle_protocol(cfg.protocol.B0, cfg.protocol.tau);
    double worst_j1 = 0, worst_rho = 0, worst_sum = 0;
    const int samples = 32;
    for (int i = 0; i < samples; ++i) {
      const double t = (i + 0.5) * proto.tau / samples;
      const RVec X = proto.position(t), Xd = proto.velocity(t);
      KernelOptions kopt;
      kopt.second_order = false;
      const PointKernels pk = point_kernels(model, X, kopt);
      const auto j1_ref = single_qubit_heat1(sq, X, Xd);
      double scale = 1e-300;
      for (size_t a = 0; a < j1_ref.size(); ++a) scale = std::max(scale, std::abs(j1_ref[a]));
      double sum_eng = 0;
      for (size_t a = 0; a < j1_ref.size(); ++a) {
        const double eng = pk.kernels.lambda1[a].dot(Xd);
        worst_j1 = std::max(worst_j1, std::abs(eng - j1_ref[a]) / scale);
        sum_eng += eng;
      }
      worst_rho = std::max(worst_rho, (pk.point.rho_f() - single_qubit_steady(X)).norm());
      const double dsf = model.temperature() * single_qubit_entropy_rate(X, Xd);
      worst_sum = std::max(worst_sum, std::abs(sum_eng - dsf) / std::max(1e-300, std::abs(dsf)));
    }
    push("single_qubit_J1_rel_error", worst_j1, 1e-8);
    push("single_qubit_rho_f_fro_error", worst_rho, 1e-10);
    push("sum_J1_vs_TdSf_rel_error", worst_sum, 1e-8);
  }

  // (ii) Product factorization at J = 0.
  {
    SystemConfig pc = cfg.model;
    pc.n_qubits = std::max(2, pc.n_qubits);
    pc.J = 0.0;
    // b = 1 with eta = 1 conserves total spin and has no unique steady state.
    if (pc.b == 1.0 && pc.eta == 1.0) pc.b = 2.0;
    const Model model(pc);
    RVec X(2), Xd(2);
    X << 1.0, 0.5;
    Xd << -0.7, 1.3;
    const ProductSolution prod = product_state_solve(pc, X, Xd);
    const PointKernels pk = point_kernels(model, X, KernelOptions{false});
    if (pc.n_qubits == 2) {
      const CorrelationSplit split = correlation_current_split(model, X, Xd, 1);
      push("J0_frozen_correlations_norm", split.delta_r.norm(), 1e-10);
    }
    push("J0_rho_f_vs_product_fro", (pk.point.rho_f() - prod.rho_f).norm(), 1e-9);
    double worst = 0;
    for (size_t a = 0; a < pc.baths.size(); ++a) {
      const double eng = pk.kernels.lambda1[a].dot(Xd);
      worst = std::max(worst, std::abs(eng - prod.j1[a]) /
                                  std::max(1e-300, std::abs(prod.j1[a])));
    }
    push("J0_J1_vs_product_rel_error", worst, 1e-8);
  }

  // (iii) Correlation-split additivity at the configured model.
  if (cfg.model.n_qubits == 2) {
    const Model model(cfg.model);
    RVec X(2), Xd(2);
    X << cfg.steady_X[0], cfg.steady_X[1];
    Xd << 1.0, -0.5;
    const CorrelationSplit split = correlation_current_split(model, X, Xd, cfg.model.cold_bath);
    const double resid = std::abs(split.total - (split.j_q1 + split.j_q2 + split.j_corr));
    push("correlation_split_additivity", resid / std::max(1e-300, std::abs(split.total)), 1e-9);
    table.add_meta("split_j_q1[kBT/tau]", format_number(split.j_q1));
    table.add_meta("split_j_q2[kBT/tau]", format_number(split.j_q2));
    table.add_meta("split_j_corr[kBT/tau]", format_number(split.j_corr));
  }

  emit(table, cfg);
  if (!all_pass) throw InvariantViolation("oracle-check: at least one gate failed");
  return 0;
}

int run_merit_scan(const RunConfig& cfg) {
  Table table;
  stamp(table, cfg, "merit-scan");
  table.add_meta("delta_T", format_number(cfg.delta_T));
  table.columns = {"J[kBT]",  "B0[kBT]",  "A[kBT]", "length_sq[kBT tau]",
                   "merit_A2_over_L2[1/tau]", "tau_D[tau]", "p_max[kBT/tau]"};

  for (double J : cfg.merit.J_values) {
    SystemConfig mc = cfg.model;
    mc.J = J;
    const Model model(mc);
    for (int i = 0; i < cfg.merit.count; ++i) {
      const double B0 =
          cfg.merit.count == 1
              ? cfg.merit.B0_from
              : cfg.merit.B0_from +
                    (cfg.merit.B0_to - cfg.merit.B0_from) * i / (cfg.merit.count - 1);
      CycleOptions opt;
      opt.nodes = cfg.nodes;
      opt.second_order = false;
      opt.delta_T = cfg.delta_T;
      opt.kernels = cfg.kernels;
      const CycleReport rep =
          ::qpump::run_cycle(model, circle_protocol(B0, cfg.protocol.tau), opt);
      auto& row = table.add_row();
      row = {J, B0, rep.A, rep.length_sq, rep.merit, rep.tau_D, rep.p_max};
    }
  }
  emit(table, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpump: slowly driven qubit thermal machines (Lindblad response engine)"};
  app.require_subcommand(1);

  std::map<std::string, CommandArgs> args;
  for (const char* name : {"steady", "benchmark", "sweep", "cycle", "oracle-check",
                           "merit-scan"}) {
    CLI::App* cmd = app.add_subcommand(name, "");
    attach_common_flags(cmd, args[name]);
  }
  app.get_subcommand("steady")->description("Frozen steady state and Gibbs residual at one X");
  app.get_subcommand("benchmark")
      ->description("Time-resolved currents/powers and balance residuals over one cycle");
  app.get_subcommand("sweep")->description("Field maps (rotor, kernel eigenvalues) on an X grid");
  app.get_subcommand("cycle")->description("Cycle integrals: pumped heat, dissipation, length");
  app.get_subcommand("oracle-check")
      ->description("Engine vs closed-form references; nonzero exit on any gate failure");
  app.get_subcommand("merit-scan")->description("Figure of merit A^2/L^2 over B0 and J");

  try {
    app.parse(argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();
    const RunConfig cfg = make_config(args[name]);
    if (name == "steady") return run_steady(cfg);
    if (name == "benchmark") return run_benchmark(cfg);
    if (name == "sweep") return run_sweep(cfg);
    if (name == "cycle") return run_cycle(cfg);
    if (name == "oracle-check") return run_oracle_check(cfg);
    return run_merit_scan(cfg);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
