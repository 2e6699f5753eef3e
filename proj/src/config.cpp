#include "qpump/config.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace qpump {

namespace {

using nlohmann::json;

/// Reject keys outside the documented schema, naming the offender.
void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError("unknown key '" + it.key() + "' in " + context);
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid value for '") + key + "': " + e.what());
  }
}

std::vector<double> get_doubles(const json& obj, const char* key,
                                std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_array())
    throw ConfigError(std::string("'") + key + "' must be an array of numbers");
  return obj.at(key).get<std::vector<double>>();
}

SpinConvention parse_convention(const std::string& s) {
  if (s == "auto") return SpinConvention::Auto;
  if (s == "half") return SpinConvention::Half;
  if (s == "pauli") return SpinConvention::Pauli;
  throw ConfigError("convention must be one of auto, half, pauli: got '" + s + "'");
}

BathSpec parse_bath(const json& obj, const std::string& context) {
  check_keys(obj, {"label", "g", "T", "omega_c", "axis"}, context);
  BathSpec bath;
  bath.label = get_or<std::string>(obj, "label", bath.label);
  bath.g = get_or(obj, "g", bath.g);
  bath.T = get_or(obj, "T", bath.T);
  bath.omega_c = get_or(obj, "omega_c", bath.omega_c);
  if (obj.contains("axis")) bath.axis = axis_from_string(obj.at("axis").get<std::string>());
  return bath;
}

SystemConfig parse_model(const json& obj) {
  check_keys(obj,
             {"n_qubits", "J", "eta", "b", "convention", "cold_bath", "baths", "numerics"},
             "model");
  SystemConfig cfg;
  cfg.baths = SystemConfig::default_baths();
  cfg.n_qubits = get_or(obj, "n_qubits", cfg.n_qubits);
  cfg.J = get_or(obj, "J", cfg.J);
  cfg.eta = get_or(obj, "eta", cfg.eta);
  cfg.b = get_or(obj, "b", cfg.b);
  if (obj.contains("convention"))
    cfg.convention = parse_convention(obj.at("convention").get<std::string>());

  if (obj.contains("baths")) {
    if (!obj.at("baths").is_array()) throw ConfigError("'baths' must be an array");
    cfg.baths.clear();
    int i = 0;
    for (const json& b : obj.at("baths"))
      cfg.baths.push_back(parse_bath(b, "baths[" + std::to_string(i++) + "]"));
  }

  if (obj.contains("cold_bath")) {
    const json& cb = obj.at("cold_bath");
    if (cb.is_number_integer()) {
      cfg.cold_bath = cb.get<int>();
    } else if (cb.is_string()) {
      const std::string label = cb.get<std::string>();
      int found = -1;
      for (size_t i = 0; i < cfg.baths.size(); ++i)
        if (cfg.baths[i].label == label) found = int(i);
      if (found < 0) throw ConfigError("cold_bath label '" + label + "' matches no bath");
      cfg.cold_bath = found;
    } else {
      throw ConfigError("cold_bath must be a bath index or label");
    }
  }

  if (obj.contains("numerics")) {
    const json& num = obj.at("numerics");
    check_keys(num, {"degeneracy_tol", "fd_step", "derivative", "kernel_rank_tol"},
               "model.numerics");
    cfg.degeneracy_tol = get_or(num, "degeneracy_tol", cfg.degeneracy_tol);
    cfg.fd_step = get_or(num, "fd_step", cfg.fd_step);
    cfg.kernel_rank_tol = get_or(num, "kernel_rank_tol", cfg.kernel_rank_tol);
    if (num.contains("derivative")) {
      const std::string d = num.at("derivative").get<std::string>();
      if (d == "analytic")
        cfg.analytic_derivative = true;
      else if (d == "fd")
        cfg.analytic_derivative = false;
      else
        throw ConfigError("numerics.derivative must be 'analytic' or 'fd': got '" + d + "'");
    }
  }
  return cfg;
}

ProtocolConfig parse_protocol(const json& obj) {
  check_keys(obj,
             {"kind", "B0", "tau", "R", "corner_radius", "seed", "center", "amplitude",
              "harmonics", "time_warp", "arc_length", "arc_table_nodes"},
             "protocol");
  ProtocolConfig p;
  p.kind = get_or<std::string>(obj, "kind", p.kind);
  p.B0 = get_or(obj, "B0", p.B0);
  p.tau = get_or(obj, "tau", p.tau);
  p.R = get_or(obj, "R", p.R);
  p.corner_radius = get_or(obj, "corner_radius", p.corner_radius);
  p.seed = get_or(obj, "seed", p.seed);
  p.center = get_doubles(obj, "center", p.center);
  p.amplitude = get_or(obj, "amplitude", p.amplitude);
  p.harmonics = get_or(obj, "harmonics", p.harmonics);
  p.arc_length = get_or(obj, "arc_length", p.arc_length);
  p.arc_table_nodes = get_or(obj, "arc_table_nodes", p.arc_table_nodes);
  if (obj.contains("time_warp")) {
    const json& w = obj.at("time_warp");
    check_keys(w, {"seed", "strength"}, "protocol.time_warp");
    TimeWarpConfig warp;
    warp.seed = get_or(w, "seed", warp.seed);
    warp.strength = get_or(w, "strength", warp.strength);
    p.warp = warp;
  }
  return p;
}

GridConfig parse_grid(const json& obj, const std::string& context) {
  check_keys(obj, {"x_min", "x_max", "z_min", "z_max", "nx", "nz"}, context);
  GridConfig g;
  g.x_min = get_or(obj, "x_min", g.x_min);
  g.x_max = get_or(obj, "x_max", g.x_max);
  g.z_min = get_or(obj, "z_min", g.z_min);
  g.z_max = get_or(obj, "z_max", g.z_max);
  g.nx = get_or(obj, "nx", g.nx);
  g.nz = get_or(obj, "nz", g.nz);
  if (g.nx < 1 || g.nz < 1) throw ConfigError(context + ": grid resolution must be >= 1");
  if (g.x_max < g.x_min || g.z_max < g.z_min)
    throw ConfigError(context + ": empty grid range");
  return g;
}

}  // namespace

RVec GridConfig::xs() const {
  RVec v(nx);
  for (int i = 0; i < nx; ++i)
    v[i] = nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1);
  return v;
}

RVec GridConfig::zs() const {
  RVec v(nz);
  for (int i = 0; i < nz; ++i)
    v[i] = nz == 1 ? z_min : z_min + (z_max - z_min) * i / (nz - 1);
  return v;
}

Protocol ProtocolConfig::build(const Model& model) const {
  Protocol base;
  if (kind == "ellipse") {
    base = ellipse_protocol(B0, tau);
  } else if (kind == "circle") {
    base = circle_protocol(B0, tau);
  } else if (kind == "sector") {
    base = sector_protocol(R, corner_radius, tau);
  } else if (kind == "fourier") {
    if (center.size() != 2)
      throw ConfigError("protocol.center must have 2 components");
    RVec c(2);
    c << center[0], center[1];
    base = fourier_loop(seed, c, amplitude, harmonics, tau);
  } else {
    throw ConfigError("protocol.kind must be one of ellipse, circle, sector, fourier: got '" +
                      kind + "'");
  }
  if (warp) base = time_warp(base, warp->seed, warp->strength);
  if (arc_length) base = arc_length_profile(model, base, arc_table_nodes);
  return base;
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(root,
             {"model", "protocol", "cycle", "kernels", "steady", "sweep", "cycle_scan",
              "merit_scan", "output"},
             "config");

  RunConfig cfg;
  cfg.model.baths = SystemConfig::default_baths();
  if (root.contains("model")) cfg.model = parse_model(root.at("model"));
  if (root.contains("protocol")) cfg.protocol = parse_protocol(root.at("protocol"));

  if (root.contains("cycle")) {
    const json& c = root.at("cycle");
    check_keys(c, {"nodes", "delta_T"}, "cycle");
    cfg.nodes = get_or(c, "nodes", cfg.nodes);
    cfg.delta_T = get_or(c, "delta_T", cfg.delta_T);
    if (cfg.nodes < 8) throw ConfigError("cycle.nodes must be >= 8");
  }

  if (root.contains("kernels")) {
    const json& k = root.at("kernels");
    check_keys(k, {"step", "richardson"}, "kernels");
    cfg.kernels.step = get_or(k, "step", cfg.kernels.step);
    cfg.kernels.richardson = get_or(k, "richardson", cfg.kernels.richardson);
    if (!(cfg.kernels.step > 0)) throw ConfigError("kernels.step must be > 0");
  }

  if (root.contains("steady")) {
    const json& s = root.at("steady");
    check_keys(s, {"X"}, "steady");
    cfg.steady_X = get_doubles(s, "X", cfg.steady_X);
    if (cfg.steady_X.size() != 2) throw ConfigError("steady.X must have 2 components");
  }

  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    check_keys(s, {"fields", "grid"}, "sweep");
    if (s.contains("fields")) {
      cfg.sweep.fields = s.at("fields").get<std::vector<std::string>>();
      if (cfg.sweep.fields.empty()) throw ConfigError("sweep.fields must not be empty");
    }
    if (s.contains("grid")) cfg.sweep.grid = parse_grid(s.at("grid"), "sweep.grid");
  }

  if (root.contains("cycle_scan")) {
    const json& s = root.at("cycle_scan");
    check_keys(s, {"J_values", "b_values"}, "cycle_scan");
    CycleScanConfig scan;
    scan.J_values = get_doubles(s, "J_values", {});
    scan.b_values = get_doubles(s, "b_values", {cfg.model.b});
    if (scan.J_values.empty()) throw ConfigError("cycle_scan.J_values must not be empty");
    cfg.cycle_scan = scan;
  }

  if (root.contains("merit_scan")) {
    const json& s = root.at("merit_scan");
    check_keys(s, {"J_values", "B0_from", "B0_to", "count"}, "merit_scan");
    cfg.merit.J_values = get_doubles(s, "J_values", cfg.merit.J_values);
    cfg.merit.B0_from = get_or(s, "B0_from", cfg.merit.B0_from);
    cfg.merit.B0_to = get_or(s, "B0_to", cfg.merit.B0_to);
    cfg.merit.count = get_or(s, "count", cfg.merit.count);
    if (cfg.merit.count < 1) throw ConfigError("merit_scan.count must be >= 1");
    if (!(cfg.merit.B0_from > 0) || cfg.merit.B0_to < cfg.merit.B0_from)
      throw ConfigError("merit_scan B0 range must be positive and ordered");
  }

  if (root.contains("output")) {
    const json& o = root.at("output");
    check_keys(o, {"format", "path", "precision"}, "output");
    cfg.output.format = get_or<std::string>(o, "format", cfg.output.format);
    cfg.output.path = get_or<std::string>(o, "path", cfg.output.path);
    cfg.output.precision = get_or(o, "precision", cfg.output.precision);
    if (cfg.output.format != "csv" && cfg.output.format != "json")
      throw ConfigError("output.format must be 'csv' or 'json'");
    if (cfg.output.precision < 1 || cfg.output.precision > 17)
      throw ConfigError("output.precision must lie in [1, 17]");
  }

  cfg.model.validate();
  cfg.source = root.dump();
  return cfg;
}

RunConfig load_config(const std::string& path_or_preset) {
  std::ifstream in(path_or_preset);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
  }
  const auto& table = presets();
  const auto it = table.find(path_or_preset);
  if (it == table.end()) {
    std::string names;
    for (const auto& [name, text] : table) names += (names.empty() ? "" : ", ") + name;
    throw ConfigError("'" + path_or_preset + "' is neither a readable file nor a preset (" +
                      names + ")");
  }
  return parse_config(it->second);
}

std::string config_hash(const std::string& canonical) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qpump
