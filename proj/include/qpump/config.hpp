#pragma once

#include "qpump/cycle.hpp"
#include "qpump/model.hpp"
#include "qpump/protocol.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qpump {

struct TimeWarpConfig {
  unsigned seed = 1;
  double strength = 0.5;
};

/// Protocol description as configured; build() assembles the evaluators
/// (arc-length reparameterization needs the model's metric, hence the
/// model argument).
struct ProtocolConfig {
  std::string kind = "ellipse";  ///< ellipse | circle | sector | fourier
  double B0 = 1.0;
  double tau = 1.0;
  double R = 20.0;              ///< sector radius
  double corner_radius = 1.0;   ///< sector rounding (C^1 traversal)
  unsigned seed = 1;            ///< fourier
  std::vector<double> center = {1.2, 1.2};
  double amplitude = 0.5;
  int harmonics = 3;
  std::optional<TimeWarpConfig> warp;
  bool arc_length = false;
  int arc_table_nodes = 512;

  Protocol build(const Model& model) const;
};

struct GridConfig {
  double x_min = 0.05, x_max = 2.5;
  double z_min = 0.05, z_max = 2.5;
  int nx = 40, nz = 40;

  RVec xs() const;
  RVec zs() const;
};

struct SweepConfig {
  std::vector<std::string> fields = {"rotor_L"};
  GridConfig grid;
};

struct CycleScanConfig {
  std::vector<double> J_values;
  std::vector<double> b_values;
};

struct MeritScanConfig {
  std::vector<double> J_values = {0.0, 1.0, 2.0};
  double B0_from = 0.25, B0_to = 2.5;
  int count = 10;
};

struct OutputConfig {
  std::string format = "csv";  ///< csv | json
  std::string path;            ///< empty = stdout
  int precision = 12;          ///< significant digits in tables
};

struct RunConfig {
  SystemConfig model;
  ProtocolConfig protocol;
  int nodes = 2048;     ///< cycle/benchmark quadrature nodes
  double delta_T = 0.1; ///< temperature bias for figures of merit
  KernelOptions kernels;
  std::vector<double> steady_X = {1.0, 0.5};
  SweepConfig sweep;
  std::optional<CycleScanConfig> cycle_scan;
  MeritScanConfig merit;
  OutputConfig output;

  std::string source;  ///< canonical JSON this config was parsed from
};

/// Parse a JSON config document. Unknown keys anywhere raise ConfigError
/// naming the offending key; all fields have documented defaults
/// (docs/config.md).
RunConfig parse_config(const std::string& json_text);

/// Load from a file path, or from the named built-in preset when no such
/// file exists.
RunConfig load_config(const std::string& path_or_preset);

/// Built-in presets (fig1, fig3a, fig3b, fig4, fig5, fig6, fig7): the
/// parameter sets behind the published figures. Mirrored in configs/.
const std::map<std::string, std::string>& presets();

/// FNV-1a hash of the canonical config text, for output metadata.
std::string config_hash(const std::string& canonical);

}  // namespace qpump
