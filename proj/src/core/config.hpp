#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/field.hpp"
#include "core/green.hpp"
#include "core/modes.hpp"
#include "core/profile.hpp"

namespace owg {

// Validated run configuration, parsed from a JSON document. Unknown keys are
// rejected so typos fail loudly.
struct RunConfig {
  // profile
  double k = 1.0, h = 1.0, n_cl = 1.0;
  std::optional<double> n_co_const = 1.5;
  std::vector<double> n_co_table_x, n_co_table_n;

  OdeOptions ode;
  ModeSearchOptions mode_search;
  QuadOptions quad;

  // green: single evaluation point
  double x = 0.0, z = 10.0, xi = 0.0, zeta = 0.0;
  std::string route = "contour";  // "real" | "contour" | "both"

  // source
  std::string source_type = "point_set";
  std::vector<SourceNode> source_points = {{0.0, 0.0, Complex(1.0, 0.0)}};
  double src_x0 = -0.5, src_x1 = 0.5, src_z0 = -0.5, src_z1 = 0.5;
  int src_nx = 4, src_nz = 4;
  std::vector<Complex> src_values;  // nx*nz cell-midpoint samples
  std::optional<Complex> src_constant;

  // observation grid for `field`
  double grid_x0 = -6.0, grid_x1 = 6.0;
  double grid_z0 = 5.0, grid_z1 = 60.0;
  int grid_nx = 13, grid_nz = 12;

  // radcheck
  std::vector<double> R_values = {10.0, 20.0, 40.0, 80.0, 160.0};
  int boundary_points = 128;
  bool compact_single_family = false;

  int threads = 0;              // 0: library default
  std::string output_path;      // empty: stdout
};

// Parses and validates; throws ConfigError on malformed JSON, unknown keys,
// or out-of-range values.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

WaveguideProfile config_profile(const RunConfig& cfg);
SourceSpec config_source(const RunConfig& cfg);
// n uniform nodes covering [a, b] inclusive.
std::vector<double> uniform_axis(double a, double b, int n);

}  // namespace owg
