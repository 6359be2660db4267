#include "core/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace owg {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& block,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw ConfigError("config: '" + block + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key))
      throw ConfigError("config: unknown key '" + key + "' in " + block);
  }
}

double positive(const json& v, const std::string& name) {
  const double d = v.get<double>();
  if (!(d > 0.0) || !std::isfinite(d))
    throw ConfigError("config: " + name + " must be positive");
  return d;
}

Complex complex_pair(const json& v, const std::string& name) {
  if (!v.is_array() || v.size() != 2)
    throw ConfigError("config: " + name + " must be a [re, im] pair");
  return Complex(v[0].get<double>(), v[1].get<double>());
}

void parse_profile(const json& j, RunConfig& cfg) {
  require_keys(j, "profile", {"k", "h", "n_cl", "n_co_const", "n_co_table"});
  if (j.contains("k")) cfg.k = positive(j["k"], "profile.k");
  if (j.contains("h")) cfg.h = positive(j["h"], "profile.h");
  if (j.contains("n_cl")) cfg.n_cl = positive(j["n_cl"], "profile.n_cl");
  if (j.contains("n_co_const") && j.contains("n_co_table"))
    throw ConfigError("config: give n_co_const or n_co_table, not both");
  if (j.contains("n_co_const")) {
    cfg.n_co_const = positive(j["n_co_const"], "profile.n_co_const");
    cfg.n_co_table_x.clear();
    cfg.n_co_table_n.clear();
  }
  if (j.contains("n_co_table")) {
    cfg.n_co_const.reset();
    for (const auto& row : j["n_co_table"]) {
      if (!row.is_array() || row.size() != 2)
        throw ConfigError("config: n_co_table rows must be [x, n] pairs");
      cfg.n_co_table_x.push_back(row[0].get<double>());
      cfg.n_co_table_n.push_back(positive(row[1], "profile.n_co_table n"));
    }
  }
}

void parse_source(const json& j, RunConfig& cfg) {
  require_keys(j, "source",
               {"type", "points", "box", "nx", "nz", "values", "constant"});
  cfg.source_type = j.value("type", std::string("point_set"));
  if (cfg.source_type == "point_set") {
    if (!j.contains("points"))
      throw ConfigError("config: point_set source needs 'points'");
    cfg.source_points.clear();
    for (const auto& row : j["points"]) {
      if (!row.is_array() || row.size() != 4)
        throw ConfigError(
            "config: source points rows must be [x, z, re, im]");
      cfg.source_points.push_back({row[0].get<double>(), row[1].get<double>(),
                                   Complex(row[2].get<double>(),
                                           row[3].get<double>())});
    }
    if (cfg.source_points.empty())
      throw ConfigError("config: source has no points");
  } else if (cfg.source_type == "grid_density") {
    if (!j.contains("box"))
      throw ConfigError("config: grid_density source needs 'box'");
    const auto& box = j["box"];
    if (!box.is_array() || box.size() != 4)
      throw ConfigError("config: source box must be [x0, x1, z0, z1]");
    cfg.src_x0 = box[0].get<double>();
    cfg.src_x1 = box[1].get<double>();
    cfg.src_z0 = box[2].get<double>();
    cfg.src_z1 = box[3].get<double>();
    if (!(cfg.src_x0 < cfg.src_x1) || !(cfg.src_z0 < cfg.src_z1))
      throw ConfigError("config: source box must have positive extent");
    cfg.src_nx = j.value("nx", 4);
    cfg.src_nz = j.value("nz", 4);
    if (cfg.src_nx < 1 || cfg.src_nz < 1)
      throw ConfigError("config: source cell counts must be >= 1");
    if (j.contains("values") == j.contains("constant"))
      throw ConfigError(
          "config: grid_density needs exactly one of 'values'/'constant'");
    if (j.contains("constant")) {
      cfg.src_constant = complex_pair(j["constant"], "source.constant");
      cfg.src_values.clear();
    } else {
      cfg.src_constant.reset();
      const auto& vals = j["values"];
      if (!vals.is_array() ||
          vals.size() != static_cast<std::size_t>(2 * cfg.src_nx * cfg.src_nz))
        throw ConfigError(
            "config: source values must hold 2*nx*nz numbers (re, im "
            "interleaved)");
      cfg.src_values.clear();
      for (std::size_t i = 0; i + 1 < vals.size(); i += 2)
        cfg.src_values.emplace_back(vals[i].get<double>(),
                                    vals[i + 1].get<double>());
    }
  } else {
    throw ConfigError("config: unknown source type '" + cfg.source_type +
                      "'");
  }
}

void parse_axis(const json& v, const std::string& name, double& a, double& b,
                int& n) {
  if (!v.is_array() || v.size() != 3)
    throw ConfigError("config: " + name + " must be [min, max, count]");
  a = v[0].get<double>();
  b = v[1].get<double>();
  n = v[2].get<int>();
  if (!(a < b) || n < 1)
    throw ConfigError("config: " + name + " needs min < max and count >= 1");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse failure: ") + e.what());
  }
  RunConfig cfg;
  require_keys(j, "top level",
               {"profile", "ode", "mode_search", "quadrature", "green",
                "source", "grid", "radcheck", "threads", "output"});
  if (j.contains("profile")) parse_profile(j["profile"], cfg);
  if (j.contains("ode")) {
    require_keys(j["ode"], "ode", {"abs_tol", "rel_tol"});
    if (j["ode"].contains("abs_tol"))
      cfg.ode.abs_tol = positive(j["ode"]["abs_tol"], "ode.abs_tol");
    if (j["ode"].contains("rel_tol"))
      cfg.ode.rel_tol = positive(j["ode"]["rel_tol"], "ode.rel_tol");
  }
  if (j.contains("mode_search")) {
    require_keys(j["mode_search"], "mode_search",
                 {"scan_points", "root_tol"});
    cfg.mode_search.scan_points = j["mode_search"].value("scan_points", 512);
    if (cfg.mode_search.scan_points < 8)
      throw ConfigError("config: mode_search.scan_points too small");
    if (j["mode_search"].contains("root_tol"))
      cfg.mode_search.root_tol =
          positive(j["mode_search"]["root_tol"], "mode_search.root_tol");
  }
  if (j.contains("quadrature")) {
    require_keys(j["quadrature"], "quadrature", {"abs_tol", "rel_tol"});
    if (j["quadrature"].contains("abs_tol"))
      cfg.quad.abs_tol =
          positive(j["quadrature"]["abs_tol"], "quadrature.abs_tol");
    if (j["quadrature"].contains("rel_tol"))
      cfg.quad.rel_tol =
          positive(j["quadrature"]["rel_tol"], "quadrature.rel_tol");
  }
  if (j.contains("green")) {
    require_keys(j["green"], "green", {"x", "z", "xi", "zeta", "route"});
    cfg.x = j["green"].value("x", cfg.x);
    cfg.z = j["green"].value("z", cfg.z);
    cfg.xi = j["green"].value("xi", cfg.xi);
    cfg.zeta = j["green"].value("zeta", cfg.zeta);
    cfg.route = j["green"].value("route", cfg.route);
    if (cfg.route != "real" && cfg.route != "contour" && cfg.route != "both")
      throw ConfigError("config: green.route must be real, contour, or both");
  }
  if (j.contains("source")) parse_source(j["source"], cfg);
  if (j.contains("grid")) {
    require_keys(j["grid"], "grid", {"x", "z"});
    if (j["grid"].contains("x"))
      parse_axis(j["grid"]["x"], "grid.x", cfg.grid_x0, cfg.grid_x1,
                 cfg.grid_nx);
    if (j["grid"].contains("z"))
      parse_axis(j["grid"]["z"], "grid.z", cfg.grid_z0, cfg.grid_z1,
                 cfg.grid_nz);
  }
  if (j.contains("radcheck")) {
    require_keys(j["radcheck"], "radcheck",
                 {"R_values", "boundary_points", "compact_single_family"});
    if (j["radcheck"].contains("R_values")) {
      cfg.R_values.clear();
      for (const auto& v : j["radcheck"]["R_values"])
        cfg.R_values.push_back(positive(v, "radcheck.R_values"));
      if (cfg.R_values.empty())
        throw ConfigError("config: radcheck.R_values is empty");
    }
    cfg.boundary_points =
        j["radcheck"].value("boundary_points", cfg.boundary_points);
    if (cfg.boundary_points < 64)
      throw ConfigError("config: radcheck.boundary_points must be >= 64");
    cfg.compact_single_family =
        j["radcheck"].value("compact_single_family", false);
  }
  if (j.contains("threads")) {
    cfg.threads = j["threads"].get<int>();
    if (cfg.threads < 0) throw ConfigError("config: threads must be >= 0");
  }
  if (j.contains("output")) cfg.output_path = j["output"].get<std::string>();

  cfg.quad.ode = cfg.ode;
  cfg.mode_search.ode = cfg.ode;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

WaveguideProfile config_profile(const RunConfig& cfg) {
  CoreIndexSpec core;
  if (cfg.n_co_const) {
    core.constant = *cfg.n_co_const;
  } else {
    core.table_x = cfg.n_co_table_x;
    core.table_n = cfg.n_co_table_n;
  }
  return WaveguideProfile(cfg.k, cfg.h, cfg.n_cl, core);
}

SourceSpec config_source(const RunConfig& cfg) {
  SourceSpec src;
  if (cfg.source_type == "point_set") {
    src.kind = SourceKind::PointSet;
    src.points = cfg.source_points;
    src.x0 = src.x1 = src.points[0].x;
    src.z0 = src.z1 = src.points[0].z;
    for (const auto& p : src.points) {
      src.x0 = std::min(src.x0, p.x);
      src.x1 = std::max(src.x1, p.x);
      src.z0 = std::min(src.z0, p.z);
      src.z1 = std::max(src.z1, p.z);
    }
  } else {
    src.kind = SourceKind::GridDensity;
    src.nx = cfg.src_nx;
    src.nz = cfg.src_nz;
    src.x0 = cfg.src_x0;
    src.x1 = cfg.src_x1;
    src.z0 = cfg.src_z0;
    src.z1 = cfg.src_z1;
    if (cfg.src_constant) {
      src.density.assign(
          static_cast<std::size_t>(cfg.src_nx) * cfg.src_nz, *cfg.src_constant);
    } else {
      src.density = cfg.src_values;
    }
  }
  validate_source(src);
  return src;
}

std::vector<double> uniform_axis(double a, double b, int n) {
  std::vector<double> nodes;
  if (n == 1) {
    nodes.push_back(0.5 * (a + b));
    return nodes;
  }
  for (int i = 0; i < n; ++i)
    nodes.push_back(a + (b - a) * i / (n - 1));
  return nodes;
}

}  // namespace owg
