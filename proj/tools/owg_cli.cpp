// Command-line front end; talks to the library exclusively through the C
// API in owg.h.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "owg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

struct CtxDeleter {
  void operator()(owg_context* c) const { owg_destroy(c); }
};
using CtxPtr = std::unique_ptr<owg_context, CtxDeleter>;

struct StrDeleter {
  void operator()(char* s) const { owg_free_string(s); }
};
using StrPtr = std::unique_ptr<char, StrDeleter>;

int report_failure(int status, const owg_context* ctx,
                   const std::string& what) {
  std::cerr << "error (" << what << "): " << owg_last_error(ctx) << "\n";
  return status;
}

int write_artifact(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitConfig;
  }
  out << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral Green's function for a 2-D open step-index waveguide: "
      "guided modes, field synthesis, and radiation-condition checks."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  if (const char* env = std::getenv("OWG_CONFIG")) config_path = env;
  app.add_option("--config", config_path,
                 "JSON config file (default: $OWG_CONFIG)");
  std::string output_path;
  app.add_option("--output", output_path,
                 "write the artifact here instead of stdout");
  int threads = -1;
  app.add_option("--threads", threads, "cap worker threads");

  auto* modes_cmd = app.add_subcommand("modes", "emit the mode table (JSON)");

  auto* green_cmd =
      app.add_subcommand("green", "evaluate G(x,z;xi,zeta) (JSON)");
  double gx = 0.0, gz = 10.0, gxi = 0.0, gzeta = 0.0;
  std::string route = "contour";
  green_cmd->add_option("--x", gx, "observation x (default 0)");
  green_cmd->add_option("--z", gz, "observation z (default 10)");
  green_cmd->add_option("--xi", gxi, "source x (default 0)");
  green_cmd->add_option("--zeta", gzeta, "source z (default 0)");
  green_cmd->add_option("--route", route,
                        "radiative-part route: real|contour|both");

  auto* field_cmd = app.add_subcommand(
      "field", "synthesize the configured source on the grid (CSV)");
  auto* radcheck_cmd = app.add_subcommand(
      "radcheck", "radiation-condition residual report (CSV + JSON)");
  auto* verify_cmd =
      app.add_subcommand("verify", "run the acceptance suite");
  auto* contour_cmd = app.add_subcommand(
      "debug-contour", "dump the deformed spectral contour (CSV)");
  double theta = 0.0;
  contour_cmd->add_option("--theta", theta,
                          "observation angle in [0, pi/2] (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Fold CLI11's exit-code zoo into the documented config-error code.
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  // Load the config document; flag overrides are folded into the JSON so
  // the library sees one authoritative document.
  nlohmann::json cfg = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config '" << config_path << "'\n";
      return kExitConfig;
    }
    try {
      in >> cfg;
    } catch (const std::exception& e) {
      std::cerr << "error: config parse failure: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  if (threads >= 0) cfg["threads"] = threads;
  if (green_cmd->parsed()) {
    cfg["green"]["x"] = gx;
    cfg["green"]["z"] = gz;
    cfg["green"]["xi"] = gxi;
    cfg["green"]["zeta"] = gzeta;
    cfg["green"]["route"] = route;
  }
  if (output_path.empty() && cfg.contains("output"))
    output_path = cfg["output"].get<std::string>();
  cfg.erase("output");

  owg_context* raw = nullptr;
  const int create_status = owg_create(cfg.dump().c_str(), &raw);
  CtxPtr ctx(raw);
  if (create_status != 0)
    return report_failure(create_status, ctx.get(), "create");

  if (modes_cmd->parsed()) {
    char* out = nullptr;
    const int status = owg_modes_json(ctx.get(), &out);
    StrPtr guard(out);
    if (status != 0) return report_failure(status, ctx.get(), "modes");
    return write_artifact(out, output_path);
  }

  if (green_cmd->parsed()) {
    char* out = nullptr;
    const int status =
        owg_green_eval(ctx.get(), gx, gz, gxi, gzeta, route.c_str(), &out);
    StrPtr guard(out);
    if (status != 0) return report_failure(status, ctx.get(), "green");
    return write_artifact(out, output_path);
  }

  if (field_cmd->parsed()) {
    char* out = nullptr;
    const int status = owg_field_csv(ctx.get(), &out);
    StrPtr guard(out);
    if (status != 0) return report_failure(status, ctx.get(), "field");
    return write_artifact(out, output_path);
  }

  if (radcheck_cmd->parsed()) {
    char* csv = nullptr;
    char* json = nullptr;
    const int status = owg_radcheck(ctx.get(), &csv, &json);
    StrPtr guard_csv(csv), guard_json(json);
    if (status != 0) return report_failure(status, ctx.get(), "radcheck");
    if (output_path.empty()) {
      std::cout << csv << json;
      return kExitOk;
    }
    const int rc = write_artifact(csv, output_path);
    if (rc != kExitOk) return rc;
    return write_artifact(json, output_path + ".json");
  }

  if (contour_cmd->parsed()) {
    char* out = nullptr;
    const int status = owg_contour_csv(ctx.get(), theta, &out);
    StrPtr guard(out);
    if (status != 0)
      return report_failure(status, ctx.get(), "debug-contour");
    return write_artifact(out, output_path);
  }

  // verify
  char* out = nullptr;
  const int status = owg_verify_json(ctx.get(), &out);
  StrPtr guard(out);
  if (status != 0) return report_failure(status, ctx.get(), "verify");
  bool all_passed = false;
  try {
    const auto report = nlohmann::json::parse(out);
    all_passed = report.at("all_passed").get<bool>();
    for (const auto& check : report.at("checks")) {
      const std::string s = check.at("status").get<std::string>();
      std::cout << (s == "pass" ? "[PASS] " : s == "skipped" ? "[SKIP] "
                                                             : "[FAIL] ")
                << check.at("name").get<std::string>() << ": "
                << check.at("detail").get<std::string>() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: malformed verify report: " << e.what() << "\n";
    return kExitNumeric;
  }
  if (!output_path.empty()) {
    const int rc = write_artifact(out, output_path);
    if (rc != kExitOk) return rc;
  }
  std::cout << (all_passed ? "ALL CHECKS PASSED" : "FAILURES PRESENT")
            << "\n";
  if (verify_cmd->parsed() && !all_passed) return kExitNumeric;
  return kExitOk;
}
