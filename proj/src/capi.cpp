#include "owg.h"

#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/emit.hpp"
#include "core/field.hpp"
#include "core/green.hpp"
#include "core/modes.hpp"
#include "core/radiation.hpp"
#include "core/verify.hpp"

struct owg_context {
  owg::RunConfig cfg;
  owg::WaveguideProfile profile;
  owg::ModeTable modes;
  std::string last_error;

  owg_context(owg::RunConfig c)
      : cfg(std::move(c)), profile(owg::config_profile(cfg)) {}
};

namespace {

// Holds the diagnostic when owg_create fails before a context exists.
std::string& create_error() {
  static thread_local std::string err;
  return err;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps exceptions to status codes; ConfigError -> 1, everything else -> 2.
int run_guarded(owg_context* ctx, const std::function<void()>& body) {
  if (!ctx) return 1;
  ctx->last_error.clear();
  try {
    body();
    return 0;
  } catch (const owg::ConfigError& e) {
    ctx->last_error = e.what();
    return 1;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return 2;
  }
}

}  // namespace

extern "C" {

int owg_create(const char* config_json, owg_context** out_ctx) {
  if (!out_ctx) return 1;
  *out_ctx = nullptr;
  create_error().clear();
  try {
    owg::RunConfig cfg;
    if (config_json && config_json[0] != '\0')
      cfg = owg::parse_config(config_json);
    auto* ctx = new owg_context(std::move(cfg));
    ctx->modes = owg::find_guided_modes(ctx->profile, ctx->cfg.mode_search);
    *out_ctx = ctx;
    return 0;
  } catch (const owg::ConfigError& e) {
    create_error() = e.what();
    return 1;
  } catch (const std::exception& e) {
    create_error() = e.what();
    return 2;
  }
}

void owg_destroy(owg_context* ctx) { delete ctx; }

const char* owg_last_error(const owg_context* ctx) {
  return ctx ? ctx->last_error.c_str() : create_error().c_str();
}

void owg_free_string(char* s) { delete[] s; }

int owg_modes_json(owg_context* ctx, char** out_json) {
  if (!out_json) return 1;
  return run_guarded(ctx, [&] {
    *out_json = dup_string(owg::emit_modes_json(ctx->profile, ctx->modes));
  });
}

int owg_green_eval(owg_context* ctx, double x, double z, double xi,
                   double zeta, const char* route, char** out_json) {
  if (!out_json) return 1;
  return run_guarded(ctx, [&] {
    owg::RunConfig cfg = ctx->cfg;
    cfg.x = x;
    cfg.z = z;
    cfg.xi = xi;
    cfg.zeta = zeta;
    if (route && route[0] != '\0') cfg.route = route;
    if (cfg.route != "real" && cfg.route != "contour" && cfg.route != "both")
      throw owg::ConfigError("green: route must be real, contour, or both");
    *out_json =
        dup_string(owg::emit_green_json(ctx->profile, ctx->modes, cfg));
  });
}

int owg_field_csv(owg_context* ctx, char** out_csv) {
  if (!out_csv) return 1;
  return run_guarded(ctx, [&] {
    const owg::SourceSpec src = owg::config_source(ctx->cfg);
    const auto field = owg::synthesize_field(
        ctx->profile, ctx->modes, src,
        owg::uniform_axis(ctx->cfg.grid_x0, ctx->cfg.grid_x1,
                          ctx->cfg.grid_nx),
        owg::uniform_axis(ctx->cfg.grid_z0, ctx->cfg.grid_z1,
                          ctx->cfg.grid_nz),
        ctx->cfg.quad);
    *out_csv = dup_string(owg::emit_field_csv(field));
  });
}

int owg_radcheck(owg_context* ctx, char** out_csv, char** out_json) {
  return run_guarded(ctx, [&] {
    const owg::SourceSpec src = owg::config_source(ctx->cfg);
    const auto report = owg::radiation_report(
        ctx->profile, ctx->modes, src, ctx->cfg.R_values,
        ctx->cfg.boundary_points, ctx->cfg.compact_single_family,
        ctx->cfg.quad);
    if (out_csv) *out_csv = dup_string(owg::emit_radcheck_csv(report));
    if (out_json) *out_json = dup_string(owg::emit_radcheck_json(report));
  });
}

int owg_contour_csv(owg_context* ctx, double theta, char** out_csv) {
  if (!out_csv) return 1;
  return run_guarded(ctx, [&] {
    *out_csv =
        dup_string(owg::emit_contour_csv(ctx->profile, ctx->modes, theta));
  });
}

int owg_verify_json(owg_context* ctx, char** out_json) {
  if (!out_json) return 1;
  return run_guarded(ctx, [&] {
    *out_json = dup_string(owg::verify_json(owg::run_acceptance(ctx->cfg)));
  });
}

}  // extern "C"
