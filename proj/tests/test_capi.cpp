// Round-trip tests of the C API: status codes, error reporting, and the
// shape of every emitted artifact.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "owg.h"

namespace {

struct CtxDeleter {
  void operator()(owg_context* c) const { owg_destroy(c); }
};
using CtxPtr = std::unique_ptr<owg_context, CtxDeleter>;

struct StrDeleter {
  void operator()(char* s) const { owg_free_string(s); }
};
using StrPtr = std::unique_ptr<char, StrDeleter>;

CtxPtr make_ctx(const char* config_json = nullptr) {
  owg_context* raw = nullptr;
  REQUIRE(owg_create(config_json, &raw) == 0);
  return CtxPtr(raw);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("context lifecycle and mode table") {
  auto ctx = make_ctx();
  CHECK(std::string(owg_last_error(ctx.get())).empty());

  char* out = nullptr;
  REQUIRE(owg_modes_json(ctx.get(), &out) == 0);
  StrPtr guard(out);
  const auto j = nlohmann::json::parse(out);
  CHECK(j.at("k").get<double>() == 1.0);
  CHECK(j.at("h").get<double>() == 1.0);
  CHECK(j.at("d2").get<double>() == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(j.at("beta0").get<double>() == 1.0);
  REQUIRE(j.at("M").get<int>() == 1);
  const auto& m = j.at("modes").at(0);
  CHECK(m.at("gamma").get<double>() ==
        doctest::Approx(0.6213922556813267).epsilon(1e-10));
  CHECK(m.at("beta").get<double>() ==
        doctest::Approx(1.2761691675944351).epsilon(1e-10));
  CHECK(m.at("parity").get<std::string>() == "s");
}

TEST_CASE("creation failures report through the null-context channel") {
  owg_context* raw = nullptr;
  // Not-JSON text is a config error.
  CHECK(owg_create("not json", &raw) == 1);
  CHECK(raw == nullptr);
  CHECK(std::string(owg_last_error(nullptr)).find("parse failure") !=
        std::string::npos);

  // Unknown keys are rejected per block.
  CHECK(owg_create("{\"bogus\": 1}", &raw) == 1);
  CHECK(std::string(owg_last_error(nullptr)).find("bogus") !=
        std::string::npos);
  CHECK(owg_create("{\"profile\": {\"k\": -2}}", &raw) == 1);

  // A successful create clears the stale diagnostic.
  auto ctx = make_ctx("{}");
  CHECK(std::string(owg_last_error(nullptr)).empty());

  // Null out-parameters are a caller error, not a crash.
  CHECK(owg_create("{}", nullptr) == 1);
  owg_free_string(nullptr);
}

TEST_CASE("green evaluation routes and error classes") {
  auto ctx = make_ctx();
  char* out = nullptr;
  REQUIRE(owg_green_eval(ctx.get(), 0.4, 9.0, 0.2, 0.0, "both", &out) == 0);
  StrPtr guard(out);
  const auto j = nlohmann::json::parse(out);
  CHECK(j.at("route").get<std::string>() == "both");
  CHECK(j.at("route_difference").get<double>() < 1e-9);
  // total = sum of guided terms + radiative part.
  double re = j.at("radiative_re").get<double>();
  double im = j.at("radiative_im").get<double>();
  for (const auto& g : j.at("guided")) {
    re += g.at(0).get<double>();
    im += g.at(1).get<double>();
  }
  CHECK(std::abs(re - j.at("total_re").get<double>()) < 1e-14);
  CHECK(std::abs(im - j.at("total_im").get<double>()) < 1e-14);

  char* bad = nullptr;
  CHECK(owg_green_eval(ctx.get(), 0.4, 9.0, 0.2, 0.0, "sideways", &bad) == 1);
  CHECK(std::string(owg_last_error(ctx.get())).find("route") !=
        std::string::npos);

  // Coincidence with the source node is a numerical-domain failure.
  CHECK(owg_green_eval(ctx.get(), 0.2, 0.0, 0.2, 0.0, "real", &bad) == 2);
  CHECK(std::string(owg_last_error(ctx.get())).find("coincides") !=
        std::string::npos);

  // The next successful call clears the diagnostic.
  REQUIRE(owg_green_eval(ctx.get(), 0.4, 9.0, 0.2, 0.0, "contour", &bad) ==
          0);
  StrPtr guard2(bad);
  CHECK(std::string(owg_last_error(ctx.get())).empty());
}

TEST_CASE("field synthesis artifact shape") {
  // Small grid away from the default point source at the origin.
  auto ctx = make_ctx(
      "{\"grid\": {\"x\": [-2, 2, 3], \"z\": [6, 10, 2]}}");
  char* out = nullptr;
  REQUIRE(owg_field_csv(ctx.get(), &out) == 0);
  StrPtr guard(out);
  const auto lines = split_lines(out);
  REQUIRE(lines.size() == 1 + 3 * 2);
  CHECK(lines[0] == "x,z,re_u,im_u,re_u0,im_u0,re_u1,im_u1");
  CHECK(lines[1].rfind("-2,6,", 0) == 0);
  CHECK(lines.back().rfind("2,10,", 0) == 0);

  // A grid node on the source is refused with the numeric status.
  auto clash = make_ctx("{\"grid\": {\"x\": [0, 1, 2], \"z\": [0, 1, 2]}}");
  char* bad = nullptr;
  CHECK(owg_field_csv(clash.get(), &bad) == 2);
}

TEST_CASE("radcheck artifacts") {
  auto ctx = make_ctx(
      "{\"radcheck\": {\"R_values\": [6, 9], \"boundary_points\": 64}}");
  char* csv = nullptr;
  char* json = nullptr;
  REQUIRE(owg_radcheck(ctx.get(), &csv, &json) == 0);
  StrPtr guard_csv(csv), guard_json(json);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("R,residual_0", 0) == 0);
  CHECK(lines[1].rfind("6,", 0) == 0);
  CHECK(lines[2].rfind("9,", 0) == 0);
  const auto j = nlohmann::json::parse(json);
  CHECK(j.contains("slopes"));
  CHECK(j.contains("cauchy_ratios"));

  // Either artifact may be omitted.
  CHECK(owg_radcheck(ctx.get(), nullptr, nullptr) == 0);
}

TEST_CASE("contour dump") {
  auto ctx = make_ctx();
  char* out = nullptr;
  REQUIRE(owg_contour_csv(ctx.get(), 0.7, &out) == 0);
  StrPtr guard(out);
  const auto lines = split_lines(out);
  CHECK(lines[0] == "segment,re_t,im_t,re_weight,im_weight");
  CHECK(lines.size() > 1);

  char* bad = nullptr;
  CHECK(owg_contour_csv(ctx.get(), -0.3, &bad) != 0);
  CHECK(!std::string(owg_last_error(ctx.get())).empty());
}
