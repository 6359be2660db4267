#include <cmath>
#include <vector>

#include "core/field.hpp"
#include "core/quadrature.hpp"
#include "core/special.hpp"
#include "doctest.h"

using namespace owg;

namespace {

const WaveguideProfile& p0() {
  static WaveguideProfile p = make_constant_profile(1.0, 1.0, 1.0, 1.5);
  return p;
}

const ModeTable& p0_modes() {
  static ModeTable m = find_guided_modes(p0());
  return m;
}

const WaveguideProfile& p_free() {
  static WaveguideProfile p = make_constant_profile(1.0, 1.0, 1.0, 1.0);
  return p;
}

const ModeTable& no_modes() {
  static ModeTable m;
  return m;
}

constexpr double kBeta1 = 1.2761691675944351;
constexpr double kE0 = 0.6650023990277569;

}  // namespace

TEST_CASE("free-space point source reproduces the Hankel field") {
  const auto src = make_point_source(0.0, 0.0);
  const auto field =
      synthesize_field(p_free(), no_modes(), src, {3.0}, {4.0});
  const Complex exact = hankel_h0(5.0) / (4.0 * kI);
  CHECK(std::abs(field.u[0] - exact) < 1e-6);
  CHECK(field.u_guided.empty());
  CHECK(std::abs(field.u_rest[0] - field.u[0]) == 0.0);
  const auto u0 = remainder_component(field);
  CHECK(u0[0] == field.u[0]);  // no modes: u_0 = u identically
}

TEST_CASE("guided dominance and closure for a P0 point source") {
  const auto src = make_point_source(0.0, 0.0);
  const auto field =
      synthesize_field(p0(), p0_modes(), src, {0.0}, {20.0, 25.0});
  REQUIRE(field.u_guided.size() == 1);
  // Closed-form guided term at (0, 20).
  const Complex u1 =
      kE0 * kE0 * std::exp(kI * kBeta1 * 20.0) / (2.0 * kI * kBeta1);
  CHECK(std::abs(field.u_guided[0][field.index(0, 0)] - u1) < 1e-9);
  CHECK(std::abs(u1) == doctest::Approx(kE0 * kE0 / (2.0 * kBeta1))
                            .epsilon(1e-12));
  // The guided part dominates far down the guide.
  CHECK(std::abs(field.u[field.index(0, 0)] - u1) < 0.05 * std::abs(u1));
  // Closure u = sum u_l + u_0 holds to machine precision.
  const auto u0 = remainder_component(field);
  for (std::size_t i = 0; i < field.u.size(); ++i)
    CHECK(std::abs(u0[i] - field.u_rest[i]) < 1e-15);
}

TEST_CASE("on-axis remainder decay of a point-source field") {
  // The guided term carries the on-axis far field; the remainder decays at
  // the band-edge-suppressed rate R^{-3/2} (the generic off-axis rate is
  // R^{-1/2}; see the radiative-decay test of the Green routes).
  const auto src = make_point_source(0.0, 0.0);
  std::vector<double> lz, lr;
  const auto field = synthesize_field(p0(), p0_modes(), src, {0.0},
                                      {25.0, 50.0, 100.0, 200.0});
  const auto u0 = remainder_component(field);
  for (std::size_t j = 0; j < field.z_nodes.size(); ++j) {
    lz.push_back(std::log(field.z_nodes[j]));
    lr.push_back(std::log(std::abs(u0[field.index(0, static_cast<int>(j))])));
  }
  CHECK(fit_line(lz, lr).slope == doctest::Approx(-1.5).epsilon(0.07));
}

TEST_CASE("odd source excites no symmetric mode") {
  const auto src = make_grid_density(
      [](double xi, double) { return Complex(xi, 0.0); }, -0.5, 0.5, -0.5,
      0.5, 8, 8);
  const auto g = guided_component_source(p0(), p0_modes(), 1, src, 7.0, {0.0});
  CHECK(std::abs(g.U) < 1e-14);
  CHECK(std::abs(g.u_l[0]) < 1e-14);
}

TEST_CASE("guided component routes A and B agree") {
  const auto src = make_point_source(0.2, 0.0, Complex(0.8, 0.3));
  const double z = 10.0;
  std::vector<double> xs;
  std::vector<Complex> us;
  // Wide line: beyond |x| = 18 the overlap of the radiative part against
  // the mode tail (which the analytic tail correction cannot see) is below
  // 1e-7 relative; step 0.05 keeps the composite-rule error comparable.
  for (int i = 0; i <= 720; ++i) {
    const double x = -18.0 + 0.05 * i;
    xs.push_back(x);
    us.push_back(
        green_total(p0(), p0_modes(), x, z, 0.2, 0.0).total *
        Complex(0.8, 0.3));
  }
  const Complex ua = guided_overlap_line(p0(), p0_modes(), 1, xs, us);
  const auto ub = guided_component_source(p0(), p0_modes(), 1, src, z, {});
  CHECK(std::abs(ua - ub.U) <= 1e-6 * std::abs(ub.U));
}

TEST_CASE("synthesis is linear in the source") {
  const auto sa = make_point_source(0.0, 0.0, Complex(1.0, 0.0));
  const auto sb = make_point_source(0.4, 0.3, Complex(0.0, 2.0));
  SourceSpec both = sa;
  both.points.push_back(sb.points[0]);
  both.x1 = 0.4;
  both.z1 = 0.3;
  const std::vector<double> xs = {1.3}, zs = {6.0};
  const auto fa = synthesize_field(p0(), p0_modes(), sa, xs, zs);
  const auto fb = synthesize_field(p0(), p0_modes(), sb, xs, zs);
  const auto fc = synthesize_field(p0(), p0_modes(), both, xs, zs);
  CHECK(std::abs(fc.u[0] - fa.u[0] - fb.u[0]) < 1e-10);
}

TEST_CASE("discrete Helmholtz residual of a synthesized field") {
  const auto src = make_point_source(0.0, 0.0);
  // 7x7 patch, spacing 0.01, centered inside the core away from x = +-h.
  std::vector<double> xs, zs;
  for (int i = -3; i <= 3; ++i) {
    xs.push_back(0.35 + 0.01 * i);
    zs.push_back(6.0 + 0.01 * i);
  }
  const auto field = synthesize_field(p0(), p0_modes(), src, xs, zs);
  const auto rep = pde_residual(p0(), field, src);
  CHECK(rep.nodes_checked == 25);
  CHECK(rep.max_residual <= 5e-3 * rep.scale);

  // Zero source, zero field: residual identically zero.
  FieldGrid zero;
  zero.x_nodes = xs;
  zero.z_nodes = zs;
  zero.u.assign(xs.size() * zs.size(), Complex(0.0, 0.0));
  SourceSpec empty;
  empty.kind = SourceKind::PointSet;
  CHECK(pde_residual(p0(), zero, empty).max_residual == 0.0);

  // Coarse grids are rejected.
  FieldGrid coarse;
  coarse.x_nodes = {0.0, 0.1, 0.2};
  coarse.z_nodes = {5.0, 5.1, 5.2};
  coarse.u.assign(9, Complex(0.0, 0.0));
  CHECK_THROWS_AS(pde_residual(p0(), coarse, empty), ConfigError);
}

TEST_CASE("field error conditions") {
  const auto src = make_point_source(0.0, 0.0);
  CHECK_THROWS_AS(synthesize_field(p0(), p0_modes(), src, {1e-5}, {0.0}),
                  NumericError);
  CHECK_THROWS_AS(
      guided_component_source(p0(), p0_modes(), 2, src, 5.0, {}),
      ConfigError);
  CHECK_THROWS_AS(
      guided_component_source(p_free(), no_modes(), 1, src, 5.0, {}),
      ConfigError);
  SourceSpec bad = src;
  bad.x1 = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_source(bad), ConfigError);
}
