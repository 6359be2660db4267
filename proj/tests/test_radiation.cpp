#include <cmath>
#include <vector>

#include "core/radiation.hpp"
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

constexpr double kKappa1 = 0.7928478695933245;

// Outgoing free-space cylindrical wave H0(rho)/4i centered at the origin.
FieldEvaluator hankel_evaluator(bool conjugated) {
  return [conjugated](double x, double z) {
    const double rho = std::hypot(x, z);
    FieldSample f;
    f.u = hankel_h0(rho) / (4.0 * kI);
    const Complex radial = -hankel_h1(rho) / (4.0 * kI);
    f.ux = radial * (x / rho);
    f.uz = radial * (z / rho);
    if (conjugated) {
      f.u = std::conj(f.u);
      f.ux = std::conj(f.ux);
      f.uz = std::conj(f.uz);
    }
    return f;
  };
}

}  // namespace

TEST_CASE("boundary sampling reproduces the level-set geometry") {
  const auto stadium = boundary_sample(BoundaryFamily::OmegaStadium, 10.0,
                                       1.0, 256);
  double total = 0.0;
  for (int i = 0; i < stadium.size(); ++i) {
    total += stadium.w[i];
    // Level-set equation [x]_h^2 + z^2 = R^2.
    const double ax = std::abs(stadium.x[i]);
    const double bracket = ax > 1.0 ? (ax - 1.0) : 0.0;
    CHECK(std::abs(bracket * bracket + stadium.z[i] * stadium.z[i] - 100.0) <
          1e-12 * 100.0);
    // Unit outward normals.
    const double nn = std::hypot(stadium.nx[i], stadium.nz[i]);
    CHECK(std::abs(nn - 1.0) < 1e-14);
    const double cx = stadium.x[i] > 1.0 ? 1.0
                      : (stadium.x[i] < -1.0 ? -1.0 : stadium.x[i]);
    CHECK(stadium.nx[i] * (stadium.x[i] - cx) +
              stadium.nz[i] * stadium.z[i] >=
          0.0);
  }
  CHECK(total == doctest::Approx(2.0 * kPi * 10.0 + 4.0).epsilon(1e-10));

  const auto square = boundary_sample(BoundaryFamily::QSquare, 10.0, 1.0, 256);
  total = 0.0;
  for (int i = 0; i < square.size(); ++i) {
    total += square.w[i];
    const bool on_face = std::abs(std::abs(square.x[i]) - 10.0) < 1e-12 ||
                         std::abs(std::abs(square.z[i]) - 10.0) < 1e-12;
    CHECK(on_face);
  }
  CHECK(total == doctest::Approx(80.0).epsilon(1e-10));

  // h = 0 degenerates to the circle of radius R.
  const auto circle =
      boundary_sample(BoundaryFamily::OmegaStadium, 10.0, 0.0, 128);
  total = 0.0;
  for (int i = 0; i < circle.size(); ++i) {
    total += circle.w[i];
    CHECK(std::hypot(circle.x[i], circle.z[i]) ==
          doctest::Approx(10.0).epsilon(1e-13));
  }
  CHECK(total == doctest::Approx(20.0 * kPi).epsilon(1e-10));

  CHECK_THROWS_AS(boundary_sample(BoundaryFamily::QSquare, -1.0, 1.0, 128),
                  ConfigError);
  CHECK_THROWS_AS(boundary_sample(BoundaryFamily::QSquare, 1.0, 1.0, 32),
                  ConfigError);
}

TEST_CASE("decay-rate fitting on synthetic data") {
  const std::vector<double> R = {10.0, 20.0, 40.0, 80.0, 160.0};
  std::vector<double> pow_vals, exp_vals;
  for (double r : R) {
    pow_vals.push_back(0.7 * std::pow(r, -1.5));
    exp_vals.push_back(3.0 * std::exp(-1.585 * r));
  }
  const auto pf = decay_slope(R, pow_vals);
  CHECK(pf.slope == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(pf.rms < 1e-12);
  const auto ef = decay_slope(R, exp_vals, FitMode::Exponential);
  CHECK(ef.slope == doctest::Approx(-1.585).epsilon(1e-12));

  CHECK_THROWS_AS(decay_slope({1, 2, 3, 4}, {1, 1, 1, 1}), ConfigError);
  CHECK_THROWS_AS(decay_slope(R, {1, 1, 0, 1, 1}), ConfigError);
}

TEST_CASE("flux of the outgoing free-space wave is conserved") {
  const auto field = hankel_evaluator(false);
  const auto inner = boundary_sample(BoundaryFamily::OmegaStadium, 5.0, 0.0,
                                     256);
  const auto outer = boundary_sample(BoundaryFamily::OmegaStadium, 15.0, 0.0,
                                     256);
  const auto rep = flux_balance(field, inner, outer);
  CHECK(rep.flux1 > 0.0);  // outgoing energy
  CHECK(rep.rel_diff <= 1e-6);

  // Zero field: both fluxes vanish.
  const auto zero_rep = flux_balance(
      [](double, double) { return FieldSample{}; }, inner, outer);
  CHECK(zero_rep.flux1 == 0.0);
  CHECK(zero_rep.flux2 == 0.0);
}

TEST_CASE("classical condition discriminates outgoing from incoming") {
  // Dyadic R windows; the outgoing residual integrand decays like R^{-2},
  // so window increments shrink geometrically and the far tail drops below
  // 1e-6; the conjugated (incoming) wave gives non-decreasing increments.
  std::vector<double> Rs;
  for (int m = 0; m <= 14; ++m) Rs.push_back(5.0 * std::pow(2.0, m));
  const auto out =
      rellich_reduction_check(p_free(), no_modes(), hankel_evaluator(false),
                              Rs, 128);
  REQUIRE(out.cumulative.size() == Rs.size());
  double prev_inc = -1.0;
  for (std::size_t i = 1; i < Rs.size(); ++i) {
    const double inc = out.cumulative[i] - out.cumulative[i - 1];
    CHECK(inc >= 0.0);
    if (prev_inc > 0.0) CHECK(inc <= 0.6 * prev_inc);
    prev_inc = inc;
  }
  CHECK(prev_inc < 1e-6);  // Cauchy tail of the R-integral

  const auto in =
      rellich_reduction_check(p_free(), no_modes(), hankel_evaluator(true),
                              Rs, 128);
  for (std::size_t i = 2; i < Rs.size(); ++i) {
    const double inc = in.cumulative[i] - in.cumulative[i - 1];
    const double inc_prev = in.cumulative[i - 1] - in.cumulative[i - 2];
    CHECK(inc >= 0.99 * inc_prev);  // non-decreasing growth: divergent
  }

  CHECK_THROWS_AS(rellich_reduction_check(p0(), p0_modes(),
                                          hankel_evaluator(false), Rs, 128),
                  ConfigError);
}

TEST_CASE("guided component residuals on the square boundary") {
  const auto src = make_point_source(0.0, 0.0);
  const auto u1 = guided_component_evaluator(p0(), p0_modes(), 1, src);

  // z faces: d/dnu = +-d/dz and the component is exactly outgoing there.
  const auto b30 = boundary_sample(BoundaryFamily::QSquare, 30.0, 1.0, 256);
  CHECK(radiation_residual(u1, p0_modes().modes[0].beta, b30, 2).integral ==
        0.0);
  CHECK(radiation_residual(u1, p0_modes().modes[0].beta, b30, 3).integral ==
        0.0);

  // x faces: the squared residual integral decays like e^{-2 kappa R} (times
  // the 2R face length, which shifts the fitted slope by ~1/R).
  const std::vector<double> Rs = {30.0, 40.0, 50.0, 60.0, 70.0};
  std::vector<double> face;
  for (double R : Rs) {
    const auto b = boundary_sample(BoundaryFamily::QSquare, R, 1.0, 256);
    const double beta = p0_modes().modes[0].beta;
    face.push_back(radiation_residual(u1, beta, b, 0).integral +
                   radiation_residual(u1, beta, b, 1).integral);
  }
  const auto fit = decay_slope(Rs, face, FitMode::Exponential);
  CHECK(fit.slope == doctest::Approx(-2.0 * kKappa1).epsilon(0.03));
}

TEST_CASE("radiative component satisfies the stadium rate") {
  const auto src = make_point_source(0.0, 0.0);
  const auto u0 = radiative_component_evaluator(p0(), p0_modes(), src);
  const std::vector<double> Rs = {25.0, 42.0, 71.0, 119.0, 200.0};
  std::vector<double> sups;
  for (double R : Rs) {
    const auto b = boundary_sample(BoundaryFamily::OmegaStadium, R, 1.0, 64);
    sups.push_back(radiation_residual(u0, p0().beta0(), b).sup);
  }
  const auto fit = decay_slope(Rs, sups);
  CHECK(fit.slope == doctest::Approx(-1.5).epsilon(0.1));
}

TEST_CASE("flux balance for the full waveguide field") {
  const auto src = make_point_source(0.0, 0.0);
  const auto u1 = guided_component_evaluator(p0(), p0_modes(), 1, src);
  const auto u0 = radiative_component_evaluator(p0(), p0_modes(), src);
  const FieldEvaluator total = [&](double x, double z) {
    const FieldSample a = u1(x, z), b = u0(x, z);
    return FieldSample{a.u + b.u, a.ux + b.ux, a.uz + b.uz};
  };
  const auto inner = boundary_sample(BoundaryFamily::OmegaStadium, 10.0, 1.0,
                                     256);
  const auto outer = boundary_sample(BoundaryFamily::OmegaStadium, 20.0, 1.0,
                                     256);
  const auto rep = flux_balance(total, inner, outer);
  CHECK(rep.flux1 > 0.0);
  CHECK(rep.rel_diff <= 1e-3);
}

TEST_CASE("continuous spectrum is orthogonal to the guided mode") {
  const double d2 = p0().d2();
  CHECK(orthogonality_defect(p0(), p0_modes(), 1, Parity::Symmetric, d2 + 1.0)
        <= 1e-8);
  CHECK(orthogonality_defect(p0(), p0_modes(), 1, Parity::Symmetric, d2 + 25.0)
        <= 1e-8);
  // Opposite parity: the integrand is odd, zero to machine precision.
  CHECK(orthogonality_defect(p0(), p0_modes(), 1, Parity::Antisymmetric,
                             d2 + 7.0) <= 1e-13);
  CHECK(orthogonality_defect(p0(), p0_modes(), 1, d2 + 50.0) <= 1e-8);
  // A wider numeric window must agree (tails handled consistently).
  CHECK(orthogonality_defect(p0(), p0_modes(), 1, d2 + 4.0, 3.0) <= 1e-8);

  CHECK_THROWS_AS(orthogonality_defect(p0(), p0_modes(), 2, d2 + 1.0),
                  ConfigError);
  CHECK_THROWS_AS(orthogonality_defect(p0(), p0_modes(), 1, d2 - 0.1),
                  ConfigError);
}

TEST_CASE("aggregated radiation report") {
  const auto src = make_point_source(0.0, 0.0);
  const std::vector<double> Rs = {10.0, 15.0};
  const auto rep = radiation_report(p0(), p0_modes(), src, Rs, 64);
  REQUIRE(rep.residuals.size() == 2);
  REQUIRE(rep.residuals[0].size() == 2);  // u_0 and one guided component
  for (const auto& row : rep.residuals)
    for (double v : row) CHECK(v >= 0.0);
  for (std::size_t l = 0; l < 2; ++l)
    CHECK(rep.cumulative[1][l] >= rep.cumulative[0][l]);
  CHECK(rep.slopes.size() == 2);  // NaN here: too few R values for a fit
}
