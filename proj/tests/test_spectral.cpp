#include "doctest.h"

#include <cmath>
#include <complex>

#include "core/modes.hpp"
#include "core/spectral.hpp"

using namespace owg;
using std::abs;

namespace {
const WaveguideProfile& p0() {
  static auto p = make_constant_profile(1.0, 1.0, 1.0, 1.5);
  return p;
}
const WaveguideProfile& pfree() {
  static auto p = make_constant_profile(1.0, 1.0, 1.0, 1.0);
  return p;
}
const ModeTable& p0_modes() {
  static auto t = find_guided_modes(p0());
  return t;
}
}  // namespace

TEST_CASE("bracket maps split x into core offset plus bracket part") {
  auto in = bracket_maps(0.5, 1.0);
  CHECK(in.bracket == 0.0);
  CHECK(in.frac == 0.5);
  auto right = bracket_maps(3.0, 1.0);
  CHECK(right.bracket == 2.0);
  CHECK(right.frac == 1.0);
  auto left = bracket_maps(-3.0, 1.0);
  CHECK(left.bracket == -2.0);
  CHECK(left.frac == -1.0);
  for (double x : {-4.2, -1.0, 0.0, 0.3, 1.0, 7.7}) {
    auto b = bracket_maps(x, 1.0);
    CHECK(b.bracket + b.frac == doctest::Approx(x).epsilon(1e-15));
    CHECK(abs(b.frac) <= 1.0);
  }
}

TEST_CASE("continuum eigenfunctions: boundary values and oscillatory tails") {
  // Constant core: phi_s(x, 2.25) = cos(1.5 x), Q = 1 outside.
  CHECK(v_continuum(p0(), Parity::Symmetric, 2.25, 1.0) ==
        doctest::Approx(std::cos(1.5)).epsilon(1e-10));
  // Quarter-period translation isolates the sine coefficient phi'(h)/Q.
  CHECK(v_continuum(p0(), Parity::Symmetric, 2.25, 1.0 + kPi / 2.0) ==
        doctest::Approx(-1.5 * std::sin(1.5)).epsilon(1e-10));
  // Free profile: v_s = cos(sqrt(lambda) x) everywhere.
  CHECK(v_continuum(pfree(), Parity::Symmetric, 4.0, 7.0) ==
        doctest::Approx(std::cos(14.0)).epsilon(1e-10));
  CHECK_THROWS_AS(v_continuum(p0(), Parity::Symmetric, 1.0, 0.5), ConfigError);
}

TEST_CASE("two-form identity: v = (Phi e^{i tau [x]_h} + conj form)/2") {
  for (double tau : {0.5, 1.0, 2.3, 7.0}) {
    const double lambda = p0().d2() + tau * tau;
    for (Parity par : {Parity::Symmetric, Parity::Antisymmetric}) {
      for (double x : {-4.0, -1.0, 0.35, 1.0, 2.0, 6.5}) {
        const double bracket = bracket_maps(x, 1.0).bracket;
        const Complex lhs =
            0.5 * (big_phi(p0(), par, x, tau) *
                       std::exp(kI * Complex(tau) * bracket) +
                   big_phi(p0(), par, x, -tau) *
                       std::exp(-kI * Complex(tau) * bracket));
        const double rhs = v_continuum(p0(), par, lambda, x);
        CHECK(abs(lhs - rhs) < 1e-10 * (1.0 + abs(rhs)));
        CHECK(abs(lhs.imag()) < 1e-10);
      }
    }
  }
}

TEST_CASE("spectral weight: closed forms and the Phi-product identity") {
  // Free profile: sigma == 1 for every lambda > 0.
  CHECK(sigma_weight(pfree(), Parity::Symmetric, 4.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sigma_weight(pfree(), Parity::Antisymmetric, 9.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // Constant core at lambda = 2.25 (Q = 1).
  const double direct =
      1.0 / (std::cos(1.5) * std::cos(1.5) +
             2.25 * std::sin(1.5) * std::sin(1.5));
  CHECK(sigma_weight(p0(), Parity::Symmetric, 2.25) ==
        doctest::Approx(direct).epsilon(1e-10));
  CHECK(sigma_weight(p0(), Parity::Symmetric, 2.25) ==
        doctest::Approx(0.4456833827689403).epsilon(1e-8));

  // sigma -> 0 linearly at the band edge.
  const double d2 = p0().d2();
  const double s1 = sigma_weight(p0(), Parity::Symmetric, d2 + 1e-6);
  const double s2 = sigma_weight(p0(), Parity::Symmetric, d2 + 2e-6);
  CHECK(s2 / s1 == doctest::Approx(2.0).epsilon(1e-3));

  // Identity sigma(d^2 + tau^2) = 1/(Phi(h,tau) Phi(h,-tau)).
  for (double dl : {0.3, 1.0, 5.0, 25.0, 100.0}) {
    const double tau = std::sqrt(dl);
    for (Parity par : {Parity::Symmetric, Parity::Antisymmetric}) {
      const Complex prod = big_phi(p0(), par, 1.0, tau) *
                           big_phi(p0(), par, 1.0, -tau);
      const double sig = sigma_weight(p0(), par, d2 + dl);
      CHECK(abs(1.0 / prod - sig) < 1e-10 * sig);
    }
  }
}

TEST_CASE("Phi: free-profile closed forms for complex tau") {
  for (Complex tau : {Complex(3.0, 0.0), Complex(2.0, 0.7),
                      Complex(-1.5, 0.4)}) {
    const Complex expected = std::exp(kI * tau * 0.7);
    CHECK(abs(big_phi(pfree(), Parity::Symmetric, 0.7, tau) - expected) <
          1e-10 * abs(expected));
    // Phi_a = sqrt(tau^2)/(i tau) e^{i tau x} with the principal branch.
    const Complex pref = std::sqrt(tau * tau) / (kI * tau);
    CHECK(abs(big_phi(pfree(), Parity::Antisymmetric, 0.7, tau) -
              pref * expected) < 1e-10);
  }
  // Constant in x outside the core.
  CHECK(abs(big_phi(p0(), Parity::Symmetric, 1.5, Complex(2.0, 0.3)) -
            big_phi(p0(), Parity::Symmetric, 9.0, Complex(2.0, 0.3))) <
        1e-12);
}

TEST_CASE("Phi asymptotics: exact for p == 0, O(1/tau^2) otherwise") {
  // Free profile: the approximation is exact.
  for (Parity par : {Parity::Symmetric, Parity::Antisymmetric}) {
    const Complex tau(4.0, 0.5);
    CHECK(abs(big_phi(pfree(), par, 0.6, tau) -
              phi_asymptotic(pfree(), par, 0.6, tau)) < 1e-10);
  }
  // First-order bracket value at tau = 50, x = h: 1 + 0.625 i / 50.
  const Complex approx = phi_asymptotic(p0(), Parity::Symmetric, 1.0, 50.0);
  const Complex bracket = approx * std::exp(-kI * Complex(50.0));
  CHECK(bracket.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bracket.imag() == doctest::Approx(0.625 / 50.0).epsilon(1e-12));

  // Error ratio between |tau| = 25 and |tau| = 50 confirms second order.
  // The O(1/tau^2) remainder carries an oscillatory e^{+-i tau x} factor,
  // so the error is measured as an RMS over a tau window and an x grid.
  auto rms_error = [](Parity par, double t_center) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < 16; ++i) {
      const double tau = t_center * (0.9 + 0.2 * i / 15.0);
      for (double x : {0.3, 0.7, 1.0}) {
        const double e = abs(big_phi(p0(), par, x, tau) -
                             phi_asymptotic(p0(), par, x, tau));
        sum += e * e;
        ++count;
      }
    }
    return std::sqrt(sum / count);
  };
  for (Parity par : {Parity::Symmetric, Parity::Antisymmetric}) {
    const double ratio = rms_error(par, 25.0) / rms_error(par, 50.0);
    CHECK(ratio > 3.4);
    CHECK(ratio < 4.6);
  }
}

TEST_CASE("kernel g: free-profile closed form and x-independence off core") {
  for (Complex t : {Complex(0.3, 0.0), Complex(0.2, 0.5),
                    Complex(-0.4, 0.3)}) {
    const Complex expected = std::exp(kI * Complex(0.7) * std::sin(t)) /
                             (4.0 * kPi * kI);
    CHECK(abs(g_kernel(pfree(), nullptr, 2.0, 0.3, t) - expected) <
          1e-10 * abs(expected));
  }
  // g does not depend on x for |x| >= h.
  for (Complex t : {Complex(0.5, 0.0), Complex(0.1, 0.6)}) {
    const Complex g2 = g_kernel(p0(), &p0_modes(), 2.0, 0.0, t);
    const Complex g5 = g_kernel(p0(), &p0_modes(), 5.0, 0.0, t);
    CHECK(abs(g2 - g5) < 1e-12 * (1.0 + abs(g2)));
  }
}

TEST_CASE("kernel g: asymptotic agreement and O(1/sin^2) error decay") {
  // Points far out on the Gamma_1 branch: |sin t| doubles between them.
  auto gamma1_point = [](double u) {
    return Complex(-std::acos(1.0 / std::cosh(u)), u);
  };
  const Complex t1 = gamma1_point(2.5);
  const Complex t2 = gamma1_point(3.1938);  // cosh ratio ~ 2
  const double ratio = abs(std::sin(t2)) / abs(std::sin(t1));
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.02));
  for (double xi : {0.0, 0.4}) {
    const double e1 = abs(g_kernel(p0(), nullptr, 2.0, xi, t1) -
                          g_kernel_asymptotic(p0(), 2.0, xi, t1));
    const double e2 = abs(g_kernel(p0(), nullptr, 2.0, xi, t2) -
                          g_kernel_asymptotic(p0(), 2.0, xi, t2));
    CHECK(e1 / e2 > 2.5);
    CHECK(e1 / e2 < 7.0);
  }
}

TEST_CASE("contour corner parameters and the cos d1 cosh d2 = 1 identity") {
  auto path = build_contour(p0(), p0_modes(), 0.0);
  CHECK(path.delta1 == doctest::Approx(0.3774197658917346).epsilon(1e-10));
  CHECK(path.delta2 == doctest::Approx(0.3867129830038142).epsilon(1e-10));
  CHECK(std::cos(path.delta1) * std::cosh(path.delta2) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(path.y0 == doctest::Approx(0.3822189994796098).epsilon(1e-10));
  CHECK(path.c_bound == doctest::Approx(0.1460913635631939).epsilon(1e-10));

  // Free-space fallback corner still satisfies the identity.
  auto free_path = build_contour(pfree(), ModeTable{}, 0.3);
  CHECK(std::cos(free_path.delta1) * std::cosh(free_path.delta2) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contour segments join continuously and respect their defs") {
  for (double theta : {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0,
                       kPi / 2.0}) {
    auto path = build_contour(p0(), p0_modes(), theta);
    // Chain continuity.
    for (std::size_t i = 0; i + 1 < path.segments.size(); ++i) {
      const Complex end = path.segments[i].t(path.segments[i].b);
      const Complex start = path.segments[i + 1].t(path.segments[i + 1].a);
      CHECK(abs(end - start) < 1e-10);
    }
    // Gamma_3 lies on Re cos(t - theta) = 1 with Im >= 0.
    for (const auto& seg : path.segments) {
      if (seg.name != "G3") continue;
      for (int i = 0; i <= 32; ++i) {
        const double y = seg.a + (seg.b - seg.a) * i / 32.0;
        const Complex c = std::cos(seg.t(y) - theta);
        CHECK(abs(c.real() - 1.0) < 1e-12);
        CHECK(c.imag() >= -1e-14);
      }
    }
    // Gamma_1/Gamma_5 corner values.
    for (const auto& seg : path.segments) {
      if (seg.name == "G1")
        CHECK(abs(seg.t(seg.b) - Complex(-path.delta1, path.delta2)) < 1e-12);
      if (seg.name == "G5")
        CHECK(abs(seg.t(seg.a) - Complex(kPi - path.delta1, -path.delta2)) <
              1e-12);
    }
  }
  // Gamma_2 has real length theta.
  auto quarter = build_contour(p0(), p0_modes(), kPi / 2.0);
  bool found = false;
  for (const auto& seg : quarter.segments)
    if (seg.name == "G2") {
      found = true;
      CHECK(seg.b - seg.a == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    }
  CHECK(found);
}

TEST_CASE("contour node bounds: damping, Im sin t, pole distance") {
  const double beta0 = p0().beta0();
  const double d2 = p0().d2();
  const double gamma1 = p0_modes().modes[0].gamma;
  const double im_sin_cap =
      std::max(1.0, std::sqrt(d2 - gamma1) / (2.0 * beta0));
  for (double theta : {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0,
                       kPi / 2.0}) {
    auto path = build_contour(p0(), p0_modes(), theta);
    double min_damp = 1e300, min_pole = 1e300;
    for (const auto& seg : path.segments) {
      const bool saddle = seg.name == "G3";
      // The Im sin t bound belongs to the paper-curve segments; the
      // auxiliary truncation stubs (G1x/G5x) leave it by construction.
      const bool aux = seg.name.back() == 'x';
      for (int i = 0; i <= 64; ++i) {
        const Complex t = seg.t(seg.a + (seg.b - seg.a) * i / 64.0);
        const Complex c = std::cos(t - theta);
        CHECK(c.imag() >= -1e-12);
        if (!saddle) min_damp = std::min(min_damp, c.imag());
        if (!aux)
          CHECK(abs(std::imag(std::sin(t))) <=
                im_sin_cap + 1e-12 * std::cosh(t.imag()));
        const Complex tau = beta0 * std::sin(t);
        const Complex lambda = d2 + tau * tau;
        min_pole = std::min(min_pole, abs(lambda - gamma1));
      }
    }
    CHECK(min_damp >= path.c_bound - 1e-12);
    CHECK(min_pole > 1e-3);
  }
}

TEST_CASE("contour truncation reaches the requested damping level") {
  auto path = build_contour(p0(), p0_modes(), 0.0, 1e-12, 1.0);
  const double beta0 = p0().beta0();
  const Complex top = path.segments.front().t(path.segments.front().a);
  const Complex bot = path.segments.back().t(path.segments.back().b);
  for (Complex t : {top, bot}) {
    const double damp =
        std::exp(-beta0 * 1.0 * std::imag(std::cos(t - path.theta)));
    CHECK(damp <= 1e-12);
  }
  // A larger minimum radius shortens the legs.
  auto shorter = build_contour(p0(), p0_modes(), 0.0, 1e-12, 25.0);
  CHECK(shorter.t2_trunc < path.t2_trunc);
}

TEST_CASE("invalid contour requests are rejected") {
  CHECK_THROWS_AS(build_contour(p0(), p0_modes(), -0.1), ConfigError);
  CHECK_THROWS_AS(build_contour(p0(), p0_modes(), 2.0), ConfigError);
  CHECK_THROWS_AS(build_contour(p0(), p0_modes(), 0.3, 2.0), ConfigError);
  CHECK_THROWS_AS(build_contour(p0(), p0_modes(), 0.3, 1e-12, 0.0),
                  ConfigError);
}
