#include "doctest.h"

#include <cmath>
#include <complex>

#include "core/ode.hpp"
#include "core/profile.hpp"

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
}  // namespace

TEST_CASE("constant-core closed forms: phi_s = cos, phi_a = sin") {
  // q == 0 inside the core of P0, so phi_s(x) = cos(sqrt(lambda) x).
  auto s = phi_at(p0(), Parity::Symmetric, 1.0, 1.0);
  CHECK(s.phi.real() == doctest::Approx(std::cos(1.0)).epsilon(1e-10));
  CHECK(s.dphi.real() == doctest::Approx(-std::sin(1.0)).epsilon(1e-10));
  CHECK(abs(s.phi.imag()) < 1e-12);

  auto a = phi_at(p0(), Parity::Antisymmetric, 1.0, 1.0);
  CHECK(a.phi.real() == doctest::Approx(std::sin(1.0)).epsilon(1e-10));

  auto s2 = phi_at(p0(), Parity::Symmetric, 0.25, 1.0);
  CHECK(s2.phi.real() == doctest::Approx(std::cos(0.5)).epsilon(1e-10));
}

TEST_CASE("Wronskian phi_s phi_a' - phi_s' phi_a = sqrt(lambda)") {
  for (Complex lambda : {Complex(0.01, 0.0), Complex(2.25, 0.0),
                         Complex(100.0, 0.0), Complex(1e4, 0.0),
                         Complex(3.0, 1.5), Complex(-2.0, 0.7)}) {
    const Complex root = std::sqrt(lambda);
    for (double x : {-1.0, -0.4, 0.2, 0.77, 1.0}) {
      auto s = phi_at(p0(), Parity::Symmetric, lambda, x);
      auto a = phi_at(p0(), Parity::Antisymmetric, lambda, x);
      const Complex w = s.phi * a.dphi - s.dphi * a.phi;
      CHECK(abs(w - root) / abs(root) < 1e-8);
    }
  }
}

TEST_CASE("parity of the core solutions on even profiles") {
  CoreIndexSpec spec;
  spec.table_x = {-1.0, -0.5, 0.0, 0.5, 1.0};
  spec.table_n = {1.2, 1.4, 1.5, 1.4, 1.2};
  WaveguideProfile bump(1.0, 1.0, 1.0, spec);
  for (double x : {0.3, 0.8, 1.0}) {
    auto sp = phi_at(bump, Parity::Symmetric, 2.0, x);
    auto sm = phi_at(bump, Parity::Symmetric, 2.0, -x);
    CHECK(abs(sp.phi - sm.phi) < 1e-10);
    auto ap = phi_at(bump, Parity::Antisymmetric, 2.0, x);
    auto am = phi_at(bump, Parity::Antisymmetric, 2.0, -x);
    CHECK(abs(ap.phi + am.phi) < 1e-10);
  }
}

TEST_CASE("degenerate antisymmetric lambda = 0 is flagged") {
  auto sol = solve_phi(p0(), Parity::Antisymmetric, 0.0, {0.5});
  CHECK(sol.degenerate);
  CHECK(abs(sol.phi[0]) == 0.0);
}

TEST_CASE("Volterra oracle agrees with the direct solver") {
  // tau = 1 at lambda = d^2 + 1 = 2.25 for P0.
  auto direct = phi_at(p0(), Parity::Symmetric, 2.25, 1.0);
  auto volterra = solve_phi_volterra(p0(), Parity::Symmetric, 2.25, 1.0);
  CHECK(abs(direct.phi - volterra.phi) < 1e-10);
  CHECK(abs(direct.dphi - volterra.dphi) < 1e-9);

  // p == 0 kills the integral term: exact after one sweep.
  auto free = solve_phi_volterra(pfree(), Parity::Symmetric, 4.0, 0.7);
  CHECK(abs(free.phi - std::cos(2.0 * 0.7)) < 1e-12);

  // Grid including complex lambda with |Im tau| <= 1.
  for (Parity par : {Parity::Symmetric, Parity::Antisymmetric}) {
    for (Complex lambda : {Complex(2.0, 0.0), Complex(5.5, 1.0),
                           Complex(26.25, 0.0), Complex(1.5, -0.8)}) {
      for (double x : {-0.8, 0.4, 1.0}) {
        auto d = phi_at(p0(), par, lambda, x);
        auto v = solve_phi_volterra(p0(), par, lambda, x);
        CHECK(abs(d.phi - v.phi) < 1e-9);
      }
    }
  }
}

TEST_CASE("high-frequency bound |phi| <= sqrt(2) e^{d h} for real tau") {
  // Flat-T limit of the Gronwall bound, real tau with |tau| >= d.
  const double bound = std::sqrt(2.0) * std::exp(std::sqrt(1.25) * 1.0);
  for (double tau : {1.2, 2.0, 5.0, 10.0, 50.0}) {
    const double lambda = 1.25 + tau * tau;
    for (Parity par : {Parity::Symmetric, Parity::Antisymmetric}) {
      for (double x : {-1.0, -0.5, 0.25, 1.0}) {
        auto v = phi_at(p0(), par, lambda, x);
        CHECK(abs(v.phi) <= bound);
      }
    }
  }
}

TEST_CASE("targets outside the core are rejected") {
  CHECK_THROWS_AS(phi_at(p0(), Parity::Symmetric, 1.0, 1.5), ConfigError);
}
