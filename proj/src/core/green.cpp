#include "core/green.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "core/ode.hpp"
#include "core/quadrature.hpp"
#include "core/special.hpp"

namespace owg {

double coincidence_limit(const WaveguideProfile& profile) {
  return 1e-3 / profile.k();
}

namespace {

void check_separation(const WaveguideProfile& profile, double x, double z,
                      double xi, double zeta) {
  if (std::hypot(x - xi, z - zeta) < coincidence_limit(profile))
    throw NumericError(
        "green: observation point coincides with the source node "
        "(logarithmic singularity)");
}

// v_j(x), v_j'(x), v_j(xi) and sigma_j at lambda = d^2 + tau^2 from a single
// core integration per parity.
struct RealSpectral {
  double vx, dvx, vxi, sigma;
};

RealSpectral eval_real_spectral(const WaveguideProfile& profile, Parity parity,
                                double tau, double x, double xi,
                                const OdeOptions& opts) {
  const double h = profile.h();
  const double cx = std::clamp(x, -h, h);
  const double cxi = std::clamp(xi, -h, h);
  const Complex lambda(profile.d2() + tau * tau, 0.0);
  auto sol = solve_phi(profile, parity, lambda, {cx, cxi, h}, opts);
  auto outside = [&](int i, double y, double* dv) {
    const double edge = y > h ? h : -h;
    const double s = y - edge;
    const double phi = sol.phi[i].real(), dphi = sol.dphi[i].real();
    if (dv != nullptr)
      *dv = -phi * tau * std::sin(tau * s) + dphi * std::cos(tau * s);
    return phi * std::cos(tau * s) + dphi / tau * std::sin(tau * s);
  };
  RealSpectral r;
  if (std::abs(x) <= h) {
    r.vx = sol.phi[0].real();
    r.dvx = sol.dphi[0].real();
  } else {
    r.vx = outside(0, x, &r.dvx);
  }
  r.vxi = std::abs(xi) <= h ? sol.phi[1].real() : outside(1, xi, nullptr);
  const double phi_h = sol.phi[2].real(), dphi_h = sol.dphi[2].real();
  const double denom = tau * tau * phi_h * phi_h + dphi_h * dphi_h;
  if (denom == 0.0) throw NumericError("green: vanishing sigma denominator");
  r.sigma = tau * tau / denom;
  return r;
}

// Correction kernel D(tau) = sum_j v_j(x) v_j(xi) sigma_j - cos(tau (x-xi))
// and its x-derivative; D -> 0 as tau -> infinity, so the spectral integrals
// of D converge where the raw kernel would only converge conditionally.
class RadRealKernel {
 public:
  RadRealKernel(const WaveguideProfile& profile, double x, double xi,
                const OdeOptions& opts)
      : profile_(profile), x_(x), xi_(xi), dx_(x - xi), opts_(opts) {}

  struct DPair {
    double d = 0.0;
    double ddx = 0.0;
  };

  DPair at(double tau) {
    auto it = cache_.find(tau);
    if (it != cache_.end()) return it->second;
    DPair v;
    for (Parity parity : {Parity::Symmetric, Parity::Antisymmetric}) {
      const auto r = eval_real_spectral(profile_, parity, tau, x_, xi_, opts_);
      v.d += r.vx * r.vxi * r.sigma;
      v.ddx += r.dvx * r.vxi * r.sigma;
    }
    v.d -= std::cos(tau * dx_);
    v.ddx += tau * std::sin(tau * dx_);
    cache_.emplace(tau, v);
    return v;
  }

 private:
  const WaveguideProfile& profile_;
  double x_, xi_, dx_;
  OdeOptions opts_;
  std::map<double, DPair> cache_;
};

// Truncation point for the evanescent correction integral: the z-decay
// e^{-beta0 |dz| sinh s} where available, otherwise capped where the local
// oscillation frequency beta0 cosh(s) (|x|+|xi|) exceeds the panel budget.
double evanescent_cap(double beta0, double dz, double weight) {
  double s = 14.0;
  if (beta0 * dz > 1e-300) s = std::min(s, std::asinh(33.0 / (beta0 * dz)));
  // Budget cap: beyond ~4e3 rad per unit segment the quadrature cost
  // explodes; past that point the integration-by-parts remainder of the
  // decaying kernel D = O(1/tau) is already negligible for separated points.
  s = std::min(s, std::asinh(4.0e3 / std::max(beta0 * weight, 0.1)));
  return std::max(s, 1.0);
}

// Unit-segment march with early termination once two consecutive segments
// fall below the absolute tolerance.
Complex integrate_segmented(const std::function<Complex(double)>& f,
                            double s_hi, double abs_tol, double rel_tol) {
  Complex total(0.0, 0.0);
  int small_run = 0;
  for (double a = 0.0; a < s_hi; a += 1.0) {
    const double b = std::min(a + 1.0, s_hi);
    const Complex c = integrate_adaptive(f, a, b, abs_tol, rel_tol, 4, 1 << 12);
    total += c;
    if (std::abs(c) < abs_tol) {
      if (++small_run >= 2) break;
    } else {
      small_run = 0;
    }
  }
  return total;
}

GreenRadEval rad_real_impl(const WaveguideProfile& profile, double x, double z,
                           double xi, double zeta, const QuadOptions& quad,
                           bool want_grad) {
  check_separation(profile, x, z, xi, zeta);
  const double beta0 = profile.beta0();
  const double dz = std::abs(z - zeta);
  const double sgn_z = z > zeta ? 1.0 : (z < zeta ? -1.0 : 0.0);
  const double dx = x - xi;
  const double rho = std::hypot(dx, dz);

  RadRealKernel ker(profile, x, xi, quad.ode);
  const Complex quarter = 1.0 / (4.0 * kI);
  const Complex pref = 1.0 / (2.0 * kPi * kI);

  // Propagating band tau = beta0 sin t, t in (0, pi/2).
  auto prop = [&](int kind) {
    return integrate_adaptive(
        [&](double t) -> Complex {
          const auto d = ker.at(beta0 * std::sin(t));
          const Complex e = std::exp(kI * beta0 * dz * std::cos(t));
          switch (kind) {
            case 1:
              return d.ddx * e;
            case 2:
              return kI * beta0 * std::cos(t) * sgn_z * d.d * e;
            default:
              return d.d * e;
          }
        },
        0.0, kPi / 2.0, quad.abs_tol, quad.rel_tol);
  };
  // Evanescent band tau = beta0 cosh s.
  const double s_hi = evanescent_cap(beta0, dz, std::abs(x) + std::abs(xi));
  auto evan = [&](int kind) {
    return integrate_segmented(
        [&](double s) -> Complex {
          const auto d = ker.at(beta0 * std::cosh(s));
          const double e = std::exp(-beta0 * dz * std::sinh(s));
          switch (kind) {
            case 1:
              return d.ddx * e;
            case 2:
              return -beta0 * std::sinh(s) * sgn_z * d.d * e;
            default:
              return d.d * e;
          }
        },
        s_hi, quad.abs_tol, quad.rel_tol);
  };

  GreenRadEval out;
  const Complex h0 = hankel_h0(beta0 * rho);
  out.value = quarter * h0 + pref * (prop(0) - kI * evan(0));
  if (want_grad) {
    const Complex dh = -beta0 * hankel_h1(beta0 * rho) * quarter;
    out.grad_x = dh * (dx / rho) + pref * (prop(1) - kI * evan(1));
    out.grad_z = dh * (sgn_z * dz / rho) + pref * (prop(2) - kI * evan(2));
  }
  return out;
}

}  // namespace

std::vector<Complex> green_guided(const WaveguideProfile& profile,
                                  const ModeTable& modes, double x, double z,
                                  double xi, double zeta,
                                  const OdeOptions& opts) {
  std::vector<Complex> out;
  out.reserve(modes.modes.size());
  const double dz = std::abs(z - zeta);
  for (const auto& m : modes.modes) {
    const auto ex = mode_shape(profile, m, x, opts);
    const auto exi = mode_shape(profile, m, xi, opts);
    out.push_back(std::exp(kI * m.beta * dz) / (2.0 * kI * m.beta) * ex.e *
                  exi.e);
  }
  return out;
}

Complex green_rad_real(const WaveguideProfile& profile, const ModeTable&,
                       double x, double z, double xi, double zeta,
                       const QuadOptions& quad) {
  return rad_real_impl(profile, x, z, xi, zeta, quad, false).value;
}

GreenRadEval green_rad_real_grad(const WaveguideProfile& profile,
                                 const ModeTable&, double x, double z,
                                 double xi, double zeta,
                                 const QuadOptions& quad) {
  return rad_real_impl(profile, x, z, xi, zeta, quad, true);
}

GreenRadEval green_rad_contour(const WaveguideProfile& profile,
                               const ModeTable& modes, double x, double z,
                               double xi, double zeta, const QuadOptions& quad,
                               bool want_grad, double theta_hint) {
  check_separation(profile, x, z, xi, zeta);
  if (z == zeta)
    throw ConfigError(
        "green_rad_contour: requires z != zeta (contour representation "
        "invalid at z = zeta)");
  const double h = profile.h();
  if (x < -h) {
    // Reduce the [x]_h < 0 side by the reflection x -> -x; the parity
    // construction is reflection-covariant only for even profiles.
    if (!profile.is_even())
      throw ConfigError(
          "green_rad_contour: x < -h needs the x -> -x reflection, which "
          "requires an even core profile");
    GreenRadEval e = green_rad_contour(profile, modes, -x, z, -xi, zeta, quad,
                                       want_grad, theta_hint);
    e.grad_x = -e.grad_x;
    return e;
  }

  const double beta0 = profile.beta0();
  const auto bx = bracket_maps(x, h);
  const auto bxi = bracket_maps(xi, h);
  const double dz = std::abs(z - zeta);
  const double sgn_z = z > zeta ? 1.0 : -1.0;
  const double r = std::hypot(bx.bracket, dz);
  const double theta =
      theta_hint >= 0.0 ? std::clamp(theta_hint, 0.0, kPi / 2.0)
                        : std::atan2(bx.bracket, dz);
  // Truncation radius discounted for the kernel growth carried by the
  // bounded-coordinate factors (at most e^{beta0 (2h+|[xi]_h|) |Im sin t|}).
  const double r_eff =
      std::max({r / 2.0, r - 2.0 * h - std::abs(bxi.bracket), 0.25});
  const auto path = build_contour(profile, modes, theta, 1e-13, r_eff);

  const double seg_tol = quad.abs_tol / static_cast<double>(path.segments.size());
  GreenRadEval out;
  for (const auto& seg : path.segments) {
    std::map<double, Complex> gcache;
    auto integrand = [&](double s, int kind) -> Complex {
      const Complex t = seg.t(s);
      Complex g;
      auto it = gcache.find(s);
      if (it != gcache.end()) {
        g = it->second;
      } else {
        g = g_kernel(profile, &modes, x, xi, t, quad.ode);
        gcache.emplace(s, g);
      }
      const Complex sint = std::sin(t), cost = std::cos(t);
      Complex f = g * std::exp(kI * beta0 * (bx.bracket * sint + dz * cost)) *
                  seg.dt(s);
      if (kind == 1) f *= kI * beta0 * sint;
      if (kind == 2) f *= kI * beta0 * cost * sgn_z;
      return f;
    };
    out.value += integrate_adaptive([&](double s) { return integrand(s, 0); },
                                    seg.a, seg.b, seg_tol, quad.rel_tol);
    if (want_grad) {
      if (std::abs(x) >= h)
        out.grad_x += integrate_adaptive(
            [&](double s) { return integrand(s, 1); }, seg.a, seg.b, seg_tol,
            quad.rel_tol);
      out.grad_z += integrate_adaptive([&](double s) { return integrand(s, 2); },
                                       seg.a, seg.b, seg_tol, quad.rel_tol);
    }
  }
  if (want_grad && std::abs(x) < h) {
    // Inside the core the differentiated contour integrand is not available
    // (the t-exponent no longer carries the x-dependence); fall back to the
    // differentiated real-axis integrand.
    out.grad_x = rad_real_impl(profile, x, z, xi, zeta, quad, true).grad_x;
  }
  return out;
}

GreenParts green_total(const WaveguideProfile& profile, const ModeTable& modes,
                       double x, double z, double xi, double zeta,
                       RadRoute route, const QuadOptions& quad,
                       bool want_grad) {
  GreenParts out;
  out.guided = green_guided(profile, modes, x, z, xi, zeta, quad.ode);
  Complex guided_sum(0.0, 0.0);
  for (const Complex& g : out.guided) guided_sum += g;
  GreenRadEval rad;
  if (route == RadRoute::Real) {
    rad = rad_real_impl(profile, x, z, xi, zeta, quad, want_grad);
  } else {
    rad = green_rad_contour(profile, modes, x, z, xi, zeta, quad, want_grad);
  }
  out.radiative = rad.value;
  out.total = guided_sum + rad.value;
  if (want_grad) {
    out.has_grad = true;
    out.grad_x = rad.grad_x;
    out.grad_z = rad.grad_z;
    const double dz = std::abs(z - zeta);
    const double sgn_z = z > zeta ? 1.0 : (z < zeta ? -1.0 : 0.0);
    for (const auto& m : modes.modes) {
      const auto ex = mode_shape(profile, m, x, quad.ode);
      const auto exi = mode_shape(profile, m, xi, quad.ode);
      const Complex phase =
          std::exp(kI * m.beta * dz) / (2.0 * kI * m.beta) * exi.e;
      out.grad_x += phase * ex.de;
      out.grad_z += phase * ex.e * kI * m.beta * sgn_z;
    }
  }
  return out;
}

}  // namespace owg
