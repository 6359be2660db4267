#include "core/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "core/quadrature.hpp"

namespace owg {

BracketPair bracket_maps(double x, double h) {
  if (x > h) return {x - h, h};
  if (x < -h) return {x + h, -h};
  return {0.0, x};
}

namespace {

// Psi_j(x, tau) = tau phi_j({x}_h) - i phi_j'({x}_h), the polar-free form of
// tau Phi_j: all kernel ratios built from Psi stay finite at tau = 0.
struct PsiValues {
  Complex at_x, at_xi, at_h;          // Psi(., +tau)
  Complex at_x_neg, at_xi_neg, at_h_neg;  // Psi(., -tau)
};

PsiValues psi_values(const WaveguideProfile& profile, Parity parity,
                     Complex tau, double frac_x, double frac_xi,
                     const OdeOptions& opts) {
  const Complex lambda = profile.d2() + tau * tau;
  auto sol = solve_phi(profile, parity, lambda,
                       {frac_x, frac_xi, profile.h()}, opts);
  auto psi = [&](int i, Complex t) {
    return t * sol.phi[i] - kI * sol.dphi[i];
  };
  PsiValues v;
  v.at_x = psi(0, tau);
  v.at_xi = psi(1, tau);
  v.at_h = psi(2, tau);
  v.at_x_neg = psi(0, -tau);
  v.at_xi_neg = psi(1, -tau);
  v.at_h_neg = psi(2, -tau);
  return v;
}

}  // namespace

double v_continuum(const WaveguideProfile& profile, Parity parity,
                   double lambda, double x, const OdeOptions& opts) {
  const double d2 = profile.d2();
  if (!(lambda > d2))
    throw ConfigError("v_continuum: lambda must exceed d^2");
  const double h = profile.h();
  const double q_out = std::sqrt(lambda - d2);
  if (std::abs(x) <= h) {
    return phi_at(profile, parity, Complex(lambda, 0.0), x, opts).phi.real();
  }
  const double edge = x > h ? h : -h;
  const auto v = phi_at(profile, parity, Complex(lambda, 0.0), edge, opts);
  const double s = x - edge;
  return v.phi.real() * std::cos(q_out * s) +
         v.dphi.real() / q_out * std::sin(q_out * s);
}

double sigma_weight(const WaveguideProfile& profile, Parity parity,
                    double lambda, const OdeOptions& opts) {
  const double d2 = profile.d2();
  if (!(lambda > d2))
    throw ConfigError("sigma_weight: lambda must exceed d^2");
  const auto v =
      phi_at(profile, parity, Complex(lambda, 0.0), profile.h(), opts);
  const double phi = v.phi.real(), dphi = v.dphi.real();
  const double denom = (lambda - d2) * phi * phi + dphi * dphi;
  if (denom == 0.0)
    throw NumericError("sigma_weight: vanishing denominator");
  return (lambda - d2) / denom;
}

Complex big_phi(const WaveguideProfile& profile, Parity parity, double x,
                Complex tau, const OdeOptions& opts) {
  if (tau == 0.0) throw ConfigError("big_phi: tau must be nonzero");
  const Complex lambda = profile.d2() + tau * tau;
  const double frac = bracket_maps(x, profile.h()).frac;
  const auto v = phi_at(profile, parity, lambda, frac, opts);
  return v.phi + v.dphi / (kI * tau);
}

double p_integral(const WaveguideProfile& profile, double a, double b) {
  // p is piecewise linear between breakpoints and vanishes outside the
  // core; one order-16 panel per smooth piece is exact.
  const double h = profile.h();
  const double sgn = b >= a ? 1.0 : -1.0;
  double lo = std::min(a, b), hi = std::max(a, b);
  lo = std::max(lo, -h);
  hi = std::min(hi, h);
  if (lo >= hi) return 0.0;
  std::vector<double> stops = {lo};
  for (double bp : profile.breakpoints())
    if (bp > lo && bp < hi) stops.push_back(bp);
  stops.push_back(hi);
  std::sort(stops.begin(), stops.end());
  double total = 0.0;
  auto f = [&](double y) { return Complex(profile.potential_at(y).p, 0.0); };
  for (std::size_t i = 0; i + 1 < stops.size(); ++i)
    total += integrate_panels(f, stops[i], stops[i + 1], 1).real();
  return sgn * total;
}

Complex phi_asymptotic(const WaveguideProfile& profile, Parity parity,
                       double x, Complex tau) {
  if (tau == 0.0) throw ConfigError("phi_asymptotic: tau must be nonzero");
  const double frac = bracket_maps(x, profile.h()).frac;
  const Complex bracket =
      1.0 + kI / (2.0 * tau) * p_integral(profile, 0.0, frac);
  Complex value = bracket * std::exp(kI * tau * frac);
  if (parity == Parity::Antisymmetric) {
    const double d2 = profile.d2();
    value *= std::sqrt(tau * tau + d2) / (kI * tau);
  }
  return value;
}

Complex g_kernel(const WaveguideProfile& profile, const ModeTable* modes,
                 double x, double xi, Complex t, const OdeOptions& opts) {
  const double h = profile.h();
  const double beta0 = profile.beta0();
  const Complex tau = beta0 * std::sin(t);
  const Complex lambda = profile.d2() + tau * tau;
  if (modes != nullptr) {
    for (const auto& m : modes->modes)
      if (std::abs(lambda - m.gamma) < 1e-8 * (1.0 + std::abs(lambda)))
        throw NumericError("g_kernel: contour point too close to the pole at "
                           "gamma = " + std::to_string(m.gamma));
  }
  const auto bx = bracket_maps(x, h);
  const auto bxi = bracket_maps(xi, h);
  const Complex exp_p = std::exp(kI * tau * bxi.bracket);
  const Complex exp_m = std::exp(-kI * tau * bxi.bracket);
  const Complex pref = 1.0 / (8.0 * kPi * kI);
  Complex g = 0.0;
  for (Parity parity : {Parity::Symmetric, Parity::Antisymmetric}) {
    const auto psi = psi_values(profile, parity, tau, bx.frac, bxi.frac, opts);
    const Complex denom = psi.at_h * psi.at_h_neg;
    if (std::abs(denom) == 0.0)
      throw NumericError("g_kernel: vanishing kernel denominator");
    // A_j^{+-} = -+ (1/8 pi i) Psi(x,tau) Psi(xi,+-tau) / (Psi(h,tau)
    // Psi(h,-tau)), the Psi-form of the Phi ratios.
    const Complex a_plus = -pref * psi.at_x * psi.at_xi / denom;
    const Complex a_minus = pref * psi.at_x * psi.at_xi_neg / denom;
    g += a_plus * exp_p + a_minus * exp_m;
  }
  return g;
}

Complex g_kernel_asymptotic(const WaveguideProfile& profile, double x,
                            double xi, Complex t) {
  const double h = profile.h();
  const double beta0 = profile.beta0();
  const Complex sint = std::sin(t);
  const auto bx = bracket_maps(x, h);
  const auto bxi = bracket_maps(xi, h);
  const Complex bracket =
      1.0 + kI / (2.0 * beta0 * sint) * p_integral(profile, bxi.frac, bx.frac);
  return 1.0 / (4.0 * kPi * kI) *
         std::exp(kI * beta0 * (bx.frac - xi) * sint) * bracket;
}

namespace {

// Gamma_1/Gamma_5 live on Re cos t = +-1; parameterized by t2 with
// t1 = -+ arccos(sech t2) (offset by pi for Gamma_5).
double g15_t1(double t2) { return std::acos(1.0 / std::cosh(t2)); }

}  // namespace

std::vector<ContourNode> ContourPath::sample_nodes(
    int panels_per_segment) const {
  const auto& rule = gauss_legendre(16);
  std::vector<ContourNode> nodes;
  for (const auto& seg : segments) {
    const double width = (seg.b - seg.a) / panels_per_segment;
    for (int p = 0; p < panels_per_segment; ++p) {
      const double lo = seg.a + p * width;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = lo + 0.5 * width * (rule.nodes[i] + 1.0);
        nodes.push_back({seg.t(s), 0.5 * width * rule.weights[i] * seg.dt(s)});
      }
    }
  }
  return nodes;
}

ContourPath build_contour(const WaveguideProfile& profile,
                          const ModeTable& modes, double theta,
                          double truncation_eps, double r_min) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0 + 1e-12))
    throw ConfigError("build_contour: theta must lie in [0, pi/2]");
  if (!(truncation_eps > 0.0 && truncation_eps < 1.0))
    throw ConfigError("build_contour: truncation_eps must lie in (0, 1)");
  if (!(r_min > 0.0)) throw ConfigError("build_contour: r_min must be > 0");
  const double beta0 = profile.beta0();
  const double gamma_m = modes.empty() ? 0.0 : modes.gamma_star();
  const double depth = profile.d2() - gamma_m;
  if (depth < 0.0)
    throw ConfigError("build_contour: gamma_M exceeds d^2");

  ContourPath path;
  path.theta = theta;
  if (depth > 1e-14) {
    path.delta2 = std::asinh(std::sqrt(depth) / (2.0 * beta0));
    path.c_bound = std::sqrt(depth / (4.0 * beta0 * beta0 + depth)) *
                   std::min(1.0, std::sqrt(depth) / (2.0 * beta0));
  } else {
    // Free-space regime: the paper's corner degenerates; keep a fixed
    // unit-asinh corner so the deformed path stays clear of the real axis.
    path.delta2 = std::asinh(1.0);
    path.c_bound = std::sin(kPi / 4.0);
  }
  path.delta1 = std::acos(1.0 / std::cosh(path.delta2));
  const double d1 = path.delta1, d2c = path.delta2;
  path.y0 = std::sqrt(std::sin(d1) * std::sinh(d2c));

  // Truncation of the unbounded legs: march |Im t| outward until the
  // damping e^{-beta0 r_min Im cos(t - theta)} drops below truncation_eps.
  // Near theta = pi/2 the damping along Re cos t = +-1 saturates at
  // tanh(t2) sin(theta); in that case the curve is cut where it stops
  // helping and a short vertical stub (auxiliary segments G1x/G5x, not
  // part of the paper-curve geometry) carries the path the rest of the
  // way out of the significant region.
  const double need = -std::log(truncation_eps) / (beta0 * r_min);
  const double u_cap = std::min(std::asinh(2.0 * need), 12.0);
  auto curve_damp = [&](double u) {
    // Im cos(t - theta) on Re cos t = +-1, by the exact identities
    // Im cos t = sinh(u) tanh(u), Im sin t = tanh(u).
    return std::sinh(u) * std::tanh(u) * std::cos(theta) +
           std::tanh(u) * std::sin(theta);
  };
  auto trunc_t2 = [&]() {
    double u = d2c;
    for (; u < u_cap; u += 0.05)
      if (curve_damp(u) >= need) break;
    return std::min(u, u_cap);
  };
  const double t_curve = trunc_t2();
  const bool stub = curve_damp(t_curve) < need;
  double t_stub = t_curve;
  if (stub) {
    // Vertical continuation at fixed t1: damping grows like
    // sinh(t2) (|sin t1| cos(theta) + sech(t_curve) sin(theta)).
    const double coeff =
        std::tanh(t_curve) * std::cos(theta) +
        std::sin(theta) / std::cosh(t_curve);
    for (; t_stub < 40.0; t_stub += 0.05)
      if (std::sinh(t_stub) * coeff >= need) break;
  }
  path.t2_trunc = t_stub;

  if (stub) {
    const double t1s = -g15_t1(t_curve);
    path.segments.push_back(
        {"G1x", t_stub, t_curve,
         [t1s](double u) { return Complex(t1s, u); },
         [](double) { return Complex(0.0, 1.0); }});
  }
  // Gamma_1: from -arccos(sech T) + iT down to -delta1 + i delta2.
  path.segments.push_back(
      {"G1", t_curve, d2c,
       [](double u) { return Complex(-g15_t1(u), u); },
       [](double u) { return Complex(-1.0 / std::cosh(u), 1.0); }});
  // Gamma_2: horizontal at t2 = delta2, from -delta1 to -delta1 + theta.
  if (theta > 0.0) {
    path.segments.push_back(
        {"G2", 0.0, theta,
         [d1, d2c](double s) { return Complex(-d1 + s, d2c); },
         [](double) { return Complex(1.0, 0.0); }});
  }
  // Gamma_3: steepest-descent arc cos(t - theta) = 1 + i y^2.
  {
    const double y0 = path.y0;
    auto tfun = [theta](double y) {
      const Complex root = std::sqrt(Complex(y * y, -2.0));
      const Complex eis = Complex(1.0, y * y) + kI * y * root;
      return theta - kI * std::log(eis);
    };
    auto dtfun = [](double y) {
      return -2.0 * kI / std::sqrt(Complex(y * y, -2.0));
    };
    path.segments.push_back({"G3", -y0, y0, tfun, dtfun});
  }
  // Gamma_4: horizontal at t2 = -delta2, from theta + delta1 to pi - delta1.
  path.segments.push_back(
      {"G4", theta + d1, kPi - d1,
       [d2c](double s) { return Complex(s, -d2c); },
       [](double) { return Complex(1.0, 0.0); }});
  // Gamma_5: from pi - delta1 - i delta2 down to pi - arccos(sech T) - iT.
  path.segments.push_back(
      {"G5", d2c, t_curve,
       [](double u) { return Complex(kPi - g15_t1(u), -u); },
       [](double u) { return Complex(-1.0 / std::cosh(u), -1.0); }});
  if (stub) {
    const double t1s = kPi - g15_t1(t_curve);
    path.segments.push_back(
        {"G5x", t_curve, t_stub,
         [t1s](double u) { return Complex(t1s, -u); },
         [](double) { return Complex(0.0, -1.0); }});
  }
  return path;
}

}  // namespace owg
