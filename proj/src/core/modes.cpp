#include "core/modes.hpp"

#include <algorithm>
#include <cmath>

#include "core/quadrature.hpp"

namespace owg {

double ModeTable::gamma_star() const {
  if (modes.empty()) throw NumericError("gamma_star: no guided modes");
  return modes.back().gamma;
}

double dispersion_value(const WaveguideProfile& profile, Parity parity,
                        double lambda, const OdeOptions& opts) {
  const double d2 = profile.d2();
  if (!(lambda > 0.0 && lambda < d2))
    throw ConfigError("dispersion_value: lambda must lie in (0, d^2)");
  const auto v = phi_at(profile, parity, Complex(lambda, 0.0), profile.h(), opts);
  return std::sqrt(d2 - lambda) * v.phi.real() + v.dphi.real();
}

namespace {

// Core integral int_{-h}^{h} phi^2 dx by composite Simpson with the solver's
// multi-target pass (one integration per side).
double core_phi_sq_integral(const WaveguideProfile& profile, Parity parity,
                            double gamma, const OdeOptions& opts) {
  const int n = 512;  // even
  const double h = profile.h();
  std::vector<double> xs(n + 1);
  for (int i = 0; i <= n; ++i) xs[i] = -h + 2.0 * h * i / n;
  auto sol = solve_phi(profile, parity, Complex(gamma, 0.0), xs, opts);
  std::vector<Complex> f(n + 1);
  for (int i = 0; i <= n; ++i) f[i] = sol.phi[i] * sol.phi[i];
  return simpson(f, 2.0 * h / n).real();
}

GuidedMode build_mode(const WaveguideProfile& profile, Parity parity,
                      double gamma, const OdeOptions& opts) {
  GuidedMode m;
  m.gamma = gamma;
  m.parity = parity;
  const double kk = profile.k() * profile.n_star();
  m.beta = std::sqrt(kk * kk - gamma);
  m.kappa = std::sqrt(profile.d2() - gamma);
  auto sol = solve_phi(profile, parity, Complex(gamma, 0.0),
                       {-profile.h(), profile.h()}, opts);
  m.phi_mh = sol.phi[0].real();
  m.dphi_mh = sol.dphi[0].real();
  m.phi_h = sol.phi[1].real();
  m.dphi_h = sol.dphi[1].real();
  const double core = core_phi_sq_integral(profile, parity, gamma, opts);
  m.norm_r = m.kappa / (m.kappa * core + m.phi_h * m.phi_h);
  const double tails =
      (m.phi_h * m.phi_h + m.phi_mh * m.phi_mh) / (2.0 * m.kappa);
  m.norm_l2 = std::sqrt(core + tails);
  return m;
}

void scan_parity(const WaveguideProfile& profile, Parity parity,
                 const ModeSearchOptions& opts, std::vector<GuidedMode>* out) {
  const double d2 = profile.d2();
  const double eps = 1e-9 * d2;
  const double lo = eps, hi = d2 - eps;
  auto F = [&](double lam) {
    return dispersion_value(profile, parity, lam, opts.ode);
  };

  auto bisect = [&](double a, double b, double fa, double fb) {
    while (b - a > opts.root_tol * d2) {
      const double mid = 0.5 * (a + b);
      const double fm = F(mid);
      if ((fa < 0.0) == (fm < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
        fb = fm;
      }
    }
    return 0.5 * (a + b);
  };

  auto scan = [&](int points, std::vector<double>* roots) {
    double prev_x = lo, prev_f = F(lo);
    for (int i = 1; i <= points; ++i) {
      const double x = lo + (hi - lo) * i / points;
      const double f = F(x);
      if ((prev_f < 0.0) != (f < 0.0))
        roots->push_back(bisect(prev_x, x, prev_f, f));
      prev_x = x;
      prev_f = f;
    }
  };

  std::vector<double> roots;
  scan(opts.scan_points, &roots);
  // Refinement pass at 4x density; merges roots the coarse scan missed
  // (pairs of roots inside one scan cell).
  std::vector<double> refined;
  scan(4 * opts.scan_points, &refined);
  for (double r : refined) {
    bool known = false;
    for (double r0 : roots)
      if (std::abs(r - r0) < 10.0 * opts.root_tol * d2) known = true;
    if (!known) roots.push_back(r);
  }

  for (double r : roots) {
    if (r < 1e-10 || r > d2 - 1e-10) continue;  // cutoff-degenerate, rejected
    out->push_back(build_mode(profile, parity, r, opts.ode));
  }
}

}  // namespace

ModeTable find_guided_modes(const WaveguideProfile& profile,
                            const ModeSearchOptions& opts) {
  if (opts.scan_points < 64)
    throw ConfigError("find_guided_modes: scan_points must be >= 64");
  ModeTable table;
  if (profile.d2() <= 0.0) return table;  // no guided regime
  scan_parity(profile, Parity::Symmetric, opts, &table.modes);
  scan_parity(profile, Parity::Antisymmetric, opts, &table.modes);
  std::sort(table.modes.begin(), table.modes.end(),
            [](const GuidedMode& a, const GuidedMode& b) {
              return a.gamma < b.gamma;
            });
  for (const auto& m : table.modes)
    (m.parity == Parity::Symmetric ? table.count_symmetric
                                   : table.count_antisymmetric)++;
  return table;
}

ModeShapeValue mode_shape(const WaveguideProfile& profile,
                          const GuidedMode& mode, double x,
                          const OdeOptions& opts) {
  const double h = profile.h();
  const double inv = 1.0 / mode.norm_l2;
  if (x > h) {
    const double t = std::exp(-mode.kappa * (x - h));
    return {mode.phi_h * t * inv, -mode.kappa * mode.phi_h * t * inv};
  }
  if (x < -h) {
    const double t = std::exp(mode.kappa * (x + h));
    return {mode.phi_mh * t * inv, mode.kappa * mode.phi_mh * t * inv};
  }
  const auto v = phi_at(profile, mode.parity, Complex(mode.gamma, 0.0), x, opts);
  return {v.phi.real() * inv, v.dphi.real() * inv};
}

double mode_norm_bruteforce(const WaveguideProfile& profile,
                            const GuidedMode& mode, const OdeOptions& opts) {
  // Independent quadrature route: adaptive Gauss-Legendre panels on the core
  // (each evaluation its own ODE solve) plus the analytic tails.
  auto f = [&](double x) {
    const auto v =
        phi_at(profile, mode.parity, Complex(mode.gamma, 0.0), x, opts);
    return v.phi * v.phi;
  };
  const double core =
      integrate_adaptive(f, -profile.h(), profile.h(), 1e-12, 1e-11).real();
  const double tails =
      (mode.phi_h * mode.phi_h + mode.phi_mh * mode.phi_mh) / (2.0 * mode.kappa);
  return std::sqrt(core + tails);
}

}  // namespace owg
