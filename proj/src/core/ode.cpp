#include "core/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace owg {

namespace {

struct State {
  Complex phi;
  Complex dphi;
};

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,           7571.0 / 16695,
                           393.0 / 640,     -92097.0 / 339200,
                           187.0 / 2100,    1.0 / 40};

class Stepper {
 public:
  Stepper(const WaveguideProfile& profile, Complex lambda,
          const OdeOptions& opts)
      : profile_(profile), lambda_(lambda), opts_(opts) {}

  State rhs(double x, const State& y) const {
    const double q = profile_.potential_at(x).q;
    return {y.dphi, (q - lambda_) * y.phi};
  }

  // Integrates from x to x_end (either direction), adapting the step size.
  State advance(State y, double x, double x_end) const {
    const double dir = x_end >= x ? 1.0 : -1.0;
    double step = dir * std::min(0.1, std::abs(x_end - x));
    if (step == 0.0) return y;
    int rejects_in_a_row = 0;
    while (dir * (x_end - x) > 0.0) {
      if (dir * (x + step) > dir * x_end) step = x_end - x;
      std::array<State, 7> k;
      k[0] = rhs(x, y);
      for (int i = 1; i < 7; ++i) {
        State yi = y;
        for (int j = 0; j < i; ++j) {
          yi.phi += step * kA[i][j] * k[j].phi;
          yi.dphi += step * kA[i][j] * k[j].dphi;
        }
        k[i] = rhs(x + kC[i] * step, yi);
      }
      State y5 = y, y4 = y;
      for (int i = 0; i < 7; ++i) {
        y5.phi += step * kB5[i] * k[i].phi;
        y5.dphi += step * kB5[i] * k[i].dphi;
        y4.phi += step * kB4[i] * k[i].phi;
        y4.dphi += step * kB4[i] * k[i].dphi;
      }
      const double scale =
          opts_.abs_tol +
          opts_.rel_tol * std::max({std::abs(y5.phi), std::abs(y5.dphi), 1.0});
      const double err =
          std::max(std::abs(y5.phi - y4.phi), std::abs(y5.dphi - y4.dphi)) /
          scale;
      if (err <= 1.0) {
        x += step;
        y = y5;
        rejects_in_a_row = 0;
      } else if (++rejects_in_a_row > 64) {
        throw NumericError("solve_phi: step-size underflow near x = " +
                           std::to_string(x));
      }
      double factor = 0.9 * std::pow(err > 0.0 ? err : 1e-16, -0.2);
      factor = std::clamp(factor, 0.2, 5.0);
      step *= factor;
      // A sub-epsilon step is a stall only if a real distance remains; a
      // near-finished leg just clamps to the remainder and exits.
      if (std::abs(step) < 1e-14 * (1.0 + std::abs(x)) &&
          dir * (x_end - x) > 1e-14 * (1.0 + std::abs(x)))
        throw NumericError("solve_phi: step-size underflow near x = " +
                           std::to_string(x));
    }
    return y;
  }

 private:
  const WaveguideProfile& profile_;
  Complex lambda_;
  const OdeOptions& opts_;
};

// Cumulative integral of uniformly sampled values: Simpson pairs for even
// indices, a quadratic-fit increment for odd ones (globally third order).
std::vector<Complex> cumulative_integral(const std::vector<Complex>& f,
                                         double dx) {
  std::vector<Complex> out(f.size());
  out[0] = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (i == 1) {
      out[1] = dx / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
    } else if (i % 2 == 0) {
      out[i] = out[i - 2] + dx / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    } else {
      out[i] = out[i - 1] + dx / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
    }
  }
  return out;
}

State initial_state(Parity parity, Complex lambda) {
  if (parity == Parity::Symmetric) return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  return {Complex(0.0, 0.0), std::sqrt(lambda)};
}

}  // namespace

PhiSolution solve_phi(const WaveguideProfile& profile, Parity parity,
                      Complex lambda, std::vector<double> x_targets,
                      const OdeOptions& opts) {
  for (double x : x_targets)
    if (std::abs(x) > profile.h() * (1.0 + 1e-12))
      throw ConfigError("solve_phi: target outside [-h, h]");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw ConfigError("solve_phi: lambda must be finite");

  PhiSolution sol;
  sol.parity = parity;
  sol.lambda = lambda;
  sol.x_values = x_targets;
  sol.phi.resize(x_targets.size());
  sol.dphi.resize(x_targets.size());
  sol.degenerate = parity == Parity::Antisymmetric && lambda == 0.0;

  // Index targets by side, sorted by distance from the origin.
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < x_targets.size(); ++i)
    (x_targets[i] >= 0.0 ? pos : neg).push_back(i);
  std::sort(pos.begin(), pos.end(),
            [&](std::size_t a, std::size_t b) { return x_targets[a] < x_targets[b]; });
  std::sort(neg.begin(), neg.end(),
            [&](std::size_t a, std::size_t b) { return x_targets[a] > x_targets[b]; });

  Stepper stepper(profile, lambda, opts);
  for (int side = 0; side < 2; ++side) {
    const auto& order = side == 0 ? pos : neg;
    if (order.empty()) continue;
    State y = initial_state(parity, lambda);
    double x = 0.0;
    for (std::size_t idx : order) {
      // Split each leg at the q breakpoints it crosses.
      double x_end = x_targets[idx];
      std::vector<double> stops;
      for (double b : profile.breakpoints())
        if ((x < b && b < x_end) || (x_end < b && b < x)) stops.push_back(b);
      std::sort(stops.begin(), stops.end());
      if (x_end < x) std::reverse(stops.begin(), stops.end());
      stops.push_back(x_end);
      for (double s : stops) {
        y = stepper.advance(y, x, s);
        x = s;
      }
      sol.phi[idx] = y.phi;
      sol.dphi[idx] = y.dphi;
    }
  }
  return sol;
}

PhiValue phi_at(const WaveguideProfile& profile, Parity parity, Complex lambda,
                double x, const OdeOptions& opts) {
  auto sol = solve_phi(profile, parity, lambda, {x}, opts);
  return {sol.phi[0], sol.dphi[0]};
}

PhiValue solve_phi_volterra(const WaveguideProfile& profile, Parity parity,
                            Complex lambda, double x, int max_iter,
                            double tol) {
  if (std::abs(x) > profile.h() * (1.0 + 1e-12))
    throw ConfigError("solve_phi_volterra: x outside [-h, h]");
  const Complex tau2 = lambda - profile.d2();
  const Complex tau = std::sqrt(tau2);
  if (tau == 0.0)
    throw ConfigError("solve_phi_volterra: tau = 0 (lambda = d^2)");

  const int n = 2000;  // Simpson grid on [0, x]
  const double dx = x / n;
  std::vector<double> xs(n + 1), p(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = dx * i;
    p[i] = profile.potential_at(xs[i]).p;
  }
  const Complex phi0 = parity == Parity::Symmetric ? 1.0 : 0.0;
  const Complex dphi0 = parity == Parity::Symmetric ? 0.0 : std::sqrt(lambda);

  std::vector<Complex> cur(n + 1), next(n + 1);
  for (int i = 0; i <= n; ++i)
    cur[i] = dphi0 / tau * std::sin(tau * xs[i]) + phi0 * std::cos(tau * xs[i]);
  const std::vector<Complex> inhom = cur;

  for (int it = 0; it < max_iter; ++it) {
    // next(x_i) = inhom(x_i) - (1/tau) int_0^{x_i} p sin(tau (x_i - y)) cur(y) dy
    // expanded via sin(a-b) so the two running integrals update in O(1).
    std::vector<Complex> f_sin(n + 1), f_cos(n + 1);
    for (int i = 0; i <= n; ++i) {
      f_sin[i] = p[i] * std::sin(tau * xs[i]) * cur[i];
      f_cos[i] = p[i] * std::cos(tau * xs[i]) * cur[i];
    }
    const auto int_cos = cumulative_integral(f_cos, dx);
    const auto int_sin = cumulative_integral(f_sin, dx);
    next[0] = inhom[0];
    for (int i = 1; i <= n; ++i) {
      next[i] = inhom[i] - (std::sin(tau * xs[i]) * int_cos[i] -
                            std::cos(tau * xs[i]) * int_sin[i]) /
                               tau;
    }
    double diff = 0.0, scale = 1.0;
    for (int i = 0; i <= n; ++i) {
      diff = std::max(diff, std::abs(next[i] - cur[i]));
      scale = std::max(scale, std::abs(next[i]));
    }
    cur.swap(next);
    if (diff <= tol * scale) {
      // Derivative from the differentiated Volterra equation.
      std::vector<Complex> g_sin(n + 1), g_cos(n + 1);
      for (int i = 0; i <= n; ++i) {
        g_sin[i] = p[i] * std::sin(tau * xs[i]) * cur[i];
        g_cos[i] = p[i] * std::cos(tau * xs[i]) * cur[i];
      }
      const Complex ic = cumulative_integral(g_cos, dx).back();
      const Complex is = cumulative_integral(g_sin, dx).back();
      const Complex dphi = dphi0 * std::cos(tau * x) -
                           phi0 * tau * std::sin(tau * x) -
                           (std::cos(tau * x) * ic + std::sin(tau * x) * is);
      return {cur[n], dphi};
    }
  }
  throw NumericError("solve_phi_volterra: no convergence within max_iter");
}

}  // namespace owg
