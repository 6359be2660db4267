#include "core/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace owg {

namespace {

GaussRule compute_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
  return it->second;
}

Complex integrate_panels(const std::function<Complex(double)>& f, double a,
                         double b, int panels, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double dx = (b - a) / panels;
  Complex sum{0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * dx;
    const double mid = lo + 0.5 * dx;
    const double half = 0.5 * dx;
    Complex panel{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    sum += half * panel;
  }
  return sum;
}

Complex integrate_adaptive(const std::function<Complex(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           int initial_panels, int max_panels, int order) {
  if (a == b) return {0.0, 0.0};
  int panels = initial_panels;
  Complex prev = integrate_panels(f, a, b, panels, order);
  while (panels < max_panels) {
    panels *= 2;
    Complex cur = integrate_panels(f, a, b, panels, order);
    if (std::abs(cur - prev) <= abs_tol + rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw NumericError("integrate_adaptive: panel limit reached on [" +
                     std::to_string(a) + ", " + std::to_string(b) + "]");
}

Complex simpson(const std::vector<Complex>& samples, double spacing) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0)
    throw ConfigError("simpson: need an odd number (>= 3) of samples");
  Complex sum = samples.front() + samples.back();
  for (std::size_t i = 1; i + 1 < n; ++i)
    sum += samples[i] * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * (spacing / 3.0);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigError("fit_line: need >= 2 matched samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace owg
