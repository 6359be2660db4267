#pragma once

#include <functional>
#include <vector>

#include "core/types.hpp"

namespace owg {

// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
// Newton iteration on the Legendre polynomial.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

// Integrates f over [a, b] with `panels` equal Gauss-Legendre panels of the
// given order.
Complex integrate_panels(const std::function<Complex(double)>& f, double a,
                         double b, int panels, int order = 16);

// Panel-doubling integrator: starts from `initial_panels` and doubles until
// two successive values differ by less than abs_tol + rel_tol*|I|.
// Throws NumericError if max_panels is exceeded.
Complex integrate_adaptive(const std::function<Complex(double)>& f, double a,
                           double b, double abs_tol, double rel_tol = 0.0,
                           int initial_panels = 4, int max_panels = 1 << 14,
                           int order = 16);

// Composite Simpson rule on a uniformly sampled interval (odd sample count).
Complex simpson(const std::vector<Complex>& samples, double spacing);

// Least-squares line fit y = slope*x + intercept; returns rms residual too.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace owg
