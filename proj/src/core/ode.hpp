#pragma once

#include <vector>

#include "core/profile.hpp"
#include "core/types.hpp"

namespace owg {

// Solver tolerances for the core equation phi'' + [lambda - q(x)] phi = 0.
struct OdeOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
};

struct PhiSolution {
  Parity parity;
  Complex lambda;
  std::vector<double> x_values;
  std::vector<Complex> phi;
  std::vector<Complex> dphi;
  bool degenerate = false;  // antisymmetric lambda=0 case: phi identically 0
};

struct PhiValue {
  Complex phi;
  Complex dphi;
};

// Integrates the core equation from x=0 outward with the parity's initial
// data (phi_s(0)=1, phi_s'(0)=0; phi_a(0)=0, phi_a'(0)=sqrt(lambda),
// principal branch). Targets must lie in [-h, h]; steps land on q's table
// breakpoints.
PhiSolution solve_phi(const WaveguideProfile& profile, Parity parity,
                      Complex lambda, std::vector<double> x_targets,
                      const OdeOptions& opts = {});

PhiValue phi_at(const WaveguideProfile& profile, Parity parity, Complex lambda,
                double x, const OdeOptions& opts = {});

// Independent cross-check: successive substitution on the Volterra equation
//   phi(x) = phi'(0)/tau sin(tau x) + phi(0) cos(tau x)
//            - (1/tau) int_0^x p(y) sin(tau (x-y)) phi(y) dy,
// with tau^2 = lambda - d^2, tau != 0.
PhiValue solve_phi_volterra(const WaveguideProfile& profile, Parity parity,
                            Complex lambda, double x, int max_iter = 64,
                            double tol = 1e-13);

}  // namespace owg
