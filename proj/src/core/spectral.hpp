#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/modes.hpp"
#include "core/ode.hpp"
#include "core/profile.hpp"
#include "core/types.hpp"

namespace owg {

// Decomposition x = [x]_h + {x}_h with [x]_h = 0 on [-h, h].
struct BracketPair {
  double bracket;  // [x]_h
  double frac;     // {x}_h, always in [-h, h]
};
BracketPair bracket_maps(double x, double h);

// Extended (continuum) eigenfunction v_j(x, lambda) for lambda > d^2.
double v_continuum(const WaveguideProfile& profile, Parity parity,
                   double lambda, double x, const OdeOptions& opts = {});

// Spectral weight sigma_j(lambda) = (lambda-d^2) /
// ((lambda-d^2) phi_j(h)^2 + phi_j'(h)^2), lambda > d^2.
double sigma_weight(const WaveguideProfile& profile, Parity parity,
                    double lambda, const OdeOptions& opts = {});

// Phi_j(x, tau) = phi_j({x}_h, d^2+tau^2) + phi_j'({x}_h, d^2+tau^2)/(i tau).
Complex big_phi(const WaveguideProfile& profile, Parity parity, double x,
                Complex tau, const OdeOptions& opts = {});

// Leading large-|tau| approximation of Phi_j (used for convergence-rate
// checks only): [1 + i/(2 tau) int_0^{{x}_h} p] e^{i tau {x}_h}, times
// sqrt(tau^2+d^2)/(i tau) for the antisymmetric family.
Complex phi_asymptotic(const WaveguideProfile& profile, Parity parity,
                       double x, Complex tau);

// Contour kernel g(x, xi; t) of the complex-plane representation of G^rad.
// Throws NumericError when beta0^2 sin^2 t + d^2 comes too close to a
// guided-mode pole from `modes` (pass nullptr to skip the guard).
Complex g_kernel(const WaveguideProfile& profile, const ModeTable* modes,
                 double x, double xi, Complex t, const OdeOptions& opts = {});

// Leading asymptotic form of g (Lemma-level cross-check):
// (1/4 pi i) e^{i beta0 ({x}_h - xi) sin t} [1 + i/(2 beta0 sin t)
// int_{{xi}_h}^{{x}_h} p].
Complex g_kernel_asymptotic(const WaveguideProfile& profile, double x,
                            double xi, Complex t);

// int_a^b p(y) dy for the profile's complement potential.
double p_integral(const WaveguideProfile& profile, double a, double b);

struct ContourSegment {
  std::string name;                    // "G1".."G5"
  double a, b;                         // parameter range, contour direction
  std::function<Complex(double)> t;    // parameter -> point in the t-plane
  std::function<Complex(double)> dt;   // dt/ds
};

struct ContourNode {
  Complex t;
  Complex weight;  // Gauss weight times dt/ds
};

struct ContourPath {
  double theta = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double y0 = 0.0;         // Gamma_3 half-range in the steepest-descent var
  double c_bound = 0.0;    // lower bound for Im cos(t-theta) off Gamma_3
  double t2_trunc = 0.0;   // |Im t| where Gamma_1/Gamma_5 are cut off
  std::vector<ContourSegment> segments;

  // Fixed diagnostic discretization: `panels` panels of order-16 Gauss
  // nodes per segment, weights including dt/ds.
  std::vector<ContourNode> sample_nodes(int panels_per_segment) const;
};

// Deformed contour C_theta = Gamma_1 u ... u Gamma_5. gamma_M is taken from
// `modes` (0 when empty); r_min is the smallest observation radius the
// contour will be used for and controls the truncation of the unbounded
// legs together with truncation_eps.
ContourPath build_contour(const WaveguideProfile& profile,
                          const ModeTable& modes, double theta,
                          double truncation_eps = 1e-12, double r_min = 1.0);

}  // namespace owg
