#pragma once

#include <vector>

#include "core/modes.hpp"
#include "core/profile.hpp"
#include "core/spectral.hpp"
#include "core/types.hpp"

namespace owg {

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  OdeOptions ode;
};

// Per-mode guided contributions G_l^g = e^{i beta_l |z-zeta|}/(2 i beta_l)
// e(x) e(xi).
std::vector<Complex> green_guided(const WaveguideProfile& profile,
                                  const ModeTable& modes, double x, double z,
                                  double xi, double zeta,
                                  const OdeOptions& opts = {});

// Radiating part by the real-axis spectral integral (substituted to remove
// the endpoint square-root singularity). Evaluated as the free-space term
// H0(beta0 rho)/4i plus the spectral correction integral of
// D(tau) = sum_j v_j(x) v_j(xi) sigma_j - cos(tau (x-xi)), whose evanescent
// tail decays even when |z-zeta| is small.
Complex green_rad_real(const WaveguideProfile& profile, const ModeTable& modes,
                       double x, double z, double xi, double zeta,
                       const QuadOptions& quad = {});

struct GreenRadEval {
  Complex value;
  Complex grad_x;
  Complex grad_z;
};

// Real-axis route with the analytically differentiated integrand (valid for
// every x, including the core interior).
GreenRadEval green_rad_real_grad(const WaveguideProfile& profile,
                                 const ModeTable& modes, double x, double z,
                                 double xi, double zeta,
                                 const QuadOptions& quad = {});

// Radiating part by the complex-contour route over the deformed C_theta,
// theta taken from the observation geometry. Gradients come from the
// analytically differentiated contour integrand (x-component falls back to
// the real route inside the core). Requires z != zeta.
GreenRadEval green_rad_contour(const WaveguideProfile& profile,
                               const ModeTable& modes, double x, double z,
                               double xi, double zeta,
                               const QuadOptions& quad = {},
                               bool want_grad = false,
                               double theta_hint = -1.0);

enum class RadRoute { Real, Contour };

struct GreenParts {
  std::vector<Complex> guided;
  Complex radiative{0.0, 0.0};
  Complex total{0.0, 0.0};
  Complex grad_x{0.0, 0.0};
  Complex grad_z{0.0, 0.0};
  bool has_grad = false;
};

// Full Green's function G = sum_l G_l^g + G^rad.
GreenParts green_total(const WaveguideProfile& profile, const ModeTable& modes,
                       double x, double z, double xi, double zeta,
                       RadRoute route = RadRoute::Contour,
                       const QuadOptions& quad = {}, bool want_grad = false);

// Minimal source/observation separation accepted by the evaluators.
double coincidence_limit(const WaveguideProfile& profile);

}  // namespace owg
