#pragma once

#include <vector>

#include "core/ode.hpp"
#include "core/profile.hpp"

namespace owg {

struct GuidedMode {
  double gamma;    // eigenvalue in (0, d^2)
  Parity parity;
  double beta;     // propagation constant sqrt(k^2 n_*^2 - gamma)
  double kappa;    // tail decay rate sqrt(d^2 - gamma)
  double norm_r;   // normalization r = 1 / int v^2 dx (closed form)
  double norm_l2;  // ||v||_2 over the whole line
  double phi_h, dphi_h;    // core solution boundary data at +h
  double phi_mh, dphi_mh;  // and at -h
};

struct ModeTable {
  std::vector<GuidedMode> modes;  // sorted by gamma, increasing
  int count_symmetric = 0;
  int count_antisymmetric = 0;

  int size() const { return static_cast<int>(modes.size()); }
  bool empty() const { return modes.empty(); }
  // Max eigenvalue (the paper's gamma_*); only valid when non-empty.
  double gamma_star() const;
};

struct ModeSearchOptions {
  int scan_points = 512;
  double root_tol = 1e-12;
  OdeOptions ode;
};

// F_j(lambda) = sqrt(d^2 - lambda) phi_j(h, lambda) + phi_j'(h, lambda),
// real for real lambda in (0, d^2).
double dispersion_value(const WaveguideProfile& profile, Parity parity,
                        double lambda, const OdeOptions& opts = {});

// Sign-scan + bisection over (0, d^2) for both parities, with one refinement
// pass guarding against two roots per scan cell.
ModeTable find_guided_modes(const WaveguideProfile& profile,
                            const ModeSearchOptions& opts = {});

// Normalized mode shape e(x, gamma_l) and its x-derivative, valid on all of
// R (exact exponential tails outside the core).
struct ModeShapeValue {
  double e;
  double de;
};
ModeShapeValue mode_shape(const WaveguideProfile& profile,
                          const GuidedMode& mode, double x,
                          const OdeOptions& opts = {});

// Brute-force norm: quadrature over the core plus analytic tail integrals;
// cross-checks GuidedMode::norm_r.
double mode_norm_bruteforce(const WaveguideProfile& profile,
                            const GuidedMode& mode,
                            const OdeOptions& opts = {});

}  // namespace owg
