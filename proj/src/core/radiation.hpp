#pragma once

#include <functional>
#include <vector>

#include "core/field.hpp"
#include "core/green.hpp"
#include "core/modes.hpp"
#include "core/profile.hpp"
#include "core/quadrature.hpp"
#include "core/types.hpp"

namespace owg {

// Level-set families for the radiation-condition boundaries: the stadium
// [x]_h^2 + z^2 = R^2 (two radius-R semicircles joined by segments of
// length 2h) and the square |x| = R or |z| = R.
enum class BoundaryFamily { OmegaStadium, QSquare };

struct BoundarySample {
  BoundaryFamily family = BoundaryFamily::OmegaStadium;
  double R = 0.0;
  double h = 0.0;
  std::vector<double> x, z;    // node positions
  std::vector<double> nx, nz;  // outward unit normals
  std::vector<double> w;       // arc-length weights (midpoint rule)
  // Piece index per node. Stadium: 0 top segment, 1 right arc, 2 bottom
  // segment, 3 left arc. Square: 0 face x=+R, 1 face x=-R, 2 face z=+R,
  // 3 face z=-R.
  std::vector<int> segment;

  int size() const { return static_cast<int>(x.size()); }
};

// Midpoint arc-length sampling of the level set; weights sum to the exact
// perimeter (2 pi R + 4h for the stadium, 8R for the square).
BoundarySample boundary_sample(BoundaryFamily family, double R, double h,
                               int n_points);

// A field component together with its gradient at a point.
struct FieldSample {
  Complex u{0.0, 0.0};
  Complex ux{0.0, 0.0};
  Complex uz{0.0, 0.0};
};
using FieldEvaluator = std::function<FieldSample(double, double)>;

// Guided component u_l(x,z) = e(x) U(z) of the field of `source`, with the
// analytic gradient (mode-shape derivative times U, and e times U'). l is
// 1-based. U' is assembled as i beta sgn(z-zeta) times the same product used
// for u, so z-face residuals vanish exactly in floating point.
FieldEvaluator guided_component_evaluator(const WaveguideProfile& profile,
                                          const ModeTable& modes, int l,
                                          const SourceSpec& source,
                                          const OdeOptions& opts = {});

// Radiative component u_0 = int G^rad f, gradients from the contour route
// (real-axis route on nodes sharing z with a source node).
FieldEvaluator radiative_component_evaluator(const WaveguideProfile& profile,
                                             const ModeTable& modes,
                                             const SourceSpec& source,
                                             const QuadOptions& quad = {});

// Boundary residual of one component: integral of |d_nu u - i beta u|^2
// over the sampled boundary, plus the unsquared sup-node residual (the
// quantity with the proved O(R^{-3/2}) rate). segment_filter >= 0 restricts
// to one boundary piece.
struct ResidualReport {
  double integral = 0.0;
  double sup = 0.0;
  int nodes = 0;
};
ResidualReport radiation_residual(const FieldEvaluator& component, double beta,
                                  const BoundarySample& boundary,
                                  int segment_filter = -1);

// Least-squares decay-rate fit: log(value) against log(R) (power law) or
// against R (exponential).
enum class FitMode { PowerLaw, Exponential };
LineFit decay_slope(const std::vector<double>& R_values,
                    const std::vector<double>& values,
                    FitMode mode = FitMode::PowerLaw);

// Energy flux Im oint conj(u) d_nu u dl on two nested boundaries enclosing
// the source; equality is the quadrature shadow of the flux identity.
struct FluxReport {
  double flux1 = 0.0;
  double flux2 = 0.0;
  double rel_diff = 0.0;
};
FluxReport flux_balance(const FieldEvaluator& field,
                        const BoundarySample& inner,
                        const BoundarySample& outer);

// Defect |int e(x, gamma_l) v(x, lambda) dx| for one parity family of the
// continuous spectrum, lambda > d^2. Core part by quadrature on
// [-W, W], W = h * max(1, halfwidth_factor); the tails analytically
// (exponential times sinusoid antiderivatives). l is 1-based.
double orthogonality_defect(const WaveguideProfile& profile,
                            const ModeTable& modes, int l, Parity parity,
                            double lambda, double halfwidth_factor = 1.0,
                            const OdeOptions& opts = {});
// Max over both parity families.
double orthogonality_defect(const WaveguideProfile& profile,
                            const ModeTable& modes, int l, double lambda,
                            double halfwidth_factor = 1.0,
                            const OdeOptions& opts = {});

// Cumulative boundary-residual integral over an R range for an M = 0
// profile, where the level sets degenerate to circles and the condition
// reduces to the classical one. cumulative[i] is the trapezoid partial
// integral of `integrals` up to R_values[i].
struct RellichReport {
  std::vector<double> R_values;
  std::vector<double> integrals;   // I(R) = int_{|x|=R} |d_nu u - i beta0 u|^2
  std::vector<double> cumulative;  // int_{R_0}^{R} I dR
};
RellichReport rellich_reduction_check(const WaveguideProfile& profile,
                                      const ModeTable& modes,
                                      const FieldEvaluator& field,
                                      const std::vector<double>& R_values,
                                      int n_points = 128);

// Aggregated radiation-condition diagnostics for the field of `source`:
// per-component residuals across R, cumulative R-integrals, and fitted
// decay slopes. The default mixes families (stadium for u_0, square for the
// guided components); compact_single_family puts every component on the
// stadium (experimental compact form).
struct RadiationReport {
  std::vector<double> R_values;
  // residuals[i][l]: component l at R_values[i]; l = 0 is u_0, l >= 1 the
  // guided components.
  std::vector<std::vector<double>> residuals;
  std::vector<std::vector<double>> sup_residuals;
  std::vector<std::vector<double>> cumulative;
  std::vector<double> slopes;  // log-log slope of the sup residual per l
};
RadiationReport radiation_report(const WaveguideProfile& profile,
                                 const ModeTable& modes,
                                 const SourceSpec& source,
                                 const std::vector<double>& R_values,
                                 int n_points = 128,
                                 bool compact_single_family = false,
                                 const QuadOptions& quad = {});

}  // namespace owg
