#pragma once

#include <functional>
#include <vector>

#include "core/green.hpp"
#include "core/modes.hpp"
#include "core/profile.hpp"
#include "core/types.hpp"

namespace owg {

enum class SourceKind { PointSet, GridDensity };

struct SourceNode {
  double x, z;
  Complex w;
};

// Compactly supported source: either explicit weighted points or a density
// sampled at the midpoints of a uniform cell grid filling the support box.
struct SourceSpec {
  SourceKind kind = SourceKind::PointSet;
  std::vector<SourceNode> points;  // point_set
  int nx = 0, nz = 0;              // grid_density cell counts
  std::vector<Complex> density;    // cell-midpoint samples, [ix*nz+iz]
  double x0 = 0, x1 = 0, z0 = 0, z1 = 0;  // support box
};

SourceSpec make_point_source(double x, double z, Complex w = Complex(1.0, 0.0));
SourceSpec make_grid_density(const std::function<Complex(double, double)>& f,
                             double x0, double x1, double z0, double z1,
                             int nx, int nz);

void validate_source(const SourceSpec& source);

// Quadrature nodes of the source: the points themselves, or midpoint-rule
// nodes with weight f * cell area.
std::vector<SourceNode> source_nodes(const SourceSpec& source);

struct FieldGrid {
  std::vector<double> x_nodes, z_nodes;
  std::vector<Complex> u;                      // [ix * nz + iz]
  std::vector<std::vector<Complex>> u_guided;  // one grid per mode
  std::vector<Complex> u_rest;
  SourceSpec source;

  int index(int ix, int iz) const {
    return ix * static_cast<int>(z_nodes.size()) + iz;
  }
};

// u(x,z) = int G(x,z;xi,zeta) f(xi,zeta) dxi dzeta, with the guided and
// radiative parts accumulated separately. The radiative part uses the
// contour route, falling back to the real route on nodes sharing z with a
// source node.
FieldGrid synthesize_field(const WaveguideProfile& profile,
                           const ModeTable& modes, const SourceSpec& source,
                           std::vector<double> x_nodes,
                           std::vector<double> z_nodes,
                           const QuadOptions& quad = {});

struct GuidedEval {
  Complex U;                 // U(z, gamma_l)
  std::vector<Complex> u_l;  // e(x, gamma_l) U at the requested x's
};

// Route B: the guided component directly from the source,
// U(z) = sum w e(xi) e^{i beta_l |z - zeta|} / (2 i beta_l). l is 1-based.
GuidedEval guided_component_source(const WaveguideProfile& profile,
                                   const ModeTable& modes, int l,
                                   const SourceSpec& source, double z,
                                   const std::vector<double>& x_eval,
                                   const OdeOptions& opts = {});

// Route A: overlap U(z) = int u(x,z) e(x) dx from a sampled x-line
// (uniform, endpoints beyond the core), composite rule on the samples plus
// the analytic exponential-tail correction of the mode's own mass.
Complex guided_overlap_line(const WaveguideProfile& profile,
                            const ModeTable& modes, int l,
                            const std::vector<double>& x_line,
                            const std::vector<Complex>& u_line,
                            const OdeOptions& opts = {});

// u_0 = u - sum_l u_l per node.
std::vector<Complex> remainder_component(const FieldGrid& field);

struct PdeResidualReport {
  double max_residual = 0.0;
  double scale = 0.0;  // k^2 max|u|, the natural comparison scale
  int nodes_checked = 0;
};

// 5-point discrete Helmholtz residual max |L_h u + k^2 n^2 u - f| over
// interior nodes at least two cells from x = +-h and from the (inflated)
// source support boundary.
PdeResidualReport pde_residual(const WaveguideProfile& profile,
                               const FieldGrid& field,
                               const SourceSpec& source);

}  // namespace owg
