#include "core/field.hpp"

#include <algorithm>
#include <cmath>

#include "core/quadrature.hpp"

namespace owg {

SourceSpec make_point_source(double x, double z, Complex w) {
  SourceSpec s;
  s.kind = SourceKind::PointSet;
  s.points.push_back({x, z, w});
  s.x0 = s.x1 = x;
  s.z0 = s.z1 = z;
  return s;
}

SourceSpec make_grid_density(const std::function<Complex(double, double)>& f,
                             double x0, double x1, double z0, double z1,
                             int nx, int nz) {
  if (!(x1 > x0 && z1 > z0) || nx < 1 || nz < 1)
    throw ConfigError("make_grid_density: empty support box or cell grid");
  SourceSpec s;
  s.kind = SourceKind::GridDensity;
  s.nx = nx;
  s.nz = nz;
  s.x0 = x0;
  s.x1 = x1;
  s.z0 = z0;
  s.z1 = z1;
  const double dx = (x1 - x0) / nx, dz = (z1 - z0) / nz;
  s.density.reserve(static_cast<std::size_t>(nx) * nz);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nz; ++j)
      s.density.push_back(f(x0 + (i + 0.5) * dx, z0 + (j + 0.5) * dz));
  return s;
}

void validate_source(const SourceSpec& source) {
  for (double v : {source.x0, source.x1, source.z0, source.z1})
    if (!std::isfinite(v))
      throw ConfigError("source: support box must be compact");
  if (source.kind == SourceKind::PointSet) {
    for (const auto& p : source.points)
      if (!std::isfinite(p.x) || !std::isfinite(p.z) ||
          !std::isfinite(std::abs(p.w)))
        throw ConfigError("source: point set entries must be finite");
  } else {
    if (source.nx < 1 || source.nz < 1 ||
        source.density.size() !=
            static_cast<std::size_t>(source.nx) * source.nz)
      throw ConfigError("source: density sample count mismatch");
  }
}

std::vector<SourceNode> source_nodes(const SourceSpec& source) {
  validate_source(source);
  if (source.kind == SourceKind::PointSet) return source.points;
  std::vector<SourceNode> nodes;
  nodes.reserve(source.density.size());
  const double dx = (source.x1 - source.x0) / source.nx;
  const double dz = (source.z1 - source.z0) / source.nz;
  const double area = dx * dz;
  for (int i = 0; i < source.nx; ++i)
    for (int j = 0; j < source.nz; ++j)
      nodes.push_back({source.x0 + (i + 0.5) * dx, source.z0 + (j + 0.5) * dz,
                       source.density[static_cast<std::size_t>(i) * source.nz +
                                      j] *
                           area});
  return nodes;
}

FieldGrid synthesize_field(const WaveguideProfile& profile,
                           const ModeTable& modes, const SourceSpec& source,
                           std::vector<double> x_nodes,
                           std::vector<double> z_nodes,
                           const QuadOptions& quad) {
  const auto src = source_nodes(source);
  const double limit = coincidence_limit(profile);
  for (double x : x_nodes)
    for (double z : z_nodes)
      for (const auto& s : src)
        if (std::hypot(x - s.x, z - s.z) < limit)
          throw NumericError(
              "synthesize_field: observation node coincides with a source "
              "quadrature node");

  FieldGrid field;
  field.x_nodes = std::move(x_nodes);
  field.z_nodes = std::move(z_nodes);
  field.source = source;
  const int nx = static_cast<int>(field.x_nodes.size());
  const int nz = static_cast<int>(field.z_nodes.size());
  const std::size_t n = static_cast<std::size_t>(nx) * nz;
  field.u.assign(n, Complex(0.0, 0.0));
  field.u_rest.assign(n, Complex(0.0, 0.0));
  field.u_guided.assign(modes.modes.size(),
                        std::vector<Complex>(n, Complex(0.0, 0.0)));

  // Mode shapes depend on x only; evaluate once per distinct x.
  std::vector<std::vector<ModeShapeValue>> e_node(modes.modes.size());
  std::vector<std::vector<ModeShapeValue>> e_src(modes.modes.size());
  for (std::size_t l = 0; l < modes.modes.size(); ++l) {
    for (double x : field.x_nodes)
      e_node[l].push_back(mode_shape(profile, modes.modes[l], x, quad.ode));
    for (const auto& s : src)
      e_src[l].push_back(mode_shape(profile, modes.modes[l], s.x, quad.ode));
  }

  for (int ix = 0; ix < nx; ++ix) {
    for (int iz = 0; iz < nz; ++iz) {
      const double x = field.x_nodes[ix], z = field.z_nodes[iz];
      const int idx = field.index(ix, iz);
      for (std::size_t is = 0; is < src.size(); ++is) {
        const auto& s = src[is];
        for (std::size_t l = 0; l < modes.modes.size(); ++l) {
          const auto& m = modes.modes[l];
          const Complex g = std::exp(kI * m.beta * std::abs(z - s.z)) /
                            (2.0 * kI * m.beta) * e_node[l][ix].e *
                            e_src[l][is].e;
          field.u_guided[l][idx] += g * s.w;
        }
        const Complex grad =
            z != s.z
                ? green_rad_contour(profile, modes, x, z, s.x, s.z, quad).value
                : green_rad_real(profile, modes, x, z, s.x, s.z, quad);
        field.u_rest[idx] += grad * s.w;
      }
      field.u[idx] = field.u_rest[idx];
      for (std::size_t l = 0; l < modes.modes.size(); ++l)
        field.u[idx] += field.u_guided[l][idx];
    }
  }
  return field;
}

namespace {

const GuidedMode& checked_mode(const ModeTable& modes, int l) {
  if (l < 1 || l > modes.size())
    throw ConfigError("guided_component: mode index out of range");
  return modes.modes[static_cast<std::size_t>(l - 1)];
}

}  // namespace

GuidedEval guided_component_source(const WaveguideProfile& profile,
                                   const ModeTable& modes, int l,
                                   const SourceSpec& source, double z,
                                   const std::vector<double>& x_eval,
                                   const OdeOptions& opts) {
  const GuidedMode& m = checked_mode(modes, l);
  GuidedEval out;
  out.U = Complex(0.0, 0.0);
  for (const auto& s : source_nodes(source)) {
    const auto e = mode_shape(profile, m, s.x, opts);
    out.U += s.w * e.e * std::exp(kI * m.beta * std::abs(z - s.z)) /
             (2.0 * kI * m.beta);
  }
  out.u_l.reserve(x_eval.size());
  for (double x : x_eval)
    out.u_l.push_back(mode_shape(profile, m, x, opts).e * out.U);
  return out;
}

Complex guided_overlap_line(const WaveguideProfile& profile,
                            const ModeTable& modes, int l,
                            const std::vector<double>& x_line,
                            const std::vector<Complex>& u_line,
                            const OdeOptions& opts) {
  const GuidedMode& m = checked_mode(modes, l);
  const std::size_t n = x_line.size();
  if (n < 3 || u_line.size() != n)
    throw ConfigError("guided_overlap_line: need matched samples, >= 3");
  const double h = profile.h();
  if (x_line.front() > -h || x_line.back() < h)
    throw ConfigError("guided_overlap_line: line must cover the core");
  const double dx = (x_line.back() - x_line.front()) / (n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs(x_line[i + 1] - x_line[i] - dx) > 1e-9 * (1.0 + dx))
      throw ConfigError("guided_overlap_line: line must be uniform");

  std::vector<Complex> f(n);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = u_line[i] * mode_shape(profile, m, x_line[i], opts).e;
  Complex overlap;
  if (n % 2 == 1) {
    overlap = simpson(f, dx);
  } else {
    overlap = Complex(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
      overlap += 0.5 * dx * (f[i] + f[i + 1]);
  }
  // The truncated line misses the mode's own exponential tails; divide out
  // the missing mass (u ~ e U beyond the line by hypothesis).
  const double e_lo = mode_shape(profile, m, x_line.front(), opts).e;
  const double e_hi = mode_shape(profile, m, x_line.back(), opts).e;
  const double missing = (e_lo * e_lo + e_hi * e_hi) / (2.0 * m.kappa);
  return overlap / (1.0 - missing);
}

std::vector<Complex> remainder_component(const FieldGrid& field) {
  std::vector<Complex> u0 = field.u;
  for (const auto& ul : field.u_guided)
    for (std::size_t i = 0; i < u0.size(); ++i) u0[i] -= ul[i];
  return u0;
}

PdeResidualReport pde_residual(const WaveguideProfile& profile,
                               const FieldGrid& field,
                               const SourceSpec& source) {
  const int nx = static_cast<int>(field.x_nodes.size());
  const int nz = static_cast<int>(field.z_nodes.size());
  if (nx < 3 || nz < 3)
    throw ConfigError("pde_residual: grid needs at least 3 nodes per axis");
  const double dx = (field.x_nodes.back() - field.x_nodes.front()) / (nx - 1);
  const double dz = (field.z_nodes.back() - field.z_nodes.front()) / (nz - 1);
  const double k = profile.k();
  if (dx > 0.02 / k || dz > 0.02 / k)
    throw ConfigError("pde_residual: grid too coarse (spacing > 0.02/k)");
  for (int i = 0; i + 1 < nx; ++i)
    if (std::abs(field.x_nodes[i + 1] - field.x_nodes[i] - dx) > 1e-12)
      throw ConfigError("pde_residual: x grid must be uniform");
  for (int j = 0; j + 1 < nz; ++j)
    if (std::abs(field.z_nodes[j + 1] - field.z_nodes[j] - dz) > 1e-12)
      throw ConfigError("pde_residual: z grid must be uniform");

  const double h = profile.h();
  validate_source(source);
  auto density_at = [&](double x, double z) -> Complex {
    if (source.kind == SourceKind::PointSet) return Complex(0.0, 0.0);
    // Bilinear interpolation on the cell-midpoint samples, clamped.
    const double cdx = (source.x1 - source.x0) / source.nx;
    const double cdz = (source.z1 - source.z0) / source.nz;
    const double fx = std::clamp((x - source.x0) / cdx - 0.5, 0.0,
                                 static_cast<double>(source.nx - 1));
    const double fz = std::clamp((z - source.z0) / cdz - 0.5, 0.0,
                                 static_cast<double>(source.nz - 1));
    const int i0 = std::min(static_cast<int>(fx), source.nx - 2 >= 0
                                                      ? source.nx - 2
                                                      : 0);
    const int j0 = std::min(static_cast<int>(fz), source.nz - 2 >= 0
                                                      ? source.nz - 2
                                                      : 0);
    const double tx = source.nx > 1 ? fx - i0 : 0.0;
    const double tz = source.nz > 1 ? fz - j0 : 0.0;
    auto at = [&](int i, int j) {
      i = std::clamp(i, 0, source.nx - 1);
      j = std::clamp(j, 0, source.nz - 1);
      return source.density[static_cast<std::size_t>(i) * source.nz + j];
    };
    return (1 - tx) * (1 - tz) * at(i0, j0) + tx * (1 - tz) * at(i0 + 1, j0) +
           (1 - tx) * tz * at(i0, j0 + 1) + tx * tz * at(i0 + 1, j0 + 1);
  };

  PdeResidualReport rep;
  for (const Complex& v : field.u)
    rep.scale = std::max(rep.scale, std::abs(v));
  rep.scale *= k * k;

  for (int ix = 1; ix + 1 < nx; ++ix) {
    const double x = field.x_nodes[ix];
    if (std::abs(x - h) < 2.0 * dx || std::abs(x + h) < 2.0 * dx) continue;
    for (int iz = 1; iz + 1 < nz; ++iz) {
      const double z = field.z_nodes[iz];
      // Stay clear of the support boundary; inside a density's support the
      // forcing term applies, near points the field is singular.
      const bool in_band =
          x > source.x0 - 2.0 * dx && x < source.x1 + 2.0 * dx &&
          z > source.z0 - 2.0 * dz && z < source.z1 + 2.0 * dz;
      Complex fterm(0.0, 0.0);
      if (in_band) {
        const bool interior = source.kind == SourceKind::GridDensity &&
                              x > source.x0 + 2.0 * dx &&
                              x < source.x1 - 2.0 * dx &&
                              z > source.z0 + 2.0 * dz &&
                              z < source.z1 - 2.0 * dz;
        if (!interior) continue;
        fterm = density_at(x, z);
      }
      const Complex c = field.u[field.index(ix, iz)];
      const Complex lap =
          (field.u[field.index(ix + 1, iz)] + field.u[field.index(ix - 1, iz)] -
           2.0 * c) /
              (dx * dx) +
          (field.u[field.index(ix, iz + 1)] + field.u[field.index(ix, iz - 1)] -
           2.0 * c) /
              (dz * dz);
      const double n = profile.index_at(x);
      const double r = std::abs(lap + k * k * n * n * c - fterm);
      rep.max_residual = std::max(rep.max_residual, r);
      ++rep.nodes_checked;
    }
  }
  return rep;
}

}  // namespace owg
