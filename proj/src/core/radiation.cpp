#include "core/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/ode.hpp"

namespace owg {

namespace {

struct Piece {
  double length;
  int id;
};

}  // namespace

BoundarySample boundary_sample(BoundaryFamily family, double R, double h,
                               int n_points) {
  if (!(R > 0.0)) throw ConfigError("boundary_sample: R must be positive");
  if (h < 0.0) throw ConfigError("boundary_sample: negative half-width");
  if (n_points < 64)
    throw ConfigError("boundary_sample: need at least 64 points");

  BoundarySample b;
  b.family = family;
  b.R = R;
  b.h = h;

  std::vector<Piece> pieces;
  if (family == BoundaryFamily::OmegaStadium) {
    pieces = {{2.0 * h, 0}, {kPi * R, 1}, {2.0 * h, 2}, {kPi * R, 3}};
  } else {
    pieces = {{2.0 * R, 0}, {2.0 * R, 2}, {2.0 * R, 1}, {2.0 * R, 3}};
  }
  double perimeter = 0.0;
  for (const auto& p : pieces) perimeter += p.length;

  const double dw = perimeter / n_points;
  for (int i = 0; i < n_points; ++i) {
    double s = (i + 0.5) * dw;
    int id = pieces.back().id;
    double t = 0.0;
    for (const auto& p : pieces) {
      if (s <= p.length || &p == &pieces.back()) {
        id = p.id;
        t = s;
        break;
      }
      s -= p.length;
    }
    double x, z, nx, nz;
    if (family == BoundaryFamily::OmegaStadium) {
      switch (id) {
        case 0:  // top segment, z = R
          x = -h + t, z = R, nx = 0.0, nz = 1.0;
          break;
        case 1: {  // right arc around (h, 0)
          const double psi = kPi / 2.0 - t / R;
          nx = std::cos(psi), nz = std::sin(psi);
          x = h + R * nx, z = R * nz;
          break;
        }
        case 2:  // bottom segment, z = -R
          x = h - t, z = -R, nx = 0.0, nz = -1.0;
          break;
        default: {  // left arc around (-h, 0)
          const double psi = -kPi / 2.0 - t / R;
          nx = std::cos(psi), nz = std::sin(psi);
          x = -h + R * nx, z = R * nz;
          break;
        }
      }
    } else {
      switch (id) {
        case 0:  // x = +R, z ascending
          x = R, z = -R + t, nx = 1.0, nz = 0.0;
          break;
        case 2:  // z = +R, x descending
          x = R - t, z = R, nx = 0.0, nz = 1.0;
          break;
        case 1:  // x = -R, z descending
          x = -R, z = R - t, nx = -1.0, nz = 0.0;
          break;
        default:  // z = -R, x ascending
          x = -R + t, z = -R, nx = 0.0, nz = -1.0;
          break;
      }
    }
    b.x.push_back(x);
    b.z.push_back(z);
    b.nx.push_back(nx);
    b.nz.push_back(nz);
    b.w.push_back(dw);
    b.segment.push_back(id);
  }
  return b;
}

FieldEvaluator guided_component_evaluator(const WaveguideProfile& profile,
                                          const ModeTable& modes, int l,
                                          const SourceSpec& source,
                                          const OdeOptions& opts) {
  if (l < 1 || l > modes.size())
    throw ConfigError("guided_component_evaluator: mode index out of range");
  const GuidedMode mode = modes.modes[static_cast<std::size_t>(l - 1)];
  validate_source(source);
  struct Term {
    double zeta;
    Complex a;  // w e(xi) / (2 i beta)
  };
  std::vector<Term> terms;
  for (const auto& s : source_nodes(source)) {
    const double e_xi = mode_shape(profile, mode, s.x, opts).e;
    terms.push_back({s.z, s.w * e_xi / (2.0 * kI * mode.beta)});
  }
  const double beta = mode.beta;
  return [&profile, mode, beta, terms, opts](double x, double z) {
    const ModeShapeValue e = mode_shape(profile, mode, x, opts);
    Complex U(0.0, 0.0), Us(0.0, 0.0);  // overlap and its sign-weighted form
    bool same_sign = true;
    double sgn0 = 0.0;
    for (const auto& t : terms) {
      const double sgn = z > t.zeta ? 1.0 : (z < t.zeta ? -1.0 : 0.0);
      if (sgn0 == 0.0) sgn0 = sgn;
      same_sign = same_sign && sgn == sgn0;
      const Complex p = t.a * std::exp(kI * beta * std::abs(z - t.zeta));
      U += p;
      Us += sgn * p;
    }
    FieldSample out;
    out.u = e.e * U;
    out.ux = e.de * U;
    // Beyond the source U' = +-i beta U; reuse the product e*U so the
    // z-face residual d_z u_l - i beta u_l cancels exactly.
    out.uz = same_sign && sgn0 != 0.0 ? sgn0 * (kI * beta * out.u)
                                      : e.e * (kI * beta * Us);
    return out;
  };
}

FieldEvaluator radiative_component_evaluator(const WaveguideProfile& profile,
                                             const ModeTable& modes,
                                             const SourceSpec& source,
                                             const QuadOptions& quad) {
  validate_source(source);
  const std::vector<SourceNode> nodes = source_nodes(source);
  return [&profile, &modes, nodes, quad](double x, double z) {
    FieldSample out;
    for (const auto& s : nodes) {
      GreenRadEval g;
      if (z == s.z) {
        g = green_rad_real_grad(profile, modes, x, z, s.x, s.z, quad);
      } else {
        g = green_rad_contour(profile, modes, x, z, s.x, s.z, quad, true);
      }
      out.u += s.w * g.value;
      out.ux += s.w * g.grad_x;
      out.uz += s.w * g.grad_z;
    }
    return out;
  };
}

ResidualReport radiation_residual(const FieldEvaluator& component, double beta,
                                  const BoundarySample& boundary,
                                  int segment_filter) {
  ResidualReport rep;
  for (int i = 0; i < boundary.size(); ++i) {
    if (segment_filter >= 0 && boundary.segment[i] != segment_filter) continue;
    FieldSample f;
    try {
      f = component(boundary.x[i], boundary.z[i]);
    } catch (const std::exception& e) {
      throw NumericError("radiation_residual: evaluator failed at (" +
                         std::to_string(boundary.x[i]) + ", " +
                         std::to_string(boundary.z[i]) + "): " + e.what());
    }
    const Complex r =
        f.ux * boundary.nx[i] + f.uz * boundary.nz[i] - kI * beta * f.u;
    const double mag = std::abs(r);
    rep.integral += boundary.w[i] * mag * mag;
    rep.sup = std::max(rep.sup, mag);
    ++rep.nodes;
  }
  return rep;
}

LineFit decay_slope(const std::vector<double>& R_values,
                    const std::vector<double>& values, FitMode mode) {
  if (R_values.size() != values.size())
    throw ConfigError("decay_slope: size mismatch");
  if (R_values.size() < 5) throw ConfigError("decay_slope: need >= 5 samples");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !(R_values[i] > 0.0))
      throw ConfigError("decay_slope: nonpositive sample");
    xs.push_back(mode == FitMode::PowerLaw ? std::log(R_values[i])
                                           : R_values[i]);
    ys.push_back(std::log(values[i]));
  }
  return fit_line(xs, ys);
}

FluxReport flux_balance(const FieldEvaluator& field,
                        const BoundarySample& inner,
                        const BoundarySample& outer) {
  const auto flux = [&field](const BoundarySample& b) {
    double acc = 0.0;
    for (int i = 0; i < b.size(); ++i) {
      const FieldSample f = field(b.x[i], b.z[i]);
      const Complex dn = f.ux * b.nx[i] + f.uz * b.nz[i];
      acc += b.w[i] * std::imag(std::conj(f.u) * dn);
    }
    return acc;
  };
  FluxReport rep;
  rep.flux1 = flux(inner);
  rep.flux2 = flux(outer);
  const double scale =
      std::max({std::abs(rep.flux1), std::abs(rep.flux2), 1e-300});
  rep.rel_diff = std::abs(rep.flux1 - rep.flux2) / scale;
  return rep;
}

namespace {

// v(x, lambda) outside the core from the boundary data at the nearer face.
struct VValue {
  double v, dv;
};

VValue extend_v(double vh, double dvh, double s, double Q) {
  // Solves v'' + Q^2 v = 0 from (vh, dvh) over a distance s (s has the sign
  // of the outward direction folded into dvh by the caller).
  if (std::abs(Q) * std::abs(s) < 1e-8) {
    return {vh + dvh * s, dvh - Q * Q * vh * s};
  }
  const double c = std::cos(Q * s), sn = std::sin(Q * s);
  return {vh * c + dvh / Q * sn, -Q * vh * sn + dvh * c};
}

}  // namespace

double orthogonality_defect(const WaveguideProfile& profile,
                            const ModeTable& modes, int l, Parity parity,
                            double lambda, double halfwidth_factor,
                            const OdeOptions& opts) {
  if (l < 1 || l > modes.size())
    throw ConfigError("orthogonality_defect: mode index out of range");
  if (!(lambda > profile.d2()))
    throw ConfigError(
        "orthogonality_defect: lambda must exceed d^2 (continuous spectrum)");
  const GuidedMode mode = modes.modes[static_cast<std::size_t>(l - 1)];
  const double h = profile.h();
  const double W = h * std::max(1.0, halfwidth_factor);
  const double Q = std::sqrt(lambda - profile.d2());
  const double kappa = mode.kappa;

  // Composite Gauss panels sized to the oscillation sqrt(lambda), with
  // region edges at x = +-h where v has a curvature jump.
  const int order = 16;
  const auto& rule = gauss_legendre(order);
  std::vector<double> xs, ws;
  std::vector<double> edges = {-W};
  if (W > h) {
    edges.push_back(-h);
    edges.push_back(h);
  }
  edges.push_back(W);
  for (std::size_t r = 0; r + 1 < edges.size(); ++r) {
    const double lo = edges[r], hi = edges[r + 1];
    const int panels = std::max(
        4, static_cast<int>(std::ceil((hi - lo) * std::sqrt(lambda) / 1.5)));
    for (int p = 0; p < panels; ++p) {
      const double a = lo + (hi - lo) * p / panels;
      const double b = lo + (hi - lo) * (p + 1) / panels;
      for (int i = 0; i < order; ++i) {
        xs.push_back(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i]);
        ws.push_back(0.5 * (b - a) * rule.weights[i]);
      }
    }
  }

  std::vector<double> targets;
  for (double x : xs) targets.push_back(std::clamp(x, -h, h));
  targets.push_back(-h);
  targets.push_back(h);
  const PhiSolution phi =
      solve_phi(profile, parity, Complex(lambda, 0.0), targets, opts);
  const std::size_t imh = targets.size() - 2, iph = targets.size() - 1;
  const double phi_mh = phi.phi[imh].real(), dphi_mh = phi.dphi[imh].real();
  const double phi_ph = phi.phi[iph].real(), dphi_ph = phi.dphi[iph].real();

  const auto v_at = [&](std::size_t i, double x) {
    if (x > h) return extend_v(phi_ph, dphi_ph, x - h, Q).v;
    if (x < -h) return extend_v(phi_mh, dphi_mh, x + h, Q).v;
    return phi.phi[i].real();
  };

  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = mode_shape(profile, mode, xs[i], opts).e;
    sum += ws[i] * e * v_at(i, xs[i]);
  }

  // Analytic tails: e decays like e^{-kappa(|x|-W)}, v oscillates with
  // frequency Q; int_0^inf e^{-kappa s}(v cos Qs + v'/Q sin Qs) ds closed
  // form.
  const VValue vR = extend_v(phi_ph, dphi_ph, W - h, Q);
  const VValue vL = extend_v(phi_mh, dphi_mh, -(W - h), Q);
  const double eR = mode_shape(profile, mode, W, opts).e;
  const double eL = mode_shape(profile, mode, -W, opts).e;
  const double denom = kappa * kappa + Q * Q;
  sum += eR * (kappa * vR.v + vR.dv) / denom;
  sum += eL * (kappa * vL.v - vL.dv) / denom;
  return std::abs(sum);
}

double orthogonality_defect(const WaveguideProfile& profile,
                            const ModeTable& modes, int l, double lambda,
                            double halfwidth_factor, const OdeOptions& opts) {
  return std::max(
      orthogonality_defect(profile, modes, l, Parity::Symmetric, lambda,
                           halfwidth_factor, opts),
      orthogonality_defect(profile, modes, l, Parity::Antisymmetric, lambda,
                           halfwidth_factor, opts));
}

RellichReport rellich_reduction_check(const WaveguideProfile& profile,
                                      const ModeTable& modes,
                                      const FieldEvaluator& field,
                                      const std::vector<double>& R_values,
                                      int n_points) {
  if (!modes.empty())
    throw ConfigError(
        "rellich_reduction_check: requires a modeless profile (M = 0)");
  if (R_values.size() < 2 ||
      !std::is_sorted(R_values.begin(), R_values.end()))
    throw ConfigError("rellich_reduction_check: need ascending R values");
  RellichReport rep;
  rep.R_values = R_values;
  const double beta0 = profile.beta0();
  for (double R : R_values) {
    // M = 0: the stadium with h = 0 is the classical ball B_R.
    const BoundarySample b =
        boundary_sample(BoundaryFamily::OmegaStadium, R, 0.0, n_points);
    rep.integrals.push_back(radiation_residual(field, beta0, b).integral);
  }
  rep.cumulative.resize(R_values.size(), 0.0);
  for (std::size_t i = 1; i < R_values.size(); ++i) {
    rep.cumulative[i] =
        rep.cumulative[i - 1] + 0.5 * (rep.integrals[i] + rep.integrals[i - 1]) *
                                    (R_values[i] - R_values[i - 1]);
  }
  return rep;
}

RadiationReport radiation_report(const WaveguideProfile& profile,
                                 const ModeTable& modes,
                                 const SourceSpec& source,
                                 const std::vector<double>& R_values,
                                 int n_points, bool compact_single_family,
                                 const QuadOptions& quad) {
  if (R_values.empty() || !std::is_sorted(R_values.begin(), R_values.end()))
    throw ConfigError("radiation_report: need ascending R values");
  RadiationReport rep;
  rep.R_values = R_values;
  const int M = modes.size();

  std::vector<FieldEvaluator> components;
  std::vector<double> betas;
  components.push_back(
      radiative_component_evaluator(profile, modes, source, quad));
  betas.push_back(profile.beta0());
  for (int l = 1; l <= M; ++l) {
    components.push_back(
        guided_component_evaluator(profile, modes, l, source, quad.ode));
    betas.push_back(modes.modes[static_cast<std::size_t>(l - 1)].beta);
  }

  for (double R : R_values) {
    std::vector<double> ints, sups;
    for (int l = 0; l <= M; ++l) {
      const BoundaryFamily family = (l == 0 || compact_single_family)
                                        ? BoundaryFamily::OmegaStadium
                                        : BoundaryFamily::QSquare;
      const BoundarySample b =
          boundary_sample(family, R, profile.h(), n_points);
      const ResidualReport r =
          radiation_residual(components[static_cast<std::size_t>(l)],
                            betas[static_cast<std::size_t>(l)], b);
      ints.push_back(r.integral);
      sups.push_back(r.sup);
    }
    rep.residuals.push_back(ints);
    rep.sup_residuals.push_back(sups);
  }

  rep.cumulative.assign(R_values.size(), std::vector<double>(M + 1, 0.0));
  for (std::size_t i = 1; i < R_values.size(); ++i) {
    for (int l = 0; l <= M; ++l) {
      rep.cumulative[i][static_cast<std::size_t>(l)] =
          rep.cumulative[i - 1][static_cast<std::size_t>(l)] +
          0.5 *
              (rep.residuals[i][static_cast<std::size_t>(l)] +
               rep.residuals[i - 1][static_cast<std::size_t>(l)]) *
              (R_values[i] - R_values[i - 1]);
    }
  }

  rep.slopes.assign(static_cast<std::size_t>(M) + 1,
                    std::numeric_limits<double>::quiet_NaN());
  if (R_values.size() >= 5) {
    for (int l = 0; l <= M; ++l) {
      std::vector<double> vals;
      for (std::size_t i = 0; i < R_values.size(); ++i)
        vals.push_back(rep.sup_residuals[i][static_cast<std::size_t>(l)]);
      if (std::all_of(vals.begin(), vals.end(),
                      [](double v) { return v > 0.0; })) {
        rep.slopes[static_cast<std::size_t>(l)] =
            decay_slope(R_values, vals).slope;
      }
    }
  }
  return rep;
}

}  // namespace owg
