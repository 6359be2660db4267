#include "core/emit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/quadrature.hpp"
#include "core/spectral.hpp"

namespace owg {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_g17(v);
}

std::string complex_pair(Complex v) {
  return "[" + json_number(v.real()) + ", " + json_number(v.imag()) + "]";
}

}  // namespace

std::string emit_modes_json(const WaveguideProfile& profile,
                            const ModeTable& modes) {
  std::ostringstream out;
  out << "{\n"
      << "  \"k\": " << format_g17(profile.k()) << ",\n"
      << "  \"h\": " << format_g17(profile.h()) << ",\n"
      << "  \"n_cl\": " << format_g17(profile.n_cl()) << ",\n"
      << "  \"d2\": " << format_g17(profile.d2()) << ",\n"
      << "  \"beta0\": " << format_g17(profile.beta0()) << ",\n"
      << "  \"M\": " << modes.size() << ",\n"
      << "  \"modes\": [";
  for (int i = 0; i < modes.size(); ++i) {
    const GuidedMode& m = modes.modes[static_cast<std::size_t>(i)];
    out << (i ? ",\n    {" : "\n    {") << "\"gamma\": "
        << format_g17(m.gamma) << ", \"beta\": " << format_g17(m.beta)
        << ", \"kappa\": " << format_g17(m.kappa)
        << ", \"parity\": \"" << parity_name(m.parity) << "\""
        << ", \"norm_r\": " << format_g17(m.norm_r)
        << ", \"norm_l2\": " << format_g17(m.norm_l2) << "}";
  }
  out << (modes.empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

std::string emit_green_json(const WaveguideProfile& profile,
                            const ModeTable& modes, const RunConfig& cfg) {
  const RadRoute route =
      cfg.route == "real" ? RadRoute::Real : RadRoute::Contour;
  const GreenParts parts = green_total(profile, modes, cfg.x, cfg.z, cfg.xi,
                                       cfg.zeta, route, cfg.quad);
  std::ostringstream out;
  out << "{\n"
      << "  \"x\": " << format_g17(cfg.x) << ",\n"
      << "  \"z\": " << format_g17(cfg.z) << ",\n"
      << "  \"xi\": " << format_g17(cfg.xi) << ",\n"
      << "  \"zeta\": " << format_g17(cfg.zeta) << ",\n"
      << "  \"route\": \"" << cfg.route << "\",\n"
      << "  \"guided\": [";
  for (std::size_t l = 0; l < parts.guided.size(); ++l)
    out << (l ? ", " : "") << complex_pair(parts.guided[l]);
  out << "],\n"
      << "  \"radiative_re\": " << json_number(parts.radiative.real())
      << ",\n"
      << "  \"radiative_im\": " << json_number(parts.radiative.imag())
      << ",\n"
      << "  \"total_re\": " << json_number(parts.total.real()) << ",\n"
      << "  \"total_im\": " << json_number(parts.total.imag());
  if (cfg.route == "both") {
    const Complex other = green_rad_real(profile, modes, cfg.x, cfg.z,
                                         cfg.xi, cfg.zeta, cfg.quad);
    out << ",\n  \"radiative_re_real_route\": " << json_number(other.real())
        << ",\n  \"radiative_im_real_route\": " << json_number(other.imag())
        << ",\n  \"route_difference\": "
        << json_number(std::abs(parts.radiative - other));
  }
  out << "\n}\n";
  return out.str();
}

std::string emit_field_csv(const FieldGrid& field) {
  std::ostringstream out;
  out << "x,z,re_u,im_u,re_u0,im_u0";
  for (std::size_t l = 0; l < field.u_guided.size(); ++l)
    out << ",re_u" << l + 1 << ",im_u" << l + 1;
  out << "\n";
  const int nx = static_cast<int>(field.x_nodes.size());
  const int nz = static_cast<int>(field.z_nodes.size());
  for (int ix = 0; ix < nx; ++ix) {
    for (int iz = 0; iz < nz; ++iz) {
      const int idx = field.index(ix, iz);
      out << format_g17(field.x_nodes[static_cast<std::size_t>(ix)]) << ","
          << format_g17(field.z_nodes[static_cast<std::size_t>(iz)]) << ","
          << format_g17(field.u[static_cast<std::size_t>(idx)].real()) << ","
          << format_g17(field.u[static_cast<std::size_t>(idx)].imag()) << ","
          << format_g17(field.u_rest[static_cast<std::size_t>(idx)].real())
          << ","
          << format_g17(field.u_rest[static_cast<std::size_t>(idx)].imag());
      for (const auto& ug : field.u_guided)
        out << "," << format_g17(ug[static_cast<std::size_t>(idx)].real())
            << "," << format_g17(ug[static_cast<std::size_t>(idx)].imag());
      out << "\n";
    }
  }
  return out.str();
}

std::string emit_radcheck_csv(const RadiationReport& report) {
  std::ostringstream out;
  const std::size_t ncomp =
      report.residuals.empty() ? 0 : report.residuals[0].size();
  out << "R";
  for (std::size_t l = 0; l < ncomp; ++l) out << ",residual_" << l;
  for (std::size_t l = 0; l < ncomp; ++l) out << ",sup_residual_" << l;
  for (std::size_t l = 0; l < ncomp; ++l) out << ",cumulative_" << l;
  out << "\n";
  for (std::size_t i = 0; i < report.R_values.size(); ++i) {
    out << format_g17(report.R_values[i]);
    for (std::size_t l = 0; l < ncomp; ++l)
      out << "," << format_g17(report.residuals[i][l]);
    for (std::size_t l = 0; l < ncomp; ++l)
      out << "," << format_g17(report.sup_residuals[i][l]);
    for (std::size_t l = 0; l < ncomp; ++l)
      out << "," << format_g17(report.cumulative[i][l]);
    out << "\n";
  }
  return out.str();
}

std::string emit_radcheck_json(const RadiationReport& report) {
  const std::size_t ncomp =
      report.residuals.empty() ? 0 : report.residuals[0].size();
  const std::size_t nR = report.R_values.size();
  std::ostringstream out;
  out << "{\n  \"slopes\": [";
  for (std::size_t l = 0; l < report.slopes.size(); ++l)
    out << (l ? ", " : "") << json_number(report.slopes[l]);
  out << "],\n  \"cauchy_ratios\": [";
  // Ratio of the last two increments of the cumulative R-integral; < 1
  // signals the convergent (radiating) behavior.
  for (std::size_t l = 0; l < ncomp; ++l) {
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (nR >= 3) {
      const double inc1 =
          report.cumulative[nR - 1][l] - report.cumulative[nR - 2][l];
      const double inc0 =
          report.cumulative[nR - 2][l] - report.cumulative[nR - 3][l];
      if (inc0 > 0.0) ratio = inc1 / inc0;
    }
    out << (l ? ", " : "") << json_number(ratio);
  }
  out << "]\n}\n";
  return out.str();
}

std::string emit_contour_csv(const WaveguideProfile& profile,
                             const ModeTable& modes, double theta,
                             int panels_per_segment) {
  const ContourPath path = build_contour(profile, modes, theta);
  const auto& rule = gauss_legendre(16);
  std::ostringstream out;
  out << "segment,re_t,im_t,re_weight,im_weight\n";
  for (const auto& seg : path.segments) {
    for (int p = 0; p < panels_per_segment; ++p) {
      const double a = seg.a + (seg.b - seg.a) * p / panels_per_segment;
      const double b = seg.a + (seg.b - seg.a) * (p + 1) / panels_per_segment;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
        const Complex t = seg.t(s);
        const Complex w = seg.dt(s) * (0.5 * (b - a) * rule.weights[i]);
        out << seg.name << "," << format_g17(t.real()) << ","
            << format_g17(t.imag()) << "," << format_g17(w.real()) << ","
            << format_g17(w.imag()) << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace owg
