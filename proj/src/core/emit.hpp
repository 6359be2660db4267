#pragma once

#include <string>

#include "core/config.hpp"
#include "core/field.hpp"
#include "core/green.hpp"
#include "core/modes.hpp"
#include "core/profile.hpp"
#include "core/radiation.hpp"

namespace owg {

// 17-significant-digit formatting used by every emitter; round-trips
// binary64 exactly so outputs diff cleanly across runs.
std::string format_g17(double v);

// Mode table as JSON: profile scalars plus one record per guided mode.
std::string emit_modes_json(const WaveguideProfile& profile,
                            const ModeTable& modes);

// Single Green's-function evaluation at the config's (x, z; xi, zeta).
// route "both" evaluates the radiative part by both routes and reports the
// discrepancy alongside.
std::string emit_green_json(const WaveguideProfile& profile,
                            const ModeTable& modes, const RunConfig& cfg);

// Field grid CSV: x, z, Re u, Im u, Re u_0, Im u_0, then per-mode pairs.
std::string emit_field_csv(const FieldGrid& field);

// Radiation report: CSV with per-R residuals and cumulative integrals, and
// a JSON summary with fitted slopes and dyadic Cauchy ratios.
std::string emit_radcheck_csv(const RadiationReport& report);
std::string emit_radcheck_json(const RadiationReport& report);

// Diagnostic dump of the deformed contour: Re t, Im t, Re weight, Im weight
// per node (fixed Gauss discretization), with the segment name.
std::string emit_contour_csv(const WaveguideProfile& profile,
                             const ModeTable& modes, double theta,
                             int panels_per_segment = 8);

}  // namespace owg
