#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace owg {

// Core index specification: either a constant value or a sampled table on
// [-h, h] with piecewise-linear interpolation.
struct CoreIndexSpec {
  std::optional<double> constant;
  std::vector<double> table_x;  // strictly increasing, spanning [-h, h]
  std::vector<double> table_n;
};

// Step-index waveguide profile: n(x) = n_co(x) for |x| <= h, n_cl outside.
// Exposes the potential q(x) = k^2 (n_*^2 - n(x)^2) and its complement
// p(x) = d^2 - q(x) used by the spectral machinery.
class WaveguideProfile {
 public:
  WaveguideProfile(double k, double h, double n_cl, CoreIndexSpec core);

  double k() const { return k_; }
  double h() const { return h_; }
  double n_cl() const { return n_cl_; }
  double n_star() const { return n_star_; }
  double d2() const { return d2_; }
  double beta0() const { return k_ * n_cl_; }  // cladding wavenumber

  double index_at(double x) const;

  struct Potential {
    double q;
    double p;
  };
  Potential potential_at(double x) const;

  // True if n_co dips below n_cl somewhere (p < 0 there); the appendix-style
  // bounds 0 <= p <= d^2 no longer apply but the construction still runs.
  bool depressed_core() const { return depressed_core_; }

  // Sorted interior breakpoints of q in (-h, h); integration steps align to
  // them to keep the solver's order with piecewise-linear tables.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  bool is_even() const { return even_; }

  // Profile with the core index reflected, n'(x) = n(-x); used to reduce
  // evaluations on the x < -h side to the [x]_h >= 0 geometry.
  WaveguideProfile mirrored() const;

 private:
  double core_index(double x) const;

  double k_, h_, n_cl_;
  CoreIndexSpec core_;
  double n_star_ = 0.0;
  double d2_ = 0.0;
  bool depressed_core_ = false;
  bool even_ = true;
  std::vector<double> breakpoints_;
};

// Canonical test profiles used throughout the suite.
WaveguideProfile make_constant_profile(double k, double h, double n_cl,
                                       double n_co);

}  // namespace owg
