#include "core/profile.hpp"

#include <algorithm>
#include <cmath>

namespace owg {

WaveguideProfile::WaveguideProfile(double k, double h, double n_cl,
                                   CoreIndexSpec core)
    : k_(k), h_(h), n_cl_(n_cl), core_(std::move(core)) {
  if (!(k > 0.0)) throw ConfigError("profile: k must be positive");
  if (!(h > 0.0)) throw ConfigError("profile: h must be positive");
  if (!(n_cl > 0.0)) throw ConfigError("profile: n_cl must be positive");

  if (core_.constant) {
    if (!std::isfinite(*core_.constant) || *core_.constant <= 0.0)
      throw ConfigError("profile: constant n_co must be positive and finite");
  } else {
    if (core_.table_x.size() < 2 ||
        core_.table_x.size() != core_.table_n.size())
      throw ConfigError("profile: n_co table needs >= 2 (x, n) pairs");
    if (!std::is_sorted(core_.table_x.begin(), core_.table_x.end()) ||
        std::adjacent_find(core_.table_x.begin(), core_.table_x.end()) !=
            core_.table_x.end())
      throw ConfigError("profile: n_co table x values must strictly increase");
    if (core_.table_x.front() > -h || core_.table_x.back() < h)
      throw ConfigError("profile: n_co table must span [-h, h]");
    for (double n : core_.table_n)
      if (!std::isfinite(n) || n <= 0.0)
        throw ConfigError("profile: n_co table values must be positive");
    for (double x : core_.table_x)
      if (x > -h && x < h) breakpoints_.push_back(x);
  }

  // n_* as a robust max over a refined grid (exact for constant cores, and
  // exact at the nodes for linear tables where the max is attained).
  double n_max = n_cl_;
  double n_min_core = core_index(0.0);
  const int refine = 10000;
  for (int i = 0; i <= refine; ++i) {
    const double x = -h_ + 2.0 * h_ * i / refine;
    const double n = core_index(x);
    n_max = std::max(n_max, n);
    n_min_core = std::min(n_min_core, n);
  }
  if (!core_.constant)
    for (double n : core_.table_n) n_max = std::max(n_max, n);
  n_star_ = n_max;
  d2_ = k_ * k_ * (n_star_ * n_star_ - n_cl_ * n_cl_);
  depressed_core_ = n_min_core < n_cl_;

  even_ = true;
  if (!core_.constant) {
    for (int i = 0; i <= 200; ++i) {
      const double x = h_ * i / 200.0;
      if (std::abs(core_index(x) - core_index(-x)) > 1e-12) {
        even_ = false;
        break;
      }
    }
  }
}

double WaveguideProfile::core_index(double x) const {
  if (core_.constant) return *core_.constant;
  const auto& xs = core_.table_x;
  const auto& ns = core_.table_n;
  if (x <= xs.front()) return ns.front();
  if (x >= xs.back()) return ns.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ns[i - 1] + t * (ns[i] - ns[i - 1]);
}

double WaveguideProfile::index_at(double x) const {
  return std::abs(x) <= h_ ? core_index(x) : n_cl_;
}

WaveguideProfile::Potential WaveguideProfile::potential_at(double x) const {
  if (std::abs(x) > h_) return {d2_, 0.0};
  const double n = core_index(x);
  const double q = k_ * k_ * (n_star_ * n_star_ - n * n);
  return {q, d2_ - q};
}

WaveguideProfile WaveguideProfile::mirrored() const {
  if (even_) return *this;
  CoreIndexSpec spec;
  if (core_.constant) {
    spec.constant = core_.constant;
  } else {
    spec.table_x.assign(core_.table_x.rbegin(), core_.table_x.rend());
    for (double& x : spec.table_x) x = -x;
    spec.table_n.assign(core_.table_n.rbegin(), core_.table_n.rend());
  }
  return WaveguideProfile(k_, h_, n_cl_, std::move(spec));
}

WaveguideProfile make_constant_profile(double k, double h, double n_cl,
                                       double n_co) {
  CoreIndexSpec spec;
  spec.constant = n_co;
  return WaveguideProfile(k, h, n_cl, std::move(spec));
}

}  // namespace owg
