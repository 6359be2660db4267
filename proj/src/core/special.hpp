#pragma once

#include "core/types.hpp"

namespace owg {

// Outgoing Hankel function H0^(1)(rho) = J0(rho) + i Y0(rho), rho > 0.
// Power series below rho = 12, large-argument expansion beyond; absolute
// accuracy better than 1e-10 over the whole range.
Complex hankel_h0(double rho);

double bessel_j0(double x);
double bessel_y0(double x);

// H1^(1)(rho); used for analytic gradients of the free-space field.
Complex hankel_h1(double rho);

}  // namespace owg
