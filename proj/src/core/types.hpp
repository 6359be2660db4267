#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace owg {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

// Parity index of the two core solutions: symmetric (phi(0)=1, phi'(0)=0)
// and antisymmetric (phi(0)=0, phi'(0)=sqrt(lambda)).
enum class Parity { Symmetric, Antisymmetric };

inline const char* parity_name(Parity p) {
  return p == Parity::Symmetric ? "s" : "a";
}

// Configuration / input validation failure.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure (non-convergence, pole proximity, singular evaluation).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace owg
