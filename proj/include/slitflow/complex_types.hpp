#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace slitflow {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kImagUnit{0.0, 1.0};

/// Sentinel for the boundary point at infinity of the half-plane.
/// Only the closed-form conformal maps know how to handle it; it must
/// never reach an ODE solver.
inline Complex infinity_point() {
  const double inf = std::numeric_limits<double>::infinity();
  return Complex{inf, inf};
}

inline bool is_infinity(const Complex& z) {
  return std::isinf(z.real()) || std::isinf(z.imag());
}

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double sqr(double x) { return x * x; }
inline Complex sq(const Complex& z) { return z * z; }

/// |a - b| with infinity treated as equal to itself only.
inline double cdist(const Complex& a, const Complex& b) {
  if (is_infinity(a) || is_infinity(b)) {
    return (is_infinity(a) && is_infinity(b)) ? 0.0
                                              : std::numeric_limits<double>::infinity();
  }
  return std::abs(a - b);
}

}  // namespace slitflow
