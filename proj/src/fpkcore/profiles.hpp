#pragma once

#include <cmath>

#include "coefficients.hpp"

namespace fpkhom::profiles {

inline constexpr double kPi = 3.14159265358979323846;

/// Entries shared by the two built-in variable-coefficient problems.
inline double offdiag(double x) { return 0.5 * std::sin(2.0 * kPi * x); }
inline double d_offdiag(double x) { return kPi * std::cos(2.0 * kPi * x); }
inline double a22(double x) {
  double c = std::cos(kPi * x);
  return 2.0 + c * c;
}

/// a11 = 1 + arcsin(sin^2(pi x)). The derivative is written with
/// sign(cos) so it stays accurate near the kink at x = 1/2 (one-sided
/// limits -+ sqrt(2) pi); the textbook form pi sin(2 pi x)/sqrt(1 -
/// sin^4(pi x)) cancels catastrophically there.
inline double a11_smooth(double x) {
  double s = std::sin(kPi * x);
  return 1.0 + std::asin(s * s);
}
inline double da11_smooth(double x) {
  double s = std::sin(kPi * x);
  double c = std::cos(kPi * x);
  return 2.0 * kPi * s * sign0(c) / std::sqrt(1.0 + s * s);
}

/// a11 = 2 + sign(cos(pi x)) sin(pi x), jumping at x = 1/2; its derivative
/// away from the jump is pi |cos(pi x)|.
inline double a11_jump(double x) {
  return 2.0 + sign0(std::cos(kPi * x)) * std::sin(kPi * x);
}
inline double da11_jump(double x) { return kPi * std::fabs(std::cos(kPi * x)); }

/// Drift first components: both built-ins use b = b1(y1) (1,1)^T.
inline double drift_smooth(double x) { return sign0(std::sin(2.0 * kPi * x)); }
inline double drift_jump(double x) {
  return 0.25 + 0.75 * sign0(std::sin(2.0 * kPi * x));
}

}  // namespace fpkhom::profiles
