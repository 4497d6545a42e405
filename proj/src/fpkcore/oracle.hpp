#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "coefficients.hpp"
#include "geometry.hpp"

namespace fpkhom {

/// Thrown when dyadic refinement fails to shrink the successive-refinement
/// difference below tol; carries the last estimate.
class Quad1DError : public std::runtime_error {
 public:
  Quad1DError(const std::string& what, double est)
      : std::runtime_error(what), last_estimate(est) {}
  double last_estimate;
};

/// Integral of a piecewise-smooth function over [0,1]: composite
/// Gauss-Legendre per smooth piece, panels doubled until two successive
/// refinements differ by less than tol. Breakpoints outside [0,1] are
/// clamped; duplicates are harmless.
double quad1d(const std::function<double(double)>& f,
              std::vector<double> breakpoints, double tol);

/// Semi-analytic reference for the built-in problems. All built-ins have
/// coefficients depending on y1 only, so the invariant measure and the
/// correctors reduce to one-dimensional closed forms driven by the
/// cumulative integral K(t) of b1/a11:
///   r    = C1^{-1} e^K / a11,          C1 = int e^K / a11,
///   chi' = C2^{-1} e^{-K} - 1,         C2 = int e^{-K},
///   chi  = C2^{-1} int_0^t e^{-K} - t + c,   int chi = 0.
/// K and the antiderivative of e^{-K} are tabulated on 2^14 subintervals
/// per smooth piece (cumulative Gauss-Legendre) with a local quadrature
/// correction from the nearest grid node, so point evaluation is cheap and
/// accurate at arbitrary quadrature points.
class ReferenceSolution {
 public:
  static ReferenceSolution build(const CoefficientField& field,
                                 double tol = 1e-10);

  double K(double t) const;
  double r(double t) const;
  double r_prime(double t) const;
  double chi(double t) const;
  double chi_prime(double t) const;
  double chi_second(double t) const;

  /// First drift component profile b1 (b = b1 (1,1)^T for built-ins).
  double b1(double t) const { return b1_(t); }

  /// Mean drift under the reference measure, int r b; both components are
  /// equal for the built-ins.
  Vec2 drift_mean() const;

  double C1 = 0.0, C2 = 0.0;
  double chi_offset = 0.0;  ///< the constant c in chi

  const std::vector<double>& breakpoints() const { return pieces_; }
  double tol() const { return tol_; }

 private:
  ReferenceSolution() = default;
  double kernelK(double s) const;  ///< b1/a11
  double kernelE(double s) const;  ///< e^{-K}
  double cumulative(const std::vector<std::vector<double>>& table,
                    bool exp_kernel, double t) const;

  std::function<double(double)> a11_, da11_, b1_;
  std::vector<double> pieces_;
  double tol_ = 1e-10;
  // cumulative tables per piece, one entry per subinterval boundary
  std::vector<std::vector<double>> ktab_, etab_;
};

/// The homogenized matrix from the 1D reduction: with chi_1 = chi_2 =
/// chi(y1), I + Dchi has rows (1 + chi', 0) and (chi', 1), and
/// Abar = int_0^1 r (I + Dchi) A (I + Dchi)^T dy1, integrated entrywise.
SymMat2 reference_effective_matrix(const ReferenceSolution& ref,
                                   const CoefficientField& field);

}  // namespace fpkhom
