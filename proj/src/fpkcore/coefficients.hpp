#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace fpkhom {

/// A periodic coefficient pair (A, b) on the unit cell, with optional
/// row-wise divergence of A and metadata about jump lines {y1 = c}.
///
/// All evaluators are 1-periodic: coordinates are wrapped to [0,1) before
/// the closed-form expressions are applied. Evaluation is pure and
/// thread-safe.
class CoefficientField {
 public:
  /// Builtin problems, addressable by the stable CLI names
  /// "identity", "const-diag:a1,a2", "setting-a-paper", "setting-b-paper".
  static CoefficientField make_builtin(const std::string& name);

  /// Diffusion matrix at a point (symmetric by construction).
  SymMat2 A(double y1, double y2) const;
  /// Drift vector at a point.
  Vec2 b(double y1, double y2) const;
  /// Row-wise divergence of A; only when supports_setting_a().
  Vec2 divA(double y1, double y2) const;

  /// True when an analytic div(A) is available (differentiable-diffusion
  /// regime; required by the divergence-form solvers).
  bool supports_setting_a() const { return has_divA_; }
  /// True when the field is intended for the bounded-measurable regime.
  bool supports_setting_b() const { return supports_b_; }

  /// Interior vertical jump/kink lines in (0,1), used to trigger cut-cell
  /// quadrature. (Lines on mesh edges of every 1/N mesh, i.e. y1 = 0, are
  /// not listed.)
  const std::vector<double>& discontinuity_lines() const { return lines_; }

  /// Breakpoints for 1D integrations along y1, including the endpoints.
  std::vector<double> breakpoints1d() const;

  const std::string& name() const { return name_; }

 private:
  CoefficientField() = default;

  enum class Kind { identity, const_diag, paper_a, paper_b };
  Kind kind_ = Kind::identity;
  double d1_ = 1.0, d2_ = 1.0;  // const_diag entries
  bool has_divA_ = true;
  bool supports_b_ = true;
  std::vector<double> lines_;
  std::string name_;
};

/// sign with sign(0) = 0 (jump sets have measure zero).
inline double sign0(double t) { return (t > 0.0) - (t < 0.0); }

/// Sampled eigenvalue extremes of A over an n x n half-cell-offset grid.
struct EllipticityReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int grid_n = 0;
  bool elliptic = false;  ///< lambda_min > 0 on the sample grid
};

/// Sampled Cordes-condition quantities over a half-cell-offset grid.
///
/// ratio_max is the sampled sup of (|A|^2+|b|^2)/tr(A)^2, delta_max the
/// largest delta with ratio_max <= 1/(n-1+delta). kappa is delta_max when
/// b == 0 and (delta_max - n/(n+pi^2))(n+pi^2)/pi^2 otherwise (n = 2).
struct CordesReport {
  double ratio_max = 0.0;
  double delta_max = 0.0;
  double kappa = 0.0;
  bool admissible_b = false;         ///< delta_max > n/(n+pi^2)
  bool admissible_classical = false; ///< b == 0 and delta_max > 0
  int grid_n = 0;
};

EllipticityReport check_ellipticity(const CoefficientField& field, int grid_n);
CordesReport check_cordes(const CoefficientField& field, int grid_n);

/// Renormalized coefficients gamma = tr(A)/(|A|^2+|b|^2), Atilde = gamma A,
/// btilde = gamma b, which bring A within unit distance of the identity
/// under the Cordes condition.
class RenormalizedField {
 public:
  explicit RenormalizedField(const CoefficientField& base);

  /// Test/extension hook: explicit evaluators (e.g. Atilde = I with a
  /// manufactured smooth btilde).
  RenormalizedField(std::function<SymMat2(double, double)> Atilde,
                    std::function<Vec2(double, double)> btilde,
                    std::vector<double> lines);

  double gamma(double y1, double y2) const;
  SymMat2 Atilde(double y1, double y2) const;
  Vec2 btilde(double y1, double y2) const;

  const std::vector<double>& discontinuity_lines() const { return lines_; }

  /// Remark-level a-priori bounds on gamma, filled from an ellipticity
  /// sample when constructed from a base field: n lambda/(n Lambda^2 +
  /// sup|b|^2) and Lambda/lambda^2.
  double gamma_lower = 0.0;
  double gamma_upper = 0.0;

 private:
  const CoefficientField* base_ = nullptr;
  std::function<SymMat2(double, double)> At_;
  std::function<Vec2(double, double)> bt_;
  std::vector<double> lines_;
};

}  // namespace fpkhom
