#pragma once

#include "coefficients.hpp"
#include "linalg.hpp"
#include "mesh.hpp"
#include "norms.hpp"

namespace fpkhom {

/// Invariant measure in the bounded-measurable regime. The auxiliary
/// vector field rho_h solves the div-curl problem
///   B(rho_h, w_h) = int (Atilde : Dw_h + btilde . w_h)  for all w_h,
/// where
///   B(v, w) = int (div v)(Atilde : Dw + btilde . w) + int curl(v) curl(w)
/// (in 2D the scalar-curl product int curl(v) curl(w) equals the
/// contraction of the skew parts of Dv and Dw, doubled).
/// The unnormalized measure is the piecewise constant rtilde_h = 1 -
/// div rho_h; the invariant measure itself is gamma rtilde_h / mass_gamma.
struct InvariantMeasureB {
  FeFunction rho_h;
  CellField rtilde_h;
  double mass_gamma = 0.0;  ///< int gamma rtilde_h (cut-cell order-5 quadrature)
  SolveReport report;
  CoefficientField field;  ///< copy kept so the normalized evaluator is self-contained

  double gamma(double x, double y) const;
  /// Normalized invariant-measure evaluator gamma rtilde_h / mass_gamma.
  double r_h_eval(double x, double y) const {
    return gamma(x, y) * rtilde_h.eval(x, y) / mass_gamma;
  }

  // diagnostics: discrete rtilde_h may dip below zero; recorded, never clipped
  double min_rtilde = 0.0;
  int negative_cells = 0;
};

struct NonhomogeneousB {
  FeFunction rho_h;
  CellField u_h;  ///< -div rho_h, mean zero by periodicity
  SolveReport report;
};

/// Assemble the div-curl bilinear form; entry (row, col) is B(w_col,
/// w_row), first argument = trial = column. Both per-component mean-zero
/// constraint rows are attached; rhs left zero.
SparseSystem assemble_divcurl_form(const RenormalizedField& ren,
                                   const PeriodicMesh& mesh,
                                   const QuadPolicy& quad);

/// Load int (Atilde : Dw + btilde . w) over test functions w.
Eigen::VectorXd rhs_invariant_b(const RenormalizedField& ren,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad);

/// Load -int btilde_j (div w) over test functions w (corrector problems).
Eigen::VectorXd rhs_corrector_b(const RenormalizedField& ren, int j,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad);

/// Load -int F . w over test functions w (nonhomogeneous problems).
Eigen::VectorXd rhs_vector_load(const std::function<Vec2(double, double)>& F,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad);

InvariantMeasureB solve_invariant_b(const CoefficientField& field,
                                    const PeriodicMesh& mesh,
                                    double tol = 1e-10);

NonhomogeneousB solve_nonhomogeneous_b(const CoefficientField& field,
                                       const std::function<Vec2(double, double)>& F,
                                       const PeriodicMesh& mesh,
                                       double tol = 1e-10);

/// Divergence of a 2-component P1 field as a cell field.
CellField divergence(const FeFunction& v);

}  // namespace fpkhom
