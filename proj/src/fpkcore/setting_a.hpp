#pragma once

#include "coefficients.hpp"
#include "linalg.hpp"
#include "mesh.hpp"
#include "norms.hpp"

namespace fpkhom {

/// Invariant measure in the differentiable-diffusion regime: r_h = 1 +
/// r_hat_h where the mean-zero part solves the divergence-form problem
///   a(r_hat_h, v_h) = int (b - div A) . grad v_h   for all v_h,
///   a(v1, v2) = int A grad v1 . grad v2 + int v1 (div A - b) . grad v2.
struct InvariantMeasureA {
  FeFunction r_h;
  FeFunction r_hat_h;
  SolveReport report;
  double min_vertex_value = 0.0;  ///< min of r_h over vertices (recorded, not enforced)
};

/// Stiffness-plus-drift matrix of the form a(., .), with the FIRST
/// argument (trial) indexing columns and the SECOND (test) rows, so
/// discrete problems read a(u_h, v_h) = l(v_h). The single mean-zero
/// constraint row is already attached; the rhs is left zero.
SparseSystem assemble_form_a(const CoefficientField& field,
                             const PeriodicMesh& mesh, const QuadPolicy& quad);

/// Right-hand side int (b - div A) . grad v_h of the invariant-measure
/// problem.
Eigen::VectorXd rhs_invariant_a(const CoefficientField& field,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad);

/// Right-hand side -int F . grad v_h of the nonhomogeneous problem.
Eigen::VectorXd rhs_gradient_load(const std::function<Vec2(double, double)>& F,
                                  const PeriodicMesh& mesh,
                                  const QuadPolicy& quad);

InvariantMeasureA solve_invariant_a(const CoefficientField& field,
                                    const PeriodicMesh& mesh,
                                    double tol = 1e-10);

/// Mean-zero discrete solution of a(u_h, v_h) = -int F . grad v_h.
FeFunction solve_nonhomogeneous_a(const CoefficientField& field,
                                  const std::function<Vec2(double, double)>& F,
                                  const PeriodicMesh& mesh, double tol = 1e-10,
                                  SolveReport* report = nullptr);

/// Exact P1 mass matrix (area/12 elementwise [[2,1,1],[1,2,1],[1,1,2]]).
Eigen::SparseMatrix<double> p1_mass_matrix(const PeriodicMesh& mesh);

/// Squared H1 seminorm of a P1 function, exact (gradients are piecewise
/// constant); sums over all components.
double h1_seminorm2(const FeFunction& u);

}  // namespace fpkhom
