#pragma once

#include "coefficients.hpp"
#include "linalg.hpp"
#include "mesh.hpp"
#include "norms.hpp"

namespace fpkhom {

/// Cell-problem solutions chi_{j,h} (scalar, mean-zero), j = 1, 2.
struct CorrectorA {
  FeFunction chi[2];
  SolveReport report[2];
};

/// Gradient-corrector approximations xi_{j,h} of grad chi_j (2-component,
/// mean-zero per component), j = 1, 2.
struct CorrectorB {
  FeFunction xi[2];
  SolveReport report[2];
};

/// Mean drift under a given invariant-measure evaluator: int b r over the
/// cell, by order-5 cut-cell quadrature on an n_quad x n_quad mesh. The
/// homogenization interpretation of the correctors needs this to vanish;
/// the check is advisory.
Vec2 check_centering(const CoefficientField& field,
                     const std::function<double(double, double)>& measure,
                     int n_quad = 64);

/// Both correctors of the differentiable-diffusion setting: trial chi and
/// test v solve
///   int r_h A grad chi . grad v - int v beta_h . grad chi = int r_h b_j v,
/// with beta_h = r_h b - (r_h div A + A grad r_h) (product rule with the
/// P1 invariant measure). One factorization, two right-hand sides.
CorrectorA solve_corrector_a(const CoefficientField& field,
                             const FeFunction& r_h, double tol = 1e-10);

/// Both gradient-correctors of the bounded-measurable setting: the unknown
/// sits in the second slot of the div-curl form,
///   B(w_h, xi_{j,h}) = -int btilde_j div w_h   for all w_h,
/// so the system matrix is the exact transpose of the invariant-measure
/// one.
CorrectorB solve_corrector_b(const CoefficientField& field,
                             const PeriodicMesh& mesh, double tol = 1e-10);

/// As above with explicitly supplied renormalized coefficients (test and
/// extension hook).
CorrectorB solve_corrector_b(const RenormalizedField& ren,
                             const PeriodicMesh& mesh, double tol = 1e-10);

}  // namespace fpkhom
