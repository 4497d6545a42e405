#pragma once

#include "correctors.hpp"
#include "setting_a.hpp"
#include "setting_b.hpp"

namespace fpkhom {

/// Homogenized diffusion matrix, with symmetry and ellipticity
/// diagnostics. The asymmetry is a quadrature-roundoff diagnostic: the
/// integrand (I + M) A (I + M)^T is symmetric pointwise.
struct EffectiveMatrix {
  Mat2 value;
  char setting = 'A';
  int mesh_n = 0;
  double asymmetry = 0.0;       ///< max entry of |value - value^T|
  double min_eigenvalue = 0.0;  ///< of the symmetrized value (recorded, not enforced)
};

/// Abar_h = int r_h [I + D chi_h] A [I + D chi_h]^T with per-element
/// constant D chi_h, pointwise A, P1 r_h.
EffectiveMatrix effective_matrix_a(const CoefficientField& field,
                                   const InvariantMeasureA& inv,
                                   const CorrectorA& chi);

/// Abar_h = int r_h [I + xi_h] A [I + xi_h]^T where row j of xi_h is
/// xi_{j,h} evaluated pointwise and r_h is the normalized measure
/// gamma rtilde_h / mass_gamma.
EffectiveMatrix effective_matrix_b(const CoefficientField& field,
                                   const InvariantMeasureB& inv,
                                   const CorrectorB& xi);

}  // namespace fpkhom
