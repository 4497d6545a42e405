#include "effective.hpp"

#include <cmath>

namespace fpkhom {

namespace {

// rows of M against symmetric A: (M A M^T)_{ij} = m_i . (A m_j)
Mat2 sandwich(const Mat2& M, const SymMat2& A) {
  Vec2 r0{M.m[0][0], M.m[0][1]}, r1{M.m[1][0], M.m[1][1]};
  Vec2 Ar0 = A.apply(r0), Ar1 = A.apply(r1);
  return {{{dot(r0, Ar0), dot(r0, Ar1)}, {dot(r1, Ar0), dot(r1, Ar1)}}};
}

EffectiveMatrix finish(Mat2 acc, char setting, int n) {
  EffectiveMatrix out;
  out.value = acc;
  out.setting = setting;
  out.mesh_n = n;
  out.asymmetry = std::fabs(acc.m[0][1] - acc.m[1][0]);
  SymMat2 sym{acc.m[0][0], 0.5 * (acc.m[0][1] + acc.m[1][0]), acc.m[1][1]};
  out.min_eigenvalue = sym.eig_min();
  return out;
}

}  // namespace

EffectiveMatrix effective_matrix_a(const CoefficientField& field,
                                   const InvariantMeasureA& inv,
                                   const CorrectorA& chi) {
  const PeriodicMesh& mesh = inv.r_h.mesh();
  if (&chi.chi[0].mesh() != &mesh || &chi.chi[1].mesh() != &mesh)
    throw std::invalid_argument("measure and correctors live on different meshes");
  QuadPolicy quad(field.discontinuity_lines());
  double area = mesh.element_area();
  Mat2 acc;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    Vec2 g0 = chi.chi[0].grad(e), g1 = chi.chi[1].grad(e);
    Mat2 M{{{1.0 + g0.x, g0.y}, {g1.x, 1.0 + g1.y}}};
    for (const QuadPoint& q : quad.select(el).points) {
      Vec2 x = physical_point(el, q);
      double lam[3] = {q.l0, q.l1, q.l2};
      double w = q.w * area * inv.r_h.value_local(e, lam, 0);
      Mat2 P = sandwich(M, field.A(x.x, x.y));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc.m[i][j] += w * P.m[i][j];
    }
  }
  return finish(acc, 'A', mesh.n());
}

EffectiveMatrix effective_matrix_b(const CoefficientField& field,
                                   const InvariantMeasureB& inv,
                                   const CorrectorB& xi) {
  const PeriodicMesh& mesh = inv.rho_h.mesh();
  if (&xi.xi[0].mesh() != &mesh || &xi.xi[1].mesh() != &mesh)
    throw std::invalid_argument("measure and correctors live on different meshes");
  QuadPolicy quad(field.discontinuity_lines());
  double area = mesh.element_area();
  Mat2 acc;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    for (const QuadPoint& q : quad.select(el).points) {
      Vec2 x = physical_point(el, q);
      double lam[3] = {q.l0, q.l1, q.l2};
      double w = q.w * area * inv.gamma(x.x, x.y) * inv.rtilde_h.val[e] /
                 inv.mass_gamma;
      Mat2 M;
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          M.m[j][k] = (j == k ? 1.0 : 0.0) + xi.xi[j].value_local(e, lam, k);
      Mat2 P = sandwich(M, field.A(x.x, x.y));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc.m[i][j] += w * P.m[i][j];
    }
  }
  return finish(acc, 'B', mesh.n());
}

}  // namespace fpkhom
