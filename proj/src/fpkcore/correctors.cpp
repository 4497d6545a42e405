#include "correctors.hpp"

#include "setting_b.hpp"

namespace fpkhom {

Vec2 check_centering(const CoefficientField& field,
                     const std::function<double(double, double)>& measure,
                     int n_quad) {
  PeriodicMesh mesh(n_quad);
  QuadPolicy quad(field.discontinuity_lines());
  double area = mesh.element_area();
  Vec2 acc{0.0, 0.0};
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    for (const QuadPoint& q : quad.select(el).points) {
      Vec2 x = physical_point(el, q);
      double w = q.w * area * measure(x.x, x.y);
      acc = acc + w * field.b(x.x, x.y);
    }
  }
  return acc;
}

CorrectorA solve_corrector_a(const CoefficientField& field,
                             const FeFunction& r_h, double tol) {
  if (!field.supports_setting_a())
    throw std::invalid_argument(
        "field lacks div(A); weighted corrector assembly unavailable");
  const PeriodicMesh& mesh = r_h.mesh();
  QuadPolicy quad(field.discontinuity_lines());
  SparseSystem sys(mesh.n_vertices());
  Eigen::VectorXd f[2] = {Eigen::VectorXd::Zero(mesh.n_vertices()),
                          Eigen::VectorXd::Zero(mesh.n_vertices())};
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    Vec2 grad_r = r_h.grad(e);
    double loc[3][3] = {};
    double fl[2][3] = {};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      double w = q.w * area;
      double lam[3] = {q.l0, q.l1, q.l2};
      double rv = r_h.value_local(e, lam, 0);
      SymMat2 A = field.A(x.x, x.y);
      Vec2 b = field.b(x.x, x.y);
      // beta_h = r_h b - div(r_h A) with div expanded by the product rule
      Vec2 beta = rv * b - (rv * field.divA(x.x, x.y) + A.apply(grad_r));
      for (int j = 0; j < 3; ++j) {
        Vec2 Agj = A.apply(el.g[j]);
        double drift = dot(beta, el.g[j]);
        for (int i = 0; i < 3; ++i)
          loc[i][j] += w * (rv * dot(Agj, el.g[i]) - lam[i] * drift);
      }
      for (int i = 0; i < 3; ++i) {
        fl[0][i] += w * rv * b.x * lam[i];
        fl[1][i] += w * rv * b.y * lam[i];
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) sys.add(el.v[i], el.v[j], loc[i][j]);
      f[0][el.v[i]] += fl[0][i];
      f[1][el.v[i]] += fl[1][i];
    }
  }
  double h2 = mesh.h() * mesh.h();
  sys.add_constraint(Eigen::VectorXd::Constant(mesh.n_vertices(), h2), 0.0);

  std::vector<SolveReport> reps;
  auto sols = solve_multi(sys, {f[0], f[1]}, &reps, tol);
  CorrectorA out{{FeFunction(mesh, 1), FeFunction(mesh, 1)},
                 {reps[0], reps[1]}};
  out.chi[0].coef = sols[0];
  out.chi[1].coef = sols[1];
  return out;
}

CorrectorB solve_corrector_b(const RenormalizedField& ren,
                             const PeriodicMesh& mesh, double tol) {
  QuadPolicy quad(ren.discontinuity_lines());
  SparseSystem sys = assemble_divcurl_form(ren, mesh, quad).transposed();
  std::vector<SolveReport> reps;
  auto sols = solve_multi(sys,
                          {rhs_corrector_b(ren, 0, mesh, quad),
                           rhs_corrector_b(ren, 1, mesh, quad)},
                          &reps, tol);
  CorrectorB out{{FeFunction(mesh, 2), FeFunction(mesh, 2)},
                 {reps[0], reps[1]}};
  out.xi[0].coef = sols[0];
  out.xi[1].coef = sols[1];
  return out;
}

CorrectorB solve_corrector_b(const CoefficientField& field,
                             const PeriodicMesh& mesh, double tol) {
  return solve_corrector_b(RenormalizedField(field), mesh, tol);
}

}  // namespace fpkhom
