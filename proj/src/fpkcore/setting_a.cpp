#include "setting_a.hpp"

#include <cmath>

namespace fpkhom {

namespace {

Eigen::VectorXd mean_constraint_row(const PeriodicMesh& mesh) {
  double h2 = mesh.h() * mesh.h();
  return Eigen::VectorXd::Constant(mesh.n_vertices(), h2);
}

}  // namespace

SparseSystem assemble_form_a(const CoefficientField& field,
                             const PeriodicMesh& mesh, const QuadPolicy& quad) {
  if (!field.supports_setting_a())
    throw std::invalid_argument(
        "field lacks div(A); divergence-form assembly unavailable");
  SparseSystem sys(mesh.n_vertices());
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    double loc[3][3] = {};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      double w = q.w * area;
      SymMat2 A = field.A(x.x, x.y);
      Vec2 c = field.divA(x.x, x.y) - field.b(x.x, x.y);
      double lam[3] = {q.l0, q.l1, q.l2};
      for (int j = 0; j < 3; ++j) {
        Vec2 Agj = A.apply(el.g[j]);
        for (int i = 0; i < 3; ++i)
          loc[i][j] += w * (dot(Agj, el.g[i]) + lam[j] * dot(c, el.g[i]));
      }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sys.add(el.v[i], el.v[j], loc[i][j]);
  }
  sys.add_constraint(mean_constraint_row(mesh), 0.0);
  return sys;
}

Eigen::VectorXd rhs_invariant_a(const CoefficientField& field,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad) {
  return rhs_gradient_load(
      [&field](double x, double y) {
        return field.divA(x, y) - field.b(x, y);
      },
      mesh, quad);
}

Eigen::VectorXd rhs_gradient_load(const std::function<Vec2(double, double)>& F,
                                  const PeriodicMesh& mesh,
                                  const QuadPolicy& quad) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.n_vertices());
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    double loc[3] = {};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      Vec2 Fx = F(x.x, x.y);
      for (int i = 0; i < 3; ++i) loc[i] -= q.w * area * dot(Fx, el.g[i]);
    }
    for (int i = 0; i < 3; ++i) f[el.v[i]] += loc[i];
  }
  return f;
}

InvariantMeasureA solve_invariant_a(const CoefficientField& field,
                                    const PeriodicMesh& mesh, double tol) {
  QuadPolicy quad(field.discontinuity_lines());
  SparseSystem sys = assemble_form_a(field, mesh, quad);
  sys.rhs = rhs_invariant_a(field, mesh, quad);
  InvariantMeasureA out{FeFunction(mesh, 1), FeFunction(mesh, 1), {}, 0.0};
  out.r_hat_h.coef = solve(sys, &out.report, tol);
  out.r_h.coef = out.r_hat_h.coef.array() + 1.0;
  out.min_vertex_value = out.r_h.coef.minCoeff();
  return out;
}

FeFunction solve_nonhomogeneous_a(const CoefficientField& field,
                                  const std::function<Vec2(double, double)>& F,
                                  const PeriodicMesh& mesh, double tol,
                                  SolveReport* report) {
  QuadPolicy quad(field.discontinuity_lines());
  SparseSystem sys = assemble_form_a(field, mesh, quad);
  sys.rhs = rhs_gradient_load(F, mesh, quad);
  FeFunction u(mesh, 1);
  u.coef = solve(sys, report, tol);
  return u;
}

Eigen::SparseMatrix<double> p1_mass_matrix(const PeriodicMesh& mesh) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(9 * mesh.n_elements());
  double a12 = mesh.element_area() / 12.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        t.emplace_back(el.v[i], el.v[j], (i == j ? 2.0 : 1.0) * a12);
  }
  Eigen::SparseMatrix<double> M(mesh.n_vertices(), mesh.n_vertices());
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

double h1_seminorm2(const FeFunction& u) {
  const PeriodicMesh& mesh = u.mesh();
  double area = mesh.element_area(), s = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e)
    for (int c = 0; c < u.components(); ++c) s += area * norm2(u.grad(e, c));
  return s;
}

}  // namespace fpkhom
