#include "setting_b.hpp"

#include <cmath>

namespace fpkhom {

namespace {

// curl of the basis function at local vertex k, component c (constant)
double basis_curl(const Element& el, int k, int c) {
  return c == 0 ? -el.g[k].y : el.g[k].x;
}

void add_component_mean_constraints(SparseSystem& sys, const PeriodicMesh& mesh) {
  double h2 = mesh.h() * mesh.h();
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(2 * mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) row[2 * v + c] = h2;
    sys.add_constraint(std::move(row), 0.0);
  }
}

}  // namespace

SparseSystem assemble_divcurl_form(const RenormalizedField& ren,
                                   const PeriodicMesh& mesh,
                                   const QuadPolicy& quad) {
  SparseSystem sys(2 * mesh.n_vertices());
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    double loc[6][6] = {};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      double w = q.w * area;
      SymMat2 At = ren.Atilde(x.x, x.y);
      Vec2 bt = ren.btilde(x.x, x.y);
      double lam[3] = {q.l0, q.l1, q.l2};
      // test factor (Atilde : D phi_{i,a}) + btilde_a lam_i
      double test[3][2];
      for (int i = 0; i < 3; ++i) {
        Vec2 Ag = At.apply(el.g[i]);
        test[i][0] = Ag.x + bt.x * lam[i];
        test[i][1] = Ag.y + bt.y * lam[i];
      }
      for (int j = 0; j < 3; ++j)
        for (int c = 0; c < 2; ++c) {
          double divtrial = c == 0 ? el.g[j].x : el.g[j].y;
          for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 2; ++a)
              loc[2 * i + a][2 * j + c] += w * divtrial * test[i][a];
        }
    }
    // curl(trial) curl(test): both factors constant on the element
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 2; ++a) {
        double ci = basis_curl(el, i, a);
        for (int j = 0; j < 3; ++j)
          for (int c = 0; c < 2; ++c)
            loc[2 * i + a][2 * j + c] += area * ci * basis_curl(el, j, c);
      }
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 2; ++a)
        for (int j = 0; j < 3; ++j)
          for (int c = 0; c < 2; ++c)
            sys.add(2 * el.v[i] + a, 2 * el.v[j] + c, loc[2 * i + a][2 * j + c]);
  }
  add_component_mean_constraints(sys, mesh);
  return sys;
}

Eigen::VectorXd rhs_invariant_b(const RenormalizedField& ren,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(2 * mesh.n_vertices());
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    double loc[6] = {};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      double w = q.w * area;
      SymMat2 At = ren.Atilde(x.x, x.y);
      Vec2 bt = ren.btilde(x.x, x.y);
      double lam[3] = {q.l0, q.l1, q.l2};
      for (int i = 0; i < 3; ++i) {
        Vec2 Ag = At.apply(el.g[i]);
        loc[2 * i] += w * (Ag.x + bt.x * lam[i]);
        loc[2 * i + 1] += w * (Ag.y + bt.y * lam[i]);
      }
    }
    for (int i = 0; i < 3; ++i) {
      f[2 * el.v[i]] += loc[2 * i];
      f[2 * el.v[i] + 1] += loc[2 * i + 1];
    }
  }
  return f;
}

Eigen::VectorXd rhs_corrector_b(const RenormalizedField& ren, int j,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad) {
  if (j != 0 && j != 1) throw std::invalid_argument("corrector index must be 0 or 1");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(2 * mesh.n_vertices());
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    double loc[6] = {};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      Vec2 bt = ren.btilde(x.x, x.y);
      double btj = j == 0 ? bt.x : bt.y;
      for (int i = 0; i < 3; ++i) {
        loc[2 * i] -= q.w * area * btj * el.g[i].x;
        loc[2 * i + 1] -= q.w * area * btj * el.g[i].y;
      }
    }
    for (int i = 0; i < 3; ++i) {
      f[2 * el.v[i]] += loc[2 * i];
      f[2 * el.v[i] + 1] += loc[2 * i + 1];
    }
  }
  return f;
}

Eigen::VectorXd rhs_vector_load(const std::function<Vec2(double, double)>& F,
                                const PeriodicMesh& mesh,
                                const QuadPolicy& quad) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(2 * mesh.n_vertices());
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    double loc[6] = {};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      Vec2 Fx = F(x.x, x.y);
      double lam[3] = {q.l0, q.l1, q.l2};
      for (int i = 0; i < 3; ++i) {
        loc[2 * i] -= q.w * area * Fx.x * lam[i];
        loc[2 * i + 1] -= q.w * area * Fx.y * lam[i];
      }
    }
    for (int i = 0; i < 3; ++i) {
      f[2 * el.v[i]] += loc[2 * i];
      f[2 * el.v[i] + 1] += loc[2 * i + 1];
    }
  }
  return f;
}

CellField divergence(const FeFunction& v) {
  CellField d(v.mesh());
  for (int e = 0; e < v.mesh().n_elements(); ++e) {
    Mat2 J = v.jacobian(e);
    d.val[e] = J.m[0][0] + J.m[1][1];
  }
  return d;
}

double InvariantMeasureB::gamma(double x, double y) const {
  SymMat2 a = field.A(x, y);
  Vec2 bb = field.b(x, y);
  return a.trace() / (a.frob2() + norm2(bb));
}

InvariantMeasureB solve_invariant_b(const CoefficientField& field,
                                    const PeriodicMesh& mesh, double tol) {
  RenormalizedField ren(field);
  QuadPolicy quad(field.discontinuity_lines());
  SparseSystem sys = assemble_divcurl_form(ren, mesh, quad);
  sys.rhs = rhs_invariant_b(ren, mesh, quad);
  InvariantMeasureB out{FeFunction(mesh, 2), CellField(mesh), 0.0, {}, field, 0.0, 0};
  out.rho_h.coef = solve(sys, &out.report, tol);

  CellField div = divergence(out.rho_h);
  for (int e = 0; e < mesh.n_elements(); ++e) out.rtilde_h.val[e] = 1.0 - div.val[e];
  out.min_rtilde = out.rtilde_h.min_value();
  out.negative_cells = out.rtilde_h.negative_count();

  double area = mesh.element_area(), mass = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    double s = 0.0;
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      s += q.w * out.gamma(x.x, x.y);
    }
    mass += area * s * out.rtilde_h.val[e];
  }
  out.mass_gamma = mass;
  if (!(out.mass_gamma > 0.0))
    throw std::runtime_error("normalization mass int gamma rtilde_h is not positive");
  return out;
}

NonhomogeneousB solve_nonhomogeneous_b(const CoefficientField& field,
                                       const std::function<Vec2(double, double)>& F,
                                       const PeriodicMesh& mesh, double tol) {
  RenormalizedField ren(field);
  QuadPolicy quad(field.discontinuity_lines());
  SparseSystem sys = assemble_divcurl_form(ren, mesh, quad);
  sys.rhs = rhs_vector_load(F, mesh, quad);
  NonhomogeneousB out{FeFunction(mesh, 2), CellField(mesh), {}};
  out.rho_h.coef = solve(sys, &out.report, tol);
  CellField div = divergence(out.rho_h);
  for (int e = 0; e < mesh.n_elements(); ++e) out.u_h.val[e] = -div.val[e];
  return out;
}

}  // namespace fpkhom
