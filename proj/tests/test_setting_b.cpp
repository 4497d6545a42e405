#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fpkcore/coefficients.hpp"
#include "fpkcore/correctors.hpp"
#include "fpkcore/mesh.hpp"
#include "fpkcore/norms.hpp"
#include "fpkcore/setting_a.hpp"  // p1_mass_matrix, h1_seminorm2
#include "fpkcore/setting_b.hpp"

using namespace fpkhom;

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd random_field(const PeriodicMesh& mesh, std::mt19937& rng,
                             bool demean) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  int nv = mesh.n_vertices();
  Eigen::VectorXd v(2 * nv);
  for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  if (demean) {
    for (int c = 0; c < 2; ++c) {
      double mean = 0.0;
      for (int i = 0; i < nv; ++i) mean += v[2 * i + c];
      mean /= nv;
      for (int i = 0; i < nv; ++i) v[2 * i + c] -= mean;
    }
  }
  return v;
}

double div_energy(const FeFunction& v) {
  CellField d = divergence(v);
  double area = v.mesh().element_area();
  double s = 0.0;
  for (double val : d.val) s += area * val * val;
  return s;
}

double skew_energy(const FeFunction& v) {
  double area = v.mesh().element_area();
  double s = 0.0;
  for (int e = 0; e < v.mesh().n_elements(); ++e) {
    Mat2 J = v.jacobian(e);
    double w = J.m[0][1] - J.m[1][0];
    s += area * 2.0 * w * w;  // |J - J^T|_F^2 = 2 (J01 - J10)^2
  }
  return s;
}
}  // namespace

TEST_CASE("identity coefficients give the flat measure exactly") {
  auto field = CoefficientField::make_builtin("identity");
  PeriodicMesh mesh(16);
  auto inv = solve_invariant_b(field, mesh);
  CHECK(inv.rho_h.coef.cwiseAbs().maxCoeff() < 1e-12);
  for (double v : inv.rtilde_h.val) CHECK(std::fabs(v - 1.0) < 1e-12);
  CHECK(std::fabs(inv.mass_gamma - 1.0) < 1e-12);
  CHECK(std::fabs(inv.r_h_eval(0.37, 0.81) - 1.0) < 1e-12);
  CHECK(inv.negative_cells == 0);
}

TEST_CASE("energy identity: div^2 + half skew^2 equals the full gradient") {
  PeriodicMesh mesh(8);
  std::mt19937 rng(99);
  FeFunction v(mesh, 2);
  for (int trial = 0; trial < 10; ++trial) {
    v.coef = random_field(mesh, rng, false);
    double lhs = div_energy(v) + 0.5 * skew_energy(v);
    double rhs = h1_seminorm2(v);
    CHECK(std::fabs(lhs - rhs) < 1e-12 * (1.0 + rhs));
  }
}

TEST_CASE("div-curl form is coercive with the predicted constant") {
  auto field = CoefficientField::make_builtin("setting-b-paper");
  RenormalizedField ren(field);
  PeriodicMesh mesh(16);
  QuadPolicy quad(field.discontinuity_lines());
  Eigen::SparseMatrix<double> M = assemble_divcurl_form(ren, mesh, quad).matrix();
  double kappa = check_cordes(field, 1000).kappa;
  double c0 = 1.0 - std::sqrt(1.0 - kappa);
  CHECK(c0 > 0.29);

  std::mt19937 rng(2024);
  FeFunction u(mesh, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd v = random_field(mesh, rng, true);
    u.coef = v;
    double energy = v.dot(M * v);
    double grad2 = h1_seminorm2(u);
    CHECK(energy >= c0 * grad2 - 1e-8 * (1.0 + grad2));
  }
}

TEST_CASE("div-curl form is bounded with the predicted constant") {
  auto field = CoefficientField::make_builtin("setting-b-paper");
  RenormalizedField ren(field);
  PeriodicMesh mesh(16);
  QuadPolicy quad(field.discontinuity_lines());
  Eigen::SparseMatrix<double> M = assemble_divcurl_form(ren, mesh, quad).matrix();
  auto ell = check_ellipticity(field, 256);
  double bound =
      1.0 + (ell.lambda_max / ell.lambda_min) * std::sqrt(2.0) *
                std::sqrt(1.0 + 2.0 / (kPi * kPi));

  std::mt19937 rng(77);
  FeFunction uv(mesh, 2), uw(mesh, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd v = random_field(mesh, rng, true);
    Eigen::VectorXd w = random_field(mesh, rng, true);
    uv.coef = v;
    uw.coef = w;
    // entry (row, col) = B(w_col, w_row): first argument indexes columns
    double bvw = w.dot(M * v);
    double prod = std::sqrt(h1_seminorm2(uv)) * std::sqrt(h1_seminorm2(uw));
    CHECK(std::fabs(bvw) <= bound * prod + 1e-8);
  }
}

TEST_CASE("computed auxiliary field satisfies the mean-zero Galerkin equations") {
  auto field = CoefficientField::make_builtin("setting-b-paper");
  PeriodicMesh mesh(24);
  auto inv = solve_invariant_b(field, mesh);
  RenormalizedField ren(field);
  QuadPolicy quad(field.discontinuity_lines());
  SparseSystem sys = assemble_divcurl_form(ren, mesh, quad);
  Eigen::SparseMatrix<double> M = sys.matrix();
  Eigen::VectorXd f = rhs_invariant_b(ren, mesh, quad);
  Eigen::VectorXd defect = M * inv.rho_h.coef - f;
  double scale = 1.0 + f.norm();

  // tested against every mean-zero test field (the solution space of the
  // constrained problem); the multiplier absorbs the constant directions
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXd w = random_field(mesh, rng, true);
    CHECK(std::fabs(w.dot(defect)) < 1e-8 * scale * w.norm());
  }
  CHECK(std::fabs(inv.rho_h.integral(0)) < 1e-10);
  CHECK(std::fabs(inv.rho_h.integral(1)) < 1e-10);
}

TEST_CASE("unnormalized measure has exactly unit mass; diagnostics agree") {
  auto field = CoefficientField::make_builtin("setting-b-paper");
  for (int n : {16, 17}) {
    PeriodicMesh mesh(n);
    auto inv = solve_invariant_b(field, mesh);
    CHECK(std::fabs(inv.rtilde_h.integral() - 1.0) < 1e-13);

    double mn = inv.rtilde_h.val[0];
    int neg = 0;
    for (double v : inv.rtilde_h.val) {
      mn = std::min(mn, v);
      if (v < 0.0) ++neg;
    }
    CHECK(inv.min_rtilde == mn);
    CHECK(inv.negative_cells == neg);
  }
}

TEST_CASE("normalized measure integrates to one under independent quadrature") {
  auto field = CoefficientField::make_builtin("setting-b-paper");
  for (int n : {16, 17}) {
    PeriodicMesh mesh(n);
    auto inv = solve_invariant_b(field, mesh);
    // integrate gamma * rtilde / mass_gamma on a three-times-finer mesh
    PeriodicMesh fine(3 * n);
    QuadPolicy quad(field.discontinuity_lines(), 5, 8);
    double mass = 0.0;
    double area = fine.element_area();
    for (int e = 0; e < fine.n_elements(); ++e) {
      const Element& el = fine.element(e);
      const TriangleRule& rule = quad.select(el);
      double acc = 0.0;
      for (const QuadPoint& q : rule.points) {
        Vec2 p = physical_point(el, q);
        acc += q.w * inv.r_h_eval(p.x, p.y);
      }
      mass += area * acc;
    }
    CHECK(std::fabs(mass - 1.0) < 1e-8);
  }
}

TEST_CASE("constant coefficients with zero drift give exact flat solutions") {
  auto field = CoefficientField::make_builtin("const-diag:2,5");
  PeriodicMesh mesh(12);
  auto inv = solve_invariant_b(field, mesh);
  CHECK(inv.rho_h.coef.cwiseAbs().maxCoeff() < 1e-12);
  for (double v : inv.rtilde_h.val) CHECK(std::fabs(v - 1.0) < 1e-12);
  auto cor = solve_corrector_b(field, mesh);
  CHECK(cor.xi[0].coef.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(cor.xi[1].coef.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nonhomogeneous solve returns a mean-zero cell function") {
  auto field = CoefficientField::make_builtin("setting-b-paper");
  PeriodicMesh mesh(16);
  auto F = [](double x, double) {
    return Vec2{-std::cos(2.0 * kPi * x) / (2.0 * kPi), 0.0};
  };
  auto sol = solve_nonhomogeneous_b(field, F, mesh);
  CHECK(std::fabs(sol.u_h.integral()) < 1e-13);
  CHECK(sol.report.relative_residual < 1e-9);
}

TEST_CASE("gradient correctors are discretely curl-free") {
  // The corrector load only involves div w, so testing with any
  // divergence-free trial field forces curl xi orthogonal to every
  // attainable curl: the discrete corrector is an exact discrete gradient.
  RenormalizedField ren(
      [](double x, double y) {
        return SymMat2{1.0 + 0.2 * std::sin(2.0 * kPi * x),
                       0.1 * std::cos(2.0 * kPi * y),
                       1.0 - 0.15 * std::cos(2.0 * kPi * y)};
      },
      [](double x, double y) {
        return Vec2{0.1 * std::sin(2.0 * kPi * x), 0.1 * std::cos(2.0 * kPi * y)};
      },
      {});
  for (int n : {8, 17, 32}) {
    PeriodicMesh mesh(n);
    auto cor = solve_corrector_b(ren, mesh);
    for (int j = 0; j < 2; ++j) {
      double grad2 = h1_seminorm2(cor.xi[j]);
      CHECK(grad2 > 0.0);
      CHECK(skew_energy(cor.xi[j]) < 1e-12 * (1.0 + grad2));
    }
  }
  auto field = CoefficientField::make_builtin("setting-b-paper");
  PeriodicMesh mesh(16);
  auto cor = solve_corrector_b(field, mesh);
  for (int j = 0; j < 2; ++j)
    CHECK(skew_energy(cor.xi[j]) <
          1e-12 * (1.0 + h1_seminorm2(cor.xi[j])));
}
