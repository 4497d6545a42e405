#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpkhom {

PeriodicMesh::PeriodicMesh(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("mesh resolution must be >= 2");
  elems_.reserve(2 * n * n);
  double h = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double x = i * h, y = j * h;
      int v00 = vertex_id(i, j), v10 = vertex_id(i + 1, j);
      int v01 = vertex_id(i, j + 1), v11 = vertex_id(i + 1, j + 1);
      Element lo;
      lo.v[0] = v00; lo.v[1] = v10; lo.v[2] = v11;
      lo.p[0] = {x, y}; lo.p[1] = {x + h, y}; lo.p[2] = {x + h, y + h};
      lo.g[0] = {-n * 1.0, 0.0};
      lo.g[1] = {n * 1.0, -n * 1.0};
      lo.g[2] = {0.0, n * 1.0};
      lo.lower = true; lo.ci = i; lo.cj = j;
      elems_.push_back(lo);
      Element up;
      up.v[0] = v00; up.v[1] = v11; up.v[2] = v01;
      up.p[0] = {x, y}; up.p[1] = {x + h, y + h}; up.p[2] = {x, y + h};
      up.g[0] = {0.0, -n * 1.0};
      up.g[1] = {n * 1.0, 0.0};
      up.g[2] = {-n * 1.0, n * 1.0};
      up.lower = false; up.ci = i; up.cj = j;
      elems_.push_back(up);
    }
  }
}

PeriodicMesh::Location PeriodicMesh::locate(double x, double y) const {
  x -= std::floor(x);
  y -= std::floor(y);
  double sx = x * n_, sy = y * n_;
  int i = std::min(static_cast<int>(sx), n_ - 1);
  int j = std::min(static_cast<int>(sy), n_ - 1);
  double fu = sx - i, fv = sy - j;
  Location loc;
  if (fv <= fu) {
    loc.elem = 2 * (j * n_ + i);
    loc.lam[0] = 1.0 - fu;
    loc.lam[1] = fu - fv;
    loc.lam[2] = fv;
  } else {
    loc.elem = 2 * (j * n_ + i) + 1;
    loc.lam[0] = 1.0 - fv;
    loc.lam[1] = fu;
    loc.lam[2] = fv - fu;
  }
  return loc;
}

FeFunction::FeFunction(const PeriodicMesh& mesh, int components)
    : mesh_(&mesh), comps_(components) {
  coef = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(components) * mesh.n_vertices());
}

double FeFunction::eval(double x, double y, int comp) const {
  auto loc = mesh_->locate(x, y);
  return value_local(loc.elem, loc.lam, comp);
}

double FeFunction::value_local(int elem, const double lam[3], int comp) const {
  const Element& el = mesh_->element(elem);
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += lam[k] * coef[dof(el.v[k], comp)];
  return s;
}

Vec2 FeFunction::grad(int elem, int comp) const {
  const Element& el = mesh_->element(elem);
  Vec2 g{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    double c = coef[dof(el.v[k], comp)];
    g.x += c * el.g[k].x;
    g.y += c * el.g[k].y;
  }
  return g;
}

Mat2 FeFunction::jacobian(int elem) const {
  Mat2 J;
  for (int c = 0; c < 2; ++c) {
    Vec2 g = grad(elem, c);
    J.m[c][0] = g.x;
    J.m[c][1] = g.y;
  }
  return J;
}

double FeFunction::integral(int comp) const {
  double h2 = mesh_->h() * mesh_->h();
  double s = 0.0;
  for (int v = 0; v < mesh_->n_vertices(); ++v) s += coef[dof(v, comp)];
  return h2 * s;
}

FeFunction interpolate(const PeriodicMesh& mesh,
                       const std::function<double(double, double)>& f) {
  FeFunction u(mesh, 1);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    Vec2 p = mesh.vertex(v);
    u.coef[v] = f(p.x, p.y);
  }
  return u;
}

double CellField::eval(double x, double y) const {
  return val[mesh_->locate(x, y).elem];
}

double CellField::integral() const {
  double a = mesh_->element_area(), s = 0.0;
  for (double v : val) s += v;
  return a * s;
}

double CellField::min_value() const {
  return *std::min_element(val.begin(), val.end());
}

int CellField::negative_count() const {
  int c = 0;
  for (double v : val)
    if (v < 0.0) ++c;
  return c;
}

}  // namespace fpkhom
