#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "geometry.hpp"

namespace fpkhom {

/// One triangle of the structured mesh. Vertex order is (v00, v10, v11) for
/// the lower triangle of a cell and (v00, v11, v01) for the upper one, so
/// the element is always positively oriented. Coordinates are unwrapped
/// (cells on the right/top seam reach x = 1 or y = 1); vertex ids are
/// wrapped, which encodes the periodic identification.
struct Element {
  int v[3];      ///< global (wrapped) vertex ids
  Vec2 p[3];     ///< unwrapped vertex coordinates
  Vec2 g[3];     ///< gradients of the three barycentric hat functions
  bool lower;    ///< which half of the cell
  int ci, cj;    ///< cell indices in [0, n)
};

/// Uniform n x n periodic triangulation of the unit cell, every cell split
/// along its main diagonal. 2 n^2 congruent triangles of area 1/(2 n^2),
/// n^2 distinct vertices.
class PeriodicMesh {
 public:
  explicit PeriodicMesh(int n);

  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  int n_vertices() const { return n_ * n_; }
  int n_elements() const { return static_cast<int>(elems_.size()); }
  double element_area() const { return 0.5 / (static_cast<double>(n_) * n_); }

  const std::vector<Element>& elements() const { return elems_; }
  const Element& element(int e) const { return elems_[e]; }

  int vertex_id(int i, int j) const {
    i %= n_; if (i < 0) i += n_;
    j %= n_; if (j < 0) j += n_;
    return j * n_ + i;
  }
  /// Representative (unwrapped) coordinates of a vertex id.
  Vec2 vertex(int vid) const {
    return {(vid % n_) / static_cast<double>(n_), (vid / n_) / static_cast<double>(n_)};
  }

  struct Location {
    int elem;
    double lam[3];
  };
  /// Element and barycentric coordinates containing the (wrapped) point.
  Location locate(double x, double y) const;

 private:
  int n_;
  std::vector<Element> elems_;
};

/// A P1 finite element function with one or more components, stored as an
/// interleaved coefficient vector (dof = components * vertex + component).
/// Continuous across the periodic seam by construction.
class FeFunction {
 public:
  FeFunction(const PeriodicMesh& mesh, int components = 1);

  const PeriodicMesh& mesh() const { return *mesh_; }
  int components() const { return comps_; }
  int ndof() const { return static_cast<int>(coef.size()); }

  int dof(int vid, int comp = 0) const { return comps_ * vid + comp; }

  double eval(double x, double y, int comp = 0) const;
  /// Value at given barycentric coordinates of an element.
  double value_local(int elem, const double lam[3], int comp = 0) const;
  /// Constant gradient of one component on an element.
  Vec2 grad(int elem, int comp = 0) const;
  /// Jacobian on an element; row c is the gradient of component c
  /// (2-component functions only).
  Mat2 jacobian(int elem) const;

  /// Exact integral of one component (each hat integrates to h^2).
  double integral(int comp = 0) const;

  Eigen::VectorXd coef;

 private:
  const PeriodicMesh* mesh_;
  int comps_;
};

/// Nodal interpolant of a scalar function.
FeFunction interpolate(const PeriodicMesh& mesh,
                       const std::function<double(double, double)>& f);

/// Piecewise-constant field over the elements (divergences of P1 vector
/// fields live here).
class CellField {
 public:
  explicit CellField(const PeriodicMesh& mesh)
      : val(mesh.n_elements(), 0.0), mesh_(&mesh) {}

  const PeriodicMesh& mesh() const { return *mesh_; }
  double eval(double x, double y) const;
  double integral() const;
  double min_value() const;
  int negative_count() const;

  std::vector<double> val;

 private:
  const PeriodicMesh* mesh_;
};

}  // namespace fpkhom
