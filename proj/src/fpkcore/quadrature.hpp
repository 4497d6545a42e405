#pragma once

#include <vector>

#include "geometry.hpp"

namespace fpkhom {

/// One quadrature node on the reference triangle {(u,v): u,v >= 0, u+v <= 1},
/// given by its barycentric coordinates (l0,l1,l2) and a weight.
/// Weights sum to 1; the integral over a physical triangle T is
/// area(T) * sum_q w_q f(x_q).
struct QuadPoint {
  double l0, l1, l2;
  double w;
};

/// Symmetric rule on the reference triangle, optionally composited over
/// subdivision^2 congruent subtriangles (subtriangle edges at multiples of
/// 1/subdivision, so discontinuity lines sitting at those fractions of an
/// element are integrated exactly piecewise).
struct TriangleRule {
  int order = 0;
  int subdivision = 1;
  std::vector<QuadPoint> points;
};

/// Build a rule of the requested polynomial order (2 or 5) composited on
/// subdivision^2 subtriangles. Throws std::invalid_argument otherwise.
TriangleRule triangle_rule(int order, int subdivision);

}  // namespace fpkhom
