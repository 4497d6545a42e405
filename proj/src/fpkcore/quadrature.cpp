#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fpkhom {

namespace {

// Base rules in reference coordinates (u,v); weights sum to 1.
std::vector<QuadPoint> base_rule(int order) {
  std::vector<QuadPoint> pts;
  auto push = [&pts](double u, double v, double w) {
    pts.push_back({1.0 - u - v, u, v, w});
  };
  if (order == 2) {
    // 3-point midpoint-type rule, exact for degree 2
    push(1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0);
    push(2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0);
    push(1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0);
  } else if (order == 5) {
    // 7-point rule, exact for degree 5
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
    push(1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0);
    push(a1, a1, w1);
    push(1.0 - 2.0 * a1, a1, w1);
    push(a1, 1.0 - 2.0 * a1, w1);
    push(a2, a2, w2);
    push(1.0 - 2.0 * a2, a2, w2);
    push(a2, 1.0 - 2.0 * a2, w2);
  } else {
    throw std::invalid_argument("triangle_rule: order must be 2 or 5");
  }
  return pts;
}

}  // namespace

TriangleRule triangle_rule(int order, int subdivision) {
  if (subdivision < 1) throw std::invalid_argument("triangle_rule: subdivision must be >= 1");
  const auto base = base_rule(order);
  TriangleRule rule;
  rule.order = order;
  rule.subdivision = subdivision;
  if (subdivision == 1) {
    rule.points = base;
    return rule;
  }
  const int s = subdivision;
  const double inv = 1.0 / s;
  const double wscale = 1.0 / double(s) / double(s);
  auto add_sub = [&](double u0, double v0, double u1, double v1, double u2, double v2) {
    for (const auto& q : base) {
      // reference point of the base rule mapped into the subtriangle
      const double bu = q.l1, bv = q.l2;
      const double u = u0 + bu * (u1 - u0) + bv * (u2 - u0);
      const double v = v0 + bu * (v1 - v0) + bv * (v2 - v0);
      rule.points.push_back({1.0 - u - v, u, v, q.w * wscale});
    }
  };
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s - i; ++j)
      add_sub(i * inv, j * inv, (i + 1) * inv, j * inv, i * inv, (j + 1) * inv);
  for (int i = 0; i < s - 1; ++i)
    for (int j = 0; j < s - 1 - i; ++j)
      add_sub((i + 1) * inv, j * inv, (i + 1) * inv, (j + 1) * inv, i * inv, (j + 1) * inv);
  return rule;
}

}  // namespace fpkhom
