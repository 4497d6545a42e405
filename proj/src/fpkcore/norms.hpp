#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mesh.hpp"
#include "quadrature.hpp"

namespace fpkhom {

enum class NormType { Lp, W1p, H1semi };

struct NormSpec {
  NormType type = NormType::Lp;
  double p = 2.0;
};

/// Accepted identifiers: L2, L3, H1, W13, H1semi.
NormSpec parse_norm(const std::string& name);

/// Analytic scalar reference; grad may be empty when only Lp norms are taken.
struct ScalarReference {
  std::function<double(double, double)> value;
  std::function<Vec2(double, double)> grad;
};

/// Analytic 2-vector reference; jac row c is the gradient of component c.
struct VectorReference {
  std::function<Vec2(double, double)> value;
  std::function<Mat2(double, double)> jac;
};

/// True when a vertical line {y1 = c} passes strictly through the element
/// interior (element edges on the line do not count as cuts).
bool element_cut(const Element& el, const std::vector<double>& lines);

/// Element-dependent quadrature selection: a plain order-5 rule away from
/// coefficient jump lines, a composited one on cut elements. The composite
/// subdivision count is a multiple of 4, which aligns subtriangle edges
/// with the jump lines of every built-in problem on every 1/N mesh (the
/// lines sit at quarter points of a cell).
class QuadPolicy {
 public:
  explicit QuadPolicy(std::vector<double> lines, int order = 5,
                      int cut_subdivision = 8);

  const TriangleRule& select(const Element& el) const;
  const std::vector<double>& lines() const { return lines_; }

 private:
  TriangleRule uncut_, cut_;
  std::vector<double> lines_;
};

inline Vec2 physical_point(const Element& el, const QuadPoint& q) {
  return {q.l0 * el.p[0].x + q.l1 * el.p[1].x + q.l2 * el.p[2].x,
          q.l0 * el.p[0].y + q.l1 * el.p[1].y + q.l2 * el.p[2].y};
}

double error_norm(const FeFunction& u, const ScalarReference& ref,
                  NormSpec norm, const QuadPolicy& quad);
double error_norm(const FeFunction& u, const VectorReference& ref,
                  NormSpec norm, const QuadPolicy& quad);
/// Piecewise-constant comparand; Lp norms only.
double error_norm(const CellField& u,
                  const std::function<double(double, double)>& ref,
                  NormSpec norm, const QuadPolicy& quad);

}  // namespace fpkhom
