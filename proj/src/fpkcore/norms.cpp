#include "norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpkhom {

NormSpec parse_norm(const std::string& name) {
  if (name == "L2") return {NormType::Lp, 2.0};
  if (name == "L3") return {NormType::Lp, 3.0};
  if (name == "H1") return {NormType::W1p, 2.0};
  if (name == "W13") return {NormType::W1p, 3.0};
  if (name == "H1semi") return {NormType::H1semi, 2.0};
  throw std::invalid_argument("unknown norm: " + name);
}

bool element_cut(const Element& el, const std::vector<double>& lines) {
  double xmin = std::min({el.p[0].x, el.p[1].x, el.p[2].x});
  double xmax = std::max({el.p[0].x, el.p[1].x, el.p[2].x});
  for (double c : lines)
    if (xmin < c && c < xmax) return true;
  return false;
}

QuadPolicy::QuadPolicy(std::vector<double> lines, int order, int cut_subdivision)
    : uncut_(triangle_rule(order, 1)),
      cut_(triangle_rule(order, cut_subdivision)),
      lines_(std::move(lines)) {}

const TriangleRule& QuadPolicy::select(const Element& el) const {
  return element_cut(el, lines_) ? cut_ : uncut_;
}

namespace {

double powp(double t, double p) {
  if (p == 2.0) return t * t;
  if (p == 3.0) return t * t * t;
  return std::pow(t, p);
}

void validate(const NormSpec& ns) {
  if (ns.p < 1.0) throw std::invalid_argument("norm exponent must be >= 1");
}

}  // namespace

double error_norm(const FeFunction& u, const ScalarReference& ref,
                  NormSpec ns, const QuadPolicy& quad) {
  validate(ns);
  bool need_val = ns.type != NormType::H1semi;
  bool need_grad = ns.type != NormType::Lp;
  double acc_val = 0.0, acc_grad = 0.0;
  const auto& mesh = u.mesh();
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    Vec2 gh = need_grad ? u.grad(e) : Vec2{0.0, 0.0};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      double w = q.w * area;
      if (need_val) {
        double lam[3] = {q.l0, q.l1, q.l2};
        double d = u.value_local(e, lam, 0) - ref.value(x.x, x.y);
        acc_val += w * powp(std::fabs(d), ns.p);
      }
      if (need_grad) {
        Vec2 d = gh - ref.grad(x.x, x.y);
        acc_grad += w * powp(norm(d), ns.p);
      }
    }
  }
  switch (ns.type) {
    case NormType::Lp:
      return std::pow(acc_val, 1.0 / ns.p);
    case NormType::H1semi:
      return std::sqrt(acc_grad);
    case NormType::W1p:
      return std::pow(acc_val + acc_grad, 1.0 / ns.p);
  }
  return 0.0;
}

double error_norm(const FeFunction& u, const VectorReference& ref,
                  NormSpec ns, const QuadPolicy& quad) {
  validate(ns);
  bool need_val = ns.type != NormType::H1semi;
  bool need_grad = ns.type != NormType::Lp;
  double acc_val = 0.0, acc_grad = 0.0;
  const auto& mesh = u.mesh();
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    Mat2 Jh = need_grad ? u.jacobian(e) : Mat2{};
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      double w = q.w * area;
      if (need_val) {
        double lam[3] = {q.l0, q.l1, q.l2};
        Vec2 uh{u.value_local(e, lam, 0), u.value_local(e, lam, 1)};
        Vec2 d = uh - ref.value(x.x, x.y);
        acc_val += w * powp(norm(d), ns.p);
      }
      if (need_grad) {
        Mat2 Jr = ref.jac(x.x, x.y);
        double f2 = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int c = 0; c < 2; ++c) {
            double d = Jh.m[a][c] - Jr.m[a][c];
            f2 += d * d;
          }
        acc_grad += w * powp(std::sqrt(f2), ns.p);
      }
    }
  }
  switch (ns.type) {
    case NormType::Lp:
      return std::pow(acc_val, 1.0 / ns.p);
    case NormType::H1semi:
      return std::sqrt(acc_grad);
    case NormType::W1p:
      return std::pow(acc_val + acc_grad, 1.0 / ns.p);
  }
  return 0.0;
}

double error_norm(const CellField& u,
                  const std::function<double(double, double)>& ref,
                  NormSpec ns, const QuadPolicy& quad) {
  validate(ns);
  if (ns.type != NormType::Lp)
    throw std::invalid_argument("piecewise-constant fields support Lp norms only");
  double acc = 0.0;
  const auto& mesh = u.mesh();
  double area = mesh.element_area();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    for (const QuadPoint& q : rule.points) {
      Vec2 x = physical_point(el, q);
      acc += q.w * area * powp(std::fabs(u.val[e] - ref(x.x, x.y)), ns.p);
    }
  }
  return std::pow(acc, 1.0 / ns.p);
}

}  // namespace fpkhom
