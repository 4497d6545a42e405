#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fpkcore/quadrature.hpp"

using namespace fpkhom;

namespace {

// Integral over the reference triangle {(x,y): x,y >= 0, x+y <= 1} of a
// function given in barycentric evaluation form.
template <typename F>
double ref_integral(const TriangleRule& rule, F&& f) {
  double acc = 0.0;
  for (const QuadPoint& q : rule.points) acc += q.w * f(q.l1, q.l2);
  return 0.5 * acc;  // reference triangle area
}

// Exact monomial integral over the reference triangle: a! b! / (a+b+2)!.
double monomial_exact(int a, int b) {
  auto fact = [](int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
  };
  return fact(a) * fact(b) / fact(a + b + 2);
}

}  // namespace

TEST_CASE("weights of every rule sum to one") {
  for (int order : {2, 5})
    for (int s : {1, 2, 3, 4, 8}) {
      TriangleRule rule = triangle_rule(order, s);
      double w = 0.0;
      for (const QuadPoint& q : rule.points) w += q.w;
      CHECK(rule.order == order);
      CHECK(rule.subdivision == s);
      CHECK(std::fabs(w - 1.0) < 1e-14);
    }
}

TEST_CASE("order-2 rule integrates x + y exactly") {
  TriangleRule rule = triangle_rule(2, 1);
  CHECK(rule.points.size() == 3);
  double v = ref_integral(rule, [](double x, double y) { return x + y; });
  CHECK(std::fabs(v - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("order-2 rule is exact through degree 2") {
  TriangleRule rule = triangle_rule(2, 1);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      double v = ref_integral(rule, [&](double x, double y) {
        return std::pow(x, a) * std::pow(y, b);
      });
      CHECK(std::fabs(v - monomial_exact(a, b)) < 1e-15);
    }
}

TEST_CASE("order-5 rule is exact through degree 5") {
  TriangleRule rule = triangle_rule(5, 1);
  CHECK(rule.points.size() == 7);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) {
      double v = ref_integral(rule, [&](double x, double y) {
        return std::pow(x, a) * std::pow(y, b);
      });
      CHECK(std::fabs(v - monomial_exact(a, b)) < 1e-14);
    }
}

TEST_CASE("composite rules stay exact for polynomials") {
  for (int s : {2, 4}) {
    TriangleRule rule = triangle_rule(5, s);
    CHECK(rule.points.size() == 7u * s * s);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) {
        double v = ref_integral(rule, [&](double x, double y) {
          return std::pow(x, a) * std::pow(y, b);
        });
        CHECK(std::fabs(v - monomial_exact(a, b)) < 1e-14);
      }
  }
}

TEST_CASE("subdivision tames a sign discontinuity at O(1/s^2)") {
  // Physical triangle (0.43,0), (0.56,0), (0.43,0.13) cut by the line
  // x = 0.5; integrand sign(x - 1/2).
  const double ax = 0.43, ay = 0.0, bx = 0.56, by = 0.0, cx = 0.43, cy = 0.13;
  const double area = 0.5 * ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay));
  // The positive part is the triangle (0.5,0), (0.56,0), (0.5,0.06).
  const double pos = 0.5 * 0.06 * 0.06;
  const double exact = pos - (area - pos);
  auto quad_error = [&](int s) {
    TriangleRule rule = triangle_rule(5, s);
    double acc = 0.0;
    for (const QuadPoint& q : rule.points) {
      double x = q.l0 * ax + q.l1 * bx + q.l2 * cx;
      acc += q.w * (x > 0.5 ? 1.0 : (x < 0.5 ? -1.0 : 0.0));
    }
    return std::fabs(acc * area - exact);
  };
  for (int s : {2, 4, 8, 16}) CHECK(quad_error(s) <= 0.02 / (s * s));
  CHECK(quad_error(4) < quad_error(1));
}

TEST_CASE("unsupported parameters are rejected") {
  CHECK_THROWS_AS(triangle_rule(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(2, -1), std::invalid_argument);
}
