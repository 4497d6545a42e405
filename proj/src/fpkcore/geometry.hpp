#pragma once

#include <array>
#include <cmath>

namespace fpkhom {

/// 2-vector in the unit cell.
struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// Symmetric 2x2 matrix (diffusion coefficients are symmetric by contract).
struct SymMat2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;

  double trace() const { return a11 + a22; }
  double frob2() const { return a11 * a11 + 2.0 * a12 * a12 + a22 * a22; }
  Vec2 apply(Vec2 v) const { return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y}; }
  double eig_min() const {
    double d = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
    return 0.5 * (a11 + a22) - d;
  }
  double eig_max() const {
    double d = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
    return 0.5 * (a11 + a22) + d;
  }
};

inline SymMat2 operator*(double s, SymMat2 m) { return {s * m.a11, s * m.a12, s * m.a22}; }

/// General 2x2 matrix, row-major.
struct Mat2 {
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

  static Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
  double frob2() const {
    return m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
  }
};

/// M * S * M^T for symmetric S; result is symmetric, returned as SymMat2.
inline SymMat2 congruence(const Mat2& M, const SymMat2& S) {
  // rows of M applied to S
  Vec2 r0 = S.apply({M.m[0][0], M.m[0][1]});
  Vec2 r1 = S.apply({M.m[1][0], M.m[1][1]});
  SymMat2 out;
  out.a11 = M.m[0][0] * r0.x + M.m[0][1] * r0.y;
  out.a12 = M.m[1][0] * r0.x + M.m[1][1] * r0.y;
  out.a22 = M.m[1][0] * r1.x + M.m[1][1] * r1.y;
  return out;
}

}  // namespace fpkhom
