#include "oracle.hpp"

#include <algorithm>
#include <cmath>

#include "profiles.hpp"

namespace fpkhom {

namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr int kGl = 4;  // symmetric pairs
constexpr double kGlX[kGl] = {0.1834346424956498, 0.5255324099163290,
                              0.7966664774136267, 0.9602898564975362};
constexpr double kGlW[kGl] = {0.3626837833783620, 0.3137066458778873,
                              0.2223810344533745, 0.1012285362903763};

double gl8(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < kGl; ++k)
    s += kGlW[k] * (f(c - r * kGlX[k]) + f(c + r * kGlX[k]));
  return r * s;
}

double gl8_composite(const std::function<double(double)>& f, double a, double b,
                     int panels) {
  double s = 0.0, w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) s += gl8(f, a + i * w, a + (i + 1) * w);
  return s;
}

std::vector<double> normalize_breakpoints(std::vector<double> pts) {
  for (double& t : pts) t = std::clamp(t, 0.0, 1.0);
  pts.push_back(0.0);
  pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

constexpr int kTabSize = 1 << 14;

double wrap01(double t) { return t - std::floor(t); }

}  // namespace

double quad1d(const std::function<double(double)>& f,
              std::vector<double> breakpoints, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("quad1d tol must be positive");
  auto pts = normalize_breakpoints(std::move(breakpoints));
  int npieces = static_cast<int>(pts.size()) - 1;
  double piece_tol = tol / std::max(1, npieces);
  double total = 0.0;
  for (int p = 0; p < npieces; ++p) {
    double a = pts[p], b = pts[p + 1];
    if (!(b > a)) continue;
    double prev = gl8_composite(f, a, b, 1);
    bool ok = false;
    for (int depth = 1; depth <= 22; ++depth) {
      double cur = gl8_composite(f, a, b, 1 << depth);
      bool done = std::fabs(cur - prev) < piece_tol;
      prev = cur;
      if (done) {
        ok = true;
        break;
      }
    }
    if (!ok)
      throw Quad1DError("quad1d did not converge on a smooth piece",
                        total + prev);
    total += prev;
  }
  return total;
}

ReferenceSolution ReferenceSolution::build(const CoefficientField& field,
                                           double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("reference tolerance must be positive");
  ReferenceSolution ref;
  ref.tol_ = tol;
  ref.pieces_ = normalize_breakpoints(field.breakpoints1d());
  const std::string& name = field.name();
  if (name == "setting-a-paper") {
    ref.a11_ = profiles::a11_smooth;
    ref.da11_ = profiles::da11_smooth;
    ref.b1_ = profiles::drift_smooth;
  } else if (name == "setting-b-paper") {
    ref.a11_ = profiles::a11_jump;
    ref.da11_ = profiles::da11_jump;
    ref.b1_ = profiles::drift_jump;
  } else {
    // constant-coefficient fields: K = 0, r = 1, chi = 0
    double a0 = field.A(0.0, 0.0).a11;
    ref.a11_ = [a0](double) { return a0; };
    ref.da11_ = [](double) { return 0.0; };
    ref.b1_ = [](double) { return 0.0; };
  }

  int np = static_cast<int>(ref.pieces_.size()) - 1;
  auto fill = [&ref, np](std::vector<std::vector<double>>& tables,
                         const std::function<double(double)>& kern) {
    tables.resize(np);
    double acc = 0.0;
    for (int p = 0; p < np; ++p) {
      double a = ref.pieces_[p], w = (ref.pieces_[p + 1] - a) / kTabSize;
      auto& tab = tables[p];
      tab.resize(kTabSize + 1);
      tab[0] = acc;
      for (int i = 0; i < kTabSize; ++i)
        tab[i + 1] = tab[i] + gl8(kern, a + i * w, a + (i + 1) * w);
      acc = tab[kTabSize];
    }
    return acc;
  };
  fill(ref.ktab_, [&ref](double s) { return ref.kernelK(s); });
  // antiderivative of e^{-K}, built on the same grid via the K evaluator
  ref.C2 = fill(ref.etab_, [&ref](double s) { return ref.kernelE(s); });

  ref.C1 = quad1d([&ref](double t) { return std::exp(ref.K(t)) / ref.a11_(t); },
                  ref.pieces_, tol);
  double meanE =
      quad1d([&ref](double t) { return ref.cumulative(ref.etab_, true, t); },
             ref.pieces_, tol);
  ref.chi_offset = 0.5 - meanE / ref.C2;
  return ref;
}

double ReferenceSolution::kernelK(double s) const { return b1_(s) / a11_(s); }
double ReferenceSolution::kernelE(double s) const { return std::exp(-K(s)); }

double ReferenceSolution::cumulative(
    const std::vector<std::vector<double>>& table, bool exp_kernel,
    double t) const {
  t = std::clamp(t, 0.0, 1.0);
  int np = static_cast<int>(pieces_.size()) - 1;
  int p = static_cast<int>(std::upper_bound(pieces_.begin(), pieces_.end(), t) -
                           pieces_.begin()) - 1;
  p = std::clamp(p, 0, np - 1);
  double a = pieces_[p], w = (pieces_[p + 1] - a) / kTabSize;
  int i = std::clamp(static_cast<int>((t - a) / w), 0, kTabSize - 1);
  double x0 = a + i * w;
  if (t <= x0) return table[p][i];
  auto kern = [this, exp_kernel](double s) {
    return exp_kernel ? kernelE(s) : kernelK(s);
  };
  return table[p][i] + gl8(kern, x0, t);
}

double ReferenceSolution::K(double t) const {
  return cumulative(ktab_, false, t);
}

double ReferenceSolution::r(double t) const {
  t = wrap01(t);
  return std::exp(K(t)) / (a11_(t) * C1);
}

double ReferenceSolution::r_prime(double t) const {
  t = wrap01(t);
  return r(t) * (b1_(t) - da11_(t)) / a11_(t);
}

double ReferenceSolution::chi(double t) const {
  t = wrap01(t);
  return cumulative(etab_, true, t) / C2 - t + chi_offset;
}

double ReferenceSolution::chi_prime(double t) const {
  t = wrap01(t);
  return std::exp(-K(t)) / C2 - 1.0;
}

double ReferenceSolution::chi_second(double t) const {
  t = wrap01(t);
  return -std::exp(-K(t)) / C2 * b1_(t) / a11_(t);
}

Vec2 ReferenceSolution::drift_mean() const {
  double v = quad1d([this](double t) { return r(t) * b1_(t); }, pieces_, tol_);
  return {v, v};
}

SymMat2 reference_effective_matrix(const ReferenceSolution& ref,
                                   const CoefficientField& field) {
  auto entry = [&](int which) {
    return quad1d(
        [&](double t) {
          double cp = ref.chi_prime(t);
          Mat2 M{{{1.0 + cp, 0.0}, {cp, 1.0}}};
          SymMat2 S = congruence(M, field.A(t, 0.0));
          double v = which == 0 ? S.a11 : which == 1 ? S.a12 : S.a22;
          return ref.r(t) * v;
        },
        ref.breakpoints(), ref.tol());
  };
  return {entry(0), entry(1), entry(2)};
}

}  // namespace fpkhom
