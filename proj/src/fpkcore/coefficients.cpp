#include "coefficients.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "profiles.hpp"

namespace fpkhom {

namespace {

using namespace profiles;

double wrap01(double t) { return t - std::floor(t); }

}  // namespace

CoefficientField CoefficientField::make_builtin(const std::string& name) {
  CoefficientField f;
  f.name_ = name;
  if (name == "identity") {
    f.kind_ = Kind::identity;
    return f;
  }
  if (name == "setting-a-paper") {
    f.kind_ = Kind::paper_a;
    f.lines_ = {0.5};
    return f;
  }
  if (name == "setting-b-paper") {
    f.kind_ = Kind::paper_b;
    f.has_divA_ = false;
    f.lines_ = {0.5};
    return f;
  }
  const std::string prefix = "const-diag:";
  if (name.rfind(prefix, 0) == 0) {
    std::istringstream in(name.substr(prefix.size()));
    char comma = 0;
    if (!(in >> f.d1_ >> comma >> f.d2_) || comma != ',' ||
        (in >> std::ws, !in.eof()))
      throw std::invalid_argument("expected const-diag:a1,a2 with numeric entries: " + name);
    if (!(f.d1_ > 0.0) || !(f.d2_ > 0.0))
      throw std::invalid_argument("const-diag entries must be positive: " + name);
    f.kind_ = Kind::const_diag;
    return f;
  }
  throw std::invalid_argument("unknown problem name: " + name);
}

SymMat2 CoefficientField::A(double y1, double /*y2*/) const {
  double x = wrap01(y1);
  switch (kind_) {
    case Kind::identity:
      return {1.0, 0.0, 1.0};
    case Kind::const_diag:
      return {d1_, 0.0, d2_};
    case Kind::paper_a:
      return {a11_smooth(x), offdiag(x), a22(x)};
    case Kind::paper_b:
      return {a11_jump(x), offdiag(x), a22(x)};
  }
  return {};
}

Vec2 CoefficientField::b(double y1, double /*y2*/) const {
  double x = wrap01(y1);
  switch (kind_) {
    case Kind::paper_a: {
      double s = drift_smooth(x);
      return {s, s};
    }
    case Kind::paper_b: {
      double s = drift_jump(x);
      return {s, s};
    }
    default:
      return {0.0, 0.0};
  }
}

Vec2 CoefficientField::divA(double y1, double /*y2*/) const {
  if (!has_divA_)
    throw std::logic_error("divA not available for field " + name_);
  if (kind_ != Kind::paper_a) return {0.0, 0.0};
  double x = wrap01(y1);
  return {da11_smooth(x), d_offdiag(x)};
}

std::vector<double> CoefficientField::breakpoints1d() const {
  switch (kind_) {
    case Kind::paper_a:
      return {0.0, 0.5, 1.0};
    case Kind::paper_b:
      // quarter points included defensively for |sin|-type kinks
      return {0.0, 0.25, 0.5, 0.75, 1.0};
    default:
      return {0.0, 1.0};
  }
}

EllipticityReport check_ellipticity(const CoefficientField& field, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  EllipticityReport rep;
  rep.grid_n = grid_n;
  rep.lambda_min = std::numeric_limits<double>::infinity();
  rep.lambda_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    double x = (i + 0.5) / grid_n;
    for (int j = 0; j < grid_n; ++j) {
      double y = (j + 0.5) / grid_n;
      SymMat2 a = field.A(x, y);
      rep.lambda_min = std::min(rep.lambda_min, a.eig_min());
      rep.lambda_max = std::max(rep.lambda_max, a.eig_max());
    }
  }
  rep.elliptic = rep.lambda_min > 0.0;
  return rep;
}

CordesReport check_cordes(const CoefficientField& field, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  CordesReport rep;
  rep.grid_n = grid_n;
  double b_max2 = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    double x = (i + 0.5) / grid_n;
    for (int j = 0; j < grid_n; ++j) {
      double y = (j + 0.5) / grid_n;
      SymMat2 a = field.A(x, y);
      Vec2 bb = field.b(x, y);
      double tr = a.trace();
      if (!(tr > 0.0))
        throw std::invalid_argument("tr(A) not positive at sample point");
      double ratio = (a.frob2() + norm2(bb)) / (tr * tr);
      rep.ratio_max = std::max(rep.ratio_max, ratio);
      b_max2 = std::max(b_max2, norm2(bb));
    }
  }
  rep.delta_max = 1.0 / rep.ratio_max - 1.0;
  const double thresh = 2.0 / (2.0 + kPi * kPi);
  rep.admissible_b = rep.delta_max > thresh;
  bool b_zero = b_max2 == 0.0;
  rep.admissible_classical = b_zero && rep.delta_max > 0.0;
  rep.kappa = b_zero ? rep.delta_max
                     : (rep.delta_max - thresh) * (2.0 + kPi * kPi) / (kPi * kPi);
  return rep;
}

RenormalizedField::RenormalizedField(const CoefficientField& base)
    : base_(&base), lines_(base.discontinuity_lines()) {
  EllipticityReport ell = check_ellipticity(base, 256);
  double b_max2 = 0.0;
  for (int i = 0; i < ell.grid_n; ++i) {
    double x = (i + 0.5) / ell.grid_n;
    for (int j = 0; j < ell.grid_n; ++j)
      b_max2 = std::max(b_max2, norm2(base.b(x, (j + 0.5) / ell.grid_n)));
  }
  double lam = ell.lambda_min, Lam = ell.lambda_max;
  gamma_lower = 2.0 * lam / (2.0 * Lam * Lam + b_max2);
  gamma_upper = Lam / (lam * lam);
}

RenormalizedField::RenormalizedField(std::function<SymMat2(double, double)> Atilde,
                                     std::function<Vec2(double, double)> btilde,
                                     std::vector<double> lines)
    : At_(std::move(Atilde)), bt_(std::move(btilde)), lines_(std::move(lines)) {}

double RenormalizedField::gamma(double y1, double y2) const {
  if (!base_)
    throw std::logic_error("gamma undefined for an explicitly-specified renormalized field");
  SymMat2 a = base_->A(y1, y2);
  Vec2 bb = base_->b(y1, y2);
  double denom = a.frob2() + norm2(bb);
  if (denom == 0.0)
    throw std::runtime_error("renormalization undefined: |A|^2 + |b|^2 = 0");
  return a.trace() / denom;
}

SymMat2 RenormalizedField::Atilde(double y1, double y2) const {
  if (!base_) return At_(y1, y2);
  double g = gamma(y1, y2);
  SymMat2 a = base_->A(y1, y2);
  return {g * a.a11, g * a.a12, g * a.a22};
}

Vec2 RenormalizedField::btilde(double y1, double y2) const {
  if (!base_) return bt_(y1, y2);
  return gamma(y1, y2) * base_->b(y1, y2);
}

}  // namespace fpkhom
