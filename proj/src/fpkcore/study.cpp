#include "fpkcore/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "fpkcore/coefficients.hpp"
#include "fpkcore/correctors.hpp"
#include "fpkcore/effective.hpp"
#include "fpkcore/norms.hpp"
#include "fpkcore/oracle.hpp"
#include "fpkcore/setting_a.hpp"
#include "fpkcore/setting_b.hpp"

namespace fpkhom {

namespace {

constexpr double kExactThreshold = 1e-14;  ///< below this an error counts as "exact"

enum class Quantity {
  measure,      // Lp / W1p / H1semi error of the invariant measure
  chi1,         // H1-seminorm error of the first corrector (setting a)
  chi2,
  xi1,          // H1 error of the first gradient corrector (setting b)
  xi2,
  abar,         // max-entry error of the effective matrix
};

struct NormPlan {
  Quantity quantity;
  NormSpec spec;  // meaningful for `measure` (and chi*/xi*, fixed there)
};

NormPlan classify_norm(const std::string& name, char setting) {
  if (name == "chi1_H1semi" || name == "chi2_H1semi") {
    if (setting != 'a')
      throw std::invalid_argument("norm '" + name + "' requires setting a");
    return {name[3] == '1' ? Quantity::chi1 : Quantity::chi2,
            {NormType::H1semi, 2.0}};
  }
  if (name == "xi1_H1" || name == "xi2_H1") {
    if (setting != 'b')
      throw std::invalid_argument("norm '" + name + "' requires setting b");
    return {name[2] == '1' ? Quantity::xi1 : Quantity::xi2,
            {NormType::W1p, 2.0}};
  }
  if (name == "Abar") return {Quantity::abar, {NormType::Lp, 2.0}};
  NormSpec ns = parse_norm(name);  // throws for unknown identifiers
  if (setting == 'b' && ns.type != NormType::Lp)
    throw std::invalid_argument(
        "norm '" + name +
        "' needs derivatives; the setting-b measure is piecewise constant "
        "(only Lp norms apply)");
  return {Quantity::measure, ns};
}

double abar_error(const EffectiveMatrix& em, const SymMat2& exact) {
  double e = 0.0;
  e = std::max(e, std::fabs(em.value.m[0][0] - exact.a11));
  e = std::max(e, std::fabs(em.value.m[0][1] - exact.a12));
  e = std::max(e, std::fabs(em.value.m[1][0] - exact.a12));
  e = std::max(e, std::fabs(em.value.m[1][1] - exact.a22));
  return e;
}

/// Lp error between a pointwise-evaluable field and a reference, integrated
/// with the cut-aware quadrature policy.  Used for the normalised setting-B
/// measure, which is not a finite-element function.
template <typename Eval, typename Ref>
double lp_error_eval(const PeriodicMesh& mesh, const QuadPolicy& quad,
                     const Eval& f, const Ref& g, double p) {
  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    for (const QuadPoint& q : rule.points) {
      Vec2 pt = physical_point(el, q);
      double diff = std::fabs(f(pt.x, pt.y) - g(pt.x, pt.y));
      acc += q.w * mesh.element_area() * std::pow(diff, p);
    }
  }
  return std::pow(acc, 1.0 / p);
}

template <typename Eval>
double integral_eval(const PeriodicMesh& mesh, const QuadPolicy& quad,
                     const Eval& f) {
  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Element& el = mesh.element(e);
    const TriangleRule& rule = quad.select(el);
    for (const QuadPoint& q : rule.points) {
      Vec2 pt = physical_point(el, q);
      acc += q.w * mesh.element_area() * f(pt.x, pt.y);
    }
  }
  return acc;
}

StudyRow compute_row(const StudyConfig& cfg, const CoefficientField& field,
                     const ReferenceSolution& ref, const SymMat2* abar_ref,
                     const std::vector<NormPlan>& plans, int n) {
  StudyRow row;
  row.n = n;
  row.h = 1.0 / n;
  row.parity = (n % 2 == 0) ? "even" : "odd";
  row.values.assign(cfg.norms.size(), std::numeric_limits<double>::quiet_NaN());
  bool need_cor = false, need_abar = false;
  for (const NormPlan& p : plans) {
    if (p.quantity == Quantity::chi1 || p.quantity == Quantity::chi2 ||
        p.quantity == Quantity::xi1 || p.quantity == Quantity::xi2)
      need_cor = true;
    if (p.quantity == Quantity::abar) need_abar = true;
  }
  try {
    PeriodicMesh mesh(n);
    QuadPolicy quad(field.discontinuity_lines(), cfg.quad_order,
                    cfg.cut_subdivision);
    if (cfg.setting == 'a') {
      InvariantMeasureA inv = solve_invariant_a(field, mesh, cfg.solver_tol);
      std::optional<CorrectorA> cor;
      if (need_cor || need_abar)
        cor = solve_corrector_a(field, inv.r_h, cfg.solver_tol);
      EffectiveMatrix em;
      if (need_abar) em = effective_matrix_a(field, inv, *cor);
      ScalarReference r_ref{
          [&](double x, double) { return ref.r(x); },
          [&](double x, double) { return Vec2{ref.r_prime(x), 0.0}; }};
      ScalarReference chi_ref{
          [&](double x, double) { return ref.chi(x); },
          [&](double x, double) { return Vec2{ref.chi_prime(x), 0.0}; }};
      for (std::size_t i = 0; i < plans.size(); ++i) {
        switch (plans[i].quantity) {
          case Quantity::measure:
            row.values[i] = error_norm(inv.r_h, r_ref, plans[i].spec, quad);
            break;
          case Quantity::chi1:
          case Quantity::chi2: {
            int j = plans[i].quantity == Quantity::chi1 ? 0 : 1;
            row.values[i] =
                error_norm(cor->chi[j], chi_ref, plans[i].spec, quad);
            break;
          }
          case Quantity::abar:
            row.values[i] = abar_error(em, *abar_ref);
            break;
          default:
            break;  // excluded by validate()
        }
      }
    } else {
      InvariantMeasureB inv = solve_invariant_b(field, mesh, cfg.solver_tol);
      row.mass_rtilde = inv.rtilde_h.integral();
      row.mass_r = integral_eval(mesh, quad, [&](double x, double y) {
        return inv.r_h_eval(x, y);
      });
      std::optional<CorrectorB> cor;
      if (need_cor || need_abar)
        cor = solve_corrector_b(field, mesh, cfg.solver_tol);
      EffectiveMatrix em;
      if (need_abar) em = effective_matrix_b(field, inv, *cor);
      // Builtin problems have equal drift components, so both gradient
      // correctors share the one-dimensional reference chi'.
      VectorReference xi_ref{
          [&](double x, double) { return Vec2{ref.chi_prime(x), 0.0}; },
          [&](double x, double) {
            return Mat2{{{ref.chi_second(x), 0.0}, {0.0, 0.0}}};
          }};
      for (std::size_t i = 0; i < plans.size(); ++i) {
        switch (plans[i].quantity) {
          case Quantity::measure:
            row.values[i] = lp_error_eval(
                mesh, quad,
                [&](double x, double y) { return inv.r_h_eval(x, y); },
                [&](double x, double) { return ref.r(x); }, plans[i].spec.p);
            break;
          case Quantity::xi1:
          case Quantity::xi2: {
            int j = plans[i].quantity == Quantity::xi1 ? 0 : 1;
            row.values[i] =
                error_norm(cor->xi[j], xi_ref, plans[i].spec, quad);
            break;
          }
          case Quantity::abar:
            row.values[i] = abar_error(em, *abar_ref);
            break;
          default:
            break;
        }
      }
    }
  } catch (const std::exception& e) {
    row.failed = true;
    row.failure_reason = e.what();
    row.values.assign(cfg.norms.size(),
                      std::numeric_limits<double>::quiet_NaN());
  }
  return row;
}

unsigned thread_budget(unsigned jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 4;
  if (const char* env = std::getenv("FPKHOM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return std::max(1u, std::min(hw, jobs));
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

StudyConfig StudyConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known = {
      "problem",    "setting",         "mesh_list",  "parity_split", "norms",
      "quad_order", "cut_subdivision", "output_dir", "solver_tol"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("unknown config key: " + it.key());
  StudyConfig cfg;
  try {
    cfg.problem = j.value("problem", cfg.problem);
    if (j.contains("setting")) {
      std::string s = j.at("setting").get<std::string>();
      if (s == "a" || s == "A")
        cfg.setting = 'a';
      else if (s == "b" || s == "B")
        cfg.setting = 'b';
      else
        throw std::invalid_argument("setting must be \"a\" or \"b\"");
    }
    if (j.contains("mesh_list"))
      cfg.mesh_list = j.at("mesh_list").get<std::vector<int>>();
    cfg.parity_split = j.value("parity_split", cfg.parity_split);
    if (j.contains("norms"))
      cfg.norms = j.at("norms").get<std::vector<std::string>>();
    cfg.quad_order = j.value("quad_order", cfg.quad_order);
    cfg.cut_subdivision = j.value("cut_subdivision", cfg.cut_subdivision);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.solver_tol = j.value("solver_tol", cfg.solver_tol);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config type error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

StudyConfig StudyConfig::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::invalid_argument("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

void StudyConfig::validate() const {
  if (setting != 'a' && setting != 'b')
    throw std::invalid_argument("setting must be 'a' or 'b'");
  CoefficientField field = CoefficientField::make_builtin(problem);  // throws
  if (setting == 'a' && !field.supports_setting_a())
    throw std::invalid_argument(
        "problem '" + problem +
        "' has no divergence data and cannot run in setting a");
  for (std::size_t i = 0; i < mesh_list.size(); ++i) {
    if (mesh_list[i] < 2)
      throw std::invalid_argument("mesh resolutions must be >= 2");
    if (i > 0 && mesh_list[i] <= mesh_list[i - 1])
      throw std::invalid_argument("mesh_list must be strictly increasing");
  }
  for (const std::string& name : norms) classify_norm(name, setting);  // throws
  triangle_rule(quad_order, 1);  // throws for unsupported orders
  if (cut_subdivision < 1)
    throw std::invalid_argument("cut_subdivision must be >= 1");
  if (!(solver_tol > 0))
    throw std::invalid_argument("solver_tol must be positive");
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("ols_slope needs >= 2 points");
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= x.size();
  ym /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("ols_slope: degenerate abscissae");
  return sxy / sxx;
}

std::vector<RateFit> fit_rates(const StudyConfig& config,
                               const std::vector<StudyRow>& rows) {
  // Stable list of parity labels in row order.
  std::vector<std::string> parities;
  for (const StudyRow& r : rows)
    if (std::find(parities.begin(), parities.end(), r.parity) == parities.end())
      parities.push_back(r.parity);
  std::vector<RateFit> fits;
  for (std::size_t ni = 0; ni < config.norms.size(); ++ni) {
    for (const std::string& par : parities) {
      RateFit fit;
      fit.norm = config.norms[ni];
      fit.parity = par;
      std::vector<double> hs, es;
      int exact_count = 0, failed_count = 0;
      for (const StudyRow& r : rows) {
        if (r.parity != par) continue;
        if (r.failed) {
          ++failed_count;
          continue;
        }
        double v = r.values[ni];
        if (!std::isfinite(v)) continue;
        if (v <= kExactThreshold) {
          ++exact_count;  // flagged "exact": excluded from the log fit
          continue;
        }
        hs.push_back(r.h);
        es.push_back(v);
      }
      for (std::size_t i = 0; i + 1 < hs.size(); ++i)
        fit.pairwise.push_back(std::log(es[i] / es[i + 1]) /
                               std::log(hs[i] / hs[i + 1]));
      if (hs.size() >= 3) {
        std::vector<double> lx(hs.size()), ly(hs.size());
        for (std::size_t i = 0; i < hs.size(); ++i) {
          lx[i] = std::log(hs[i]);
          ly[i] = std::log(es[i]);
        }
        fit.slope = ols_slope(lx, ly);
        fit.valid = true;
        if (exact_count > 0)
          fit.note = "some rows exact (zero error), excluded from fit";
      } else if (exact_count > 0) {
        fit.note = "omitted: errors numerically zero (exact reproduction)";
      } else if (failed_count > 0) {
        fit.note = "omitted: solver failures left fewer than 3 rows";
      } else {
        fit.note = "omitted: fewer than 3 usable rows";
      }
      fits.push_back(std::move(fit));
    }
  }
  return fits;
}

StudyResult run_convergence(const StudyConfig& config) {
  config.validate();
  CoefficientField field = CoefficientField::make_builtin(config.problem);
  ReferenceSolution ref = ReferenceSolution::build(field);
  SymMat2 abar_ref{};
  bool have_abar = false;
  std::vector<NormPlan> plans;
  for (const std::string& name : config.norms) {
    plans.push_back(classify_norm(name, config.setting));
    if (plans.back().quantity == Quantity::abar) have_abar = true;
  }
  if (have_abar) abar_ref = reference_effective_matrix(ref, field);

  std::vector<int> ns = config.mesh_list;
  if (config.parity_split)
    for (int n : config.mesh_list) ns.push_back(n + 1);

  StudyResult result;
  result.config = config;
  result.rows.resize(ns.size());
  unsigned threads = thread_budget(static_cast<unsigned>(ns.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < ns.size(); ++i)
      result.rows[i] = compute_row(config, field, ref,
                                   have_abar ? &abar_ref : nullptr, plans,
                                   ns[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= ns.size()) return;
        result.rows[i] = compute_row(config, field, ref,
                                     have_abar ? &abar_ref : nullptr, plans,
                                     ns[i]);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  result.fits = fit_rates(config, result.rows);
  return result;
}

std::string csv_text(const StudyResult& result) {
  std::string out = "N,h,norm,value,parity\n";
  for (const StudyRow& row : result.rows) {
    for (std::size_t i = 0; i < result.config.norms.size(); ++i) {
      out += std::to_string(row.n);
      out += ',';
      out += format_value(row.h);
      out += ',';
      out += result.config.norms[i];
      out += ',';
      out += format_value(row.values[i]);
      out += ',';
      out += row.parity;
      out += '\n';
    }
  }
  return out;
}

namespace {

struct Series {
  std::string norm, parity;
  std::vector<std::pair<double, double>> pts;  // (h, error)
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string svg_text(const StudyResult& result) {
  std::vector<std::string> parities;
  for (const StudyRow& r : result.rows)
    if (std::find(parities.begin(), parities.end(), r.parity) == parities.end())
      parities.push_back(r.parity);
  std::vector<Series> series;
  for (std::size_t ni = 0; ni < result.config.norms.size(); ++ni) {
    for (const std::string& par : parities) {
      Series s;
      s.norm = result.config.norms[ni];
      s.parity = par;
      for (const StudyRow& r : result.rows) {
        if (r.parity != par || r.failed) continue;
        double v = r.values[ni];
        if (std::isfinite(v) && v > 0.0) s.pts.emplace_back(r.h, v);
      }
      if (!s.pts.empty()) series.push_back(std::move(s));
    }
  }
  if (series.empty()) return "";

  double lxmin = 1e300, lxmax = -1e300, lymin = 1e300, lymax = -1e300;
  for (const Series& s : series)
    for (auto [h, v] : s.pts) {
      lxmin = std::min(lxmin, std::log10(h));
      lxmax = std::max(lxmax, std::log10(h));
      lymin = std::min(lymin, std::log10(v));
      lymax = std::max(lymax, std::log10(v));
    }
  if (lxmax - lxmin < 1e-12) {
    lxmin -= 0.5;
    lxmax += 0.5;
  }
  if (lymax - lymin < 1e-12) {
    lymin -= 0.5;
    lymax += 0.5;
  }
  double padx = 0.05 * (lxmax - lxmin), pady = 0.05 * (lymax - lymin);
  lxmin -= padx;
  lxmax += padx;
  lymin -= pady;
  lymax += pady;

  const double x0 = 80, y0 = 40, x1 = 780, y1 = 480;  // plot rectangle
  auto px = [&](double lx) {
    return x0 + (lx - lxmin) / (lxmax - lxmin) * (x1 - x0);
  };
  auto py = [&](double ly) {
    return y1 - (ly - lymin) / (lymax - lymin) * (y1 - y0);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"820\" height=\"560\" viewBox=\"0 0 820 560\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"820\" height=\"560\" fill=\"white\"/>\n";
  std::string title = result.config.problem + " (setting " +
                      (result.config.setting == 'a' ? "A" : "B") +
                      ") convergence";
  svg += "<text x=\"410\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"15\">" + title + "</text>\n";
  svg += "<rect x=\"" + fmt("%.2f", x0) + "\" y=\"" + fmt("%.2f", y0) +
         "\" width=\"" + fmt("%.2f", x1 - x0) + "\" height=\"" +
         fmt("%.2f", y1 - y0) + "\" fill=\"none\" stroke=\"black\"/>\n";

  // Four evenly spaced ticks per axis, labelled with the decimal value.
  for (int t = 0; t <= 3; ++t) {
    double lx = lxmin + t * (lxmax - lxmin) / 3.0;
    double X = px(lx);
    svg += "<line x1=\"" + fmt("%.2f", X) + "\" y1=\"" + fmt("%.2f", y1) +
           "\" x2=\"" + fmt("%.2f", X) + "\" y2=\"" + fmt("%.2f", y1 + 6) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", X) + "\" y=\"" + fmt("%.2f", y1 + 22) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"11\">" + fmt("%.3g", std::pow(10.0, lx)) + "</text>\n";
    double ly = lymin + t * (lymax - lymin) / 3.0;
    double Y = py(ly);
    svg += "<line x1=\"" + fmt("%.2f", x0 - 6) + "\" y1=\"" + fmt("%.2f", Y) +
           "\" x2=\"" + fmt("%.2f", x0) + "\" y2=\"" + fmt("%.2f", Y) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", x0 - 10) + "\" y=\"" + fmt("%.2f", Y + 4) +
           "\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"11\">" + fmt("%.2g", std::pow(10.0, ly)) + "</text>\n";
  }
  svg += "<text x=\"430\" y=\"520\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"13\">h</text>\n";
  svg += "<text x=\"24\" y=\"260\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"13\" "
         "transform=\"rotate(-90 24 260)\">error</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % 8];
    std::string pts;
    for (auto [h, v] : s.pts) {
      if (!pts.empty()) pts += ' ';
      pts += fmt("%.2f", px(std::log10(h))) + "," +
             fmt("%.2f", py(std::log10(v)));
    }
    svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    for (auto [h, v] : s.pts)
      svg += "<circle cx=\"" + fmt("%.2f", px(std::log10(h))) + "\" cy=\"" +
             fmt("%.2f", py(std::log10(v))) + "\" r=\"3\" fill=\"" + color +
             "\"/>\n";
  }

  // Legend with fitted slopes.
  double ly0 = y0 + 12;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % 8];
    std::string slope = "slope n/a";
    for (const RateFit& f : result.fits)
      if (f.norm == s.norm && f.parity == s.parity && f.valid)
        slope = "slope " + fmt("%.3f", f.slope);
    double Y = ly0 + 16.0 * si;
    svg += "<line x1=\"560\" y1=\"" + fmt("%.2f", Y - 4) +
           "\" x2=\"590\" y2=\"" + fmt("%.2f", Y - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"596\" y=\"" + fmt("%.2f", Y) +
           "\" font-family=\"monospace\" font-size=\"11\">" + s.norm + " [" +
           s.parity + "]: " + slope + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

EmitPaths emit(const StudyResult& result) {
  namespace fs = std::filesystem;
  fs::path dir = result.config.output_dir.empty()
                     ? fs::path(".")
                     : fs::path(result.config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw std::runtime_error("cannot create output directory: " + dir.string());
  EmitPaths paths;
  paths.csv = (dir / "study.csv").string();
  {
    std::ofstream out(paths.csv, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + paths.csv);
    out << csv_text(result);
    if (!out.good()) throw std::runtime_error("write failed: " + paths.csv);
  }
  std::string svg = svg_text(result);
  paths.svg = (dir / "study.svg").string();
  if (!svg.empty()) {
    std::ofstream out(paths.svg, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + paths.svg);
    out << svg;
    if (!out.good()) throw std::runtime_error("write failed: " + paths.svg);
    paths.svg_written = true;
  }
  return paths;
}

}  // namespace fpkhom
