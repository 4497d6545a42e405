#pragma once
/// Convergence-study driver: runs invariant-measure / corrector / effective-matrix
/// solves over a list of mesh resolutions, measures errors against the
/// semi-analytic reference solution, fits convergence rates, and emits
/// CSV tables and SVG log-log plots.

#include <limits>
#include <string>
#include <vector>

namespace fpkhom {

/// Configuration of a convergence study.  Mirrors the flat-key JSON document
/// accepted by `StudyConfig::from_json_text`.
struct StudyConfig {
  std::string problem = "setting-a-paper";  ///< builtin coefficient-field name
  char setting = 'a';                       ///< 'a' or 'b'
  std::vector<int> mesh_list = {8, 16, 32, 64, 128};  ///< strictly increasing
  bool parity_split = false;  ///< also run the companion family {N+1}
  std::vector<std::string> norms = {"L2"};  ///< error quantities, see below
  int quad_order = 5;         ///< base quadrature order for error integrals
  int cut_subdivision = 8;    ///< composite subdivision on cut elements
  std::string output_dir = ".";
  double solver_tol = 1e-10;

  /// Parse a JSON document with keys problem, setting, mesh_list,
  /// parity_split, norms, quad_order, cut_subdivision, output_dir,
  /// solver_tol (all optional except none; missing keys keep defaults).
  /// Throws std::invalid_argument on malformed input.
  static StudyConfig from_json_text(const std::string& text);
  static StudyConfig from_json_file(const std::string& path);

  /// Validate invariants: mesh_list strictly increasing with entries >= 2,
  /// setting in {a,b}, recognised norm names compatible with the setting,
  /// quadrature parameters constructible.  Throws std::invalid_argument.
  void validate() const;
};

/// One mesh resolution of a study.  `values` is parallel to config.norms;
/// entries are NaN when the row failed.
struct StudyRow {
  int n = 0;
  double h = 0.0;
  std::string parity;           ///< "even" or "odd" (parity of n)
  std::vector<double> values;
  bool failed = false;
  std::string failure_reason;
  /// Mass diagnostics, filled for setting-B rows only.
  double mass_rtilde = std::numeric_limits<double>::quiet_NaN();
  double mass_r = std::numeric_limits<double>::quiet_NaN();
};

/// Least-squares convergence rate for one (norm, parity) series.
struct RateFit {
  std::string norm;
  std::string parity;
  bool valid = false;
  double slope = 0.0;            ///< OLS slope of log(error) vs log(h)
  std::vector<double> pairwise;  ///< orders between consecutive resolutions
  std::string note;              ///< reason when the fit is omitted
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;
  std::vector<RateFit> fits;
};

/// Ordinary least-squares slope of y against x.  Throws std::invalid_argument
/// if fewer than two points or the abscissae are degenerate.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Fit rates for every (norm, parity) series of `rows`.  Series with fewer
/// than three usable points (positive, finite errors) are marked invalid with
/// an explanatory note; numerically-zero errors count as "exact" and are
/// excluded from the fit.
std::vector<RateFit> fit_rates(const StudyConfig& config,
                               const std::vector<StudyRow>& rows);

/// Run the full study: one row per mesh (plus the companion-parity family
/// when parity_split), solving the invariant measure, the correctors and the
/// effective matrix as required by the configured norms.  Rows run in
/// parallel, capped by the FPKHOM_THREADS environment variable; a solver
/// failure aborts only its row.  Throws std::invalid_argument on an invalid
/// configuration.
StudyResult run_convergence(const StudyConfig& config);

/// CSV serialisation with header `N,h,norm,value,parity`, one line per
/// (row, norm), values printed with 17 significant digits.
std::string csv_text(const StudyResult& result);

/// Plain SVG 1.1 log-log plot: one polyline per (norm, parity) series and a
/// legend listing fitted slopes.  Returns an empty string when no series has
/// plottable data.
std::string svg_text(const StudyResult& result);

struct EmitPaths {
  std::string csv;
  std::string svg;
  bool svg_written = false;
};

/// Write study.csv (always) and study.svg (when non-empty) into
/// config.output_dir, creating the directory if needed.  I/O failures throw
/// std::runtime_error.
EmitPaths emit(const StudyResult& result);

}  // namespace fpkhom
