#include "fpkhom/fpkhom.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "fpkcore/coefficients.hpp"
#include "fpkcore/correctors.hpp"
#include "fpkcore/effective.hpp"
#include "fpkcore/linalg.hpp"
#include "fpkcore/mesh.hpp"
#include "fpkcore/oracle.hpp"
#include "fpkcore/profiles.hpp"
#include "fpkcore/setting_a.hpp"
#include "fpkcore/setting_b.hpp"
#include "fpkcore/study.hpp"

namespace {

thread_local std::string g_last_error = "no error";

constexpr double kSolverTol = 1e-10;

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const fpkhom::SolveError& e) {
    g_last_error = e.what();
    return FPK_ERR_SOLVE;
  } catch (const fpkhom::Quad1DError& e) {
    g_last_error = e.what();
    return FPK_ERR_SOLVE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return FPK_ERR_CONFIG;
  } catch (const std::logic_error& e) {
    g_last_error = e.what();
    return FPK_ERR_INTERNAL;
  } catch (const std::runtime_error& e) {
    g_last_error = e.what();
    return FPK_ERR_SOLVE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FPK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FPK_ERR_INTERNAL;
  }
}

int config_error(const char* message) {
  g_last_error = message;
  return FPK_ERR_CONFIG;
}

void fill_report(fpk_solution_stats& stats, const fpkhom::SolveReport& report) {
  stats.relative_residual = report.relative_residual;
  stats.wall_time = report.wall_time;
  stats.iterations = report.iterations;
  std::snprintf(stats.method, sizeof stats.method, "%s",
                report.method.c_str());
}

char normalize_setting(char setting) {
  if (setting == 'A') return 'a';
  if (setting == 'B') return 'b';
  return setting;
}

}  // namespace

struct fpk_field {
  fpkhom::CoefficientField field;
};

struct fpk_solution {
  enum Kind { kInvariantA, kInvariantB, kScalar, kVector, kCell } kind;
  std::unique_ptr<fpkhom::PeriodicMesh> mesh;
  std::optional<fpkhom::InvariantMeasureA> inv_a;
  std::optional<fpkhom::InvariantMeasureB> inv_b;
  std::optional<fpkhom::FeFunction> fe;    // scalar or 2-component P1 data
  std::optional<fpkhom::CellField> cell;   // piecewise-constant data
  fpk_solution_stats stats{};
};

extern "C" {

const char* fpk_version(void) { return "0.1.0"; }

const char* fpk_last_error(void) { return g_last_error.c_str(); }

fpk_field* fpk_field_create(const char* name) {
  if (name == nullptr) {
    g_last_error = "field name is NULL";
    return nullptr;
  }
  try {
    auto* handle = new fpk_field{fpkhom::CoefficientField::make_builtin(name)};
    return handle;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void fpk_field_destroy(fpk_field* field) { delete field; }

int fpk_check_ellipticity(const fpk_field* field, int grid_n,
                          fpk_ellipticity_report* out) {
  if (field == nullptr || out == nullptr)
    return config_error("NULL argument");
  return guarded([&]() {
    fpkhom::EllipticityReport rep =
        fpkhom::check_ellipticity(field->field, grid_n);
    out->lambda_min = rep.lambda_min;
    out->lambda_max = rep.lambda_max;
    out->grid_n = rep.grid_n;
    out->elliptic = rep.elliptic ? 1 : 0;
    return FPK_OK;
  });
}

int fpk_check_cordes(const fpk_field* field, int grid_n,
                     fpk_cordes_report* out) {
  if (field == nullptr || out == nullptr)
    return config_error("NULL argument");
  return guarded([&]() {
    fpkhom::CordesReport rep = fpkhom::check_cordes(field->field, grid_n);
    out->ratio_max = rep.ratio_max;
    out->delta_max = rep.delta_max;
    out->kappa = rep.kappa;
    out->admissible_b = rep.admissible_b ? 1 : 0;
    out->admissible_classical = rep.admissible_classical ? 1 : 0;
    out->grid_n = rep.grid_n;
    return FPK_OK;
  });
}

int fpk_solve_invariant(const fpk_field* field, char setting, int mesh_n,
                        fpk_solution** out) {
  if (field == nullptr || out == nullptr)
    return config_error("NULL argument");
  setting = normalize_setting(setting);
  if (setting != 'a' && setting != 'b')
    return config_error("setting must be 'a' or 'b'");
  return guarded([&]() {
    auto sol = std::make_unique<fpk_solution>();
    sol->mesh = std::make_unique<fpkhom::PeriodicMesh>(mesh_n);
    if (setting == 'a') {
      sol->kind = fpk_solution::kInvariantA;
      sol->inv_a.emplace(
          fpkhom::solve_invariant_a(field->field, *sol->mesh, kSolverTol));
      const auto& inv = *sol->inv_a;
      sol->stats.mass = inv.r_h.integral();
      sol->stats.min_value = inv.min_vertex_value;
      sol->stats.negative_cells =
          static_cast<int>((inv.r_h.coef.array() < 0.0).count());
      fill_report(sol->stats, inv.report);
    } else {
      sol->kind = fpk_solution::kInvariantB;
      sol->inv_b.emplace(
          fpkhom::solve_invariant_b(field->field, *sol->mesh, kSolverTol));
      const auto& inv = *sol->inv_b;
      sol->stats.mass = inv.rtilde_h.integral();
      sol->stats.min_value = inv.min_rtilde;
      sol->stats.negative_cells = inv.negative_cells;
      fill_report(sol->stats, inv.report);
    }
    sol->stats.components = 1;
    sol->stats.mesh_n = mesh_n;
    *out = sol.release();
    return FPK_OK;
  });
}

int fpk_solve_corrector(const fpk_field* field, char setting, int mesh_n,
                        int j, fpk_solution** out) {
  if (field == nullptr || out == nullptr)
    return config_error("NULL argument");
  setting = normalize_setting(setting);
  if (setting != 'a' && setting != 'b')
    return config_error("setting must be 'a' or 'b'");
  if (j != 1 && j != 2)
    return config_error("corrector index j must be 1 or 2");
  return guarded([&]() {
    auto sol = std::make_unique<fpk_solution>();
    sol->mesh = std::make_unique<fpkhom::PeriodicMesh>(mesh_n);
    if (setting == 'a') {
      fpkhom::InvariantMeasureA inv =
          fpkhom::solve_invariant_a(field->field, *sol->mesh, kSolverTol);
      fpkhom::CorrectorA cor =
          fpkhom::solve_corrector_a(field->field, inv.r_h, kSolverTol);
      sol->kind = fpk_solution::kScalar;
      sol->fe.emplace(std::move(cor.chi[j - 1]));
      sol->stats.components = 1;
      fill_report(sol->stats, cor.report[j - 1]);
    } else {
      fpkhom::CorrectorB cor =
          fpkhom::solve_corrector_b(field->field, *sol->mesh, kSolverTol);
      sol->kind = fpk_solution::kVector;
      sol->fe.emplace(std::move(cor.xi[j - 1]));
      sol->stats.components = 2;
      fill_report(sol->stats, cor.report[j - 1]);
    }
    sol->stats.mass = sol->fe->integral(0);
    sol->stats.min_value = sol->fe->coef.minCoeff();
    sol->stats.negative_cells = 0;
    sol->stats.mesh_n = mesh_n;
    *out = sol.release();
    return FPK_OK;
  });
}

int fpk_solve_nonhomogeneous(const fpk_field* field, char setting, int mesh_n,
                             const char* rhs_name, fpk_solution** out) {
  if (field == nullptr || out == nullptr || rhs_name == nullptr)
    return config_error("NULL argument");
  setting = normalize_setting(setting);
  if (setting != 'a' && setting != 'b')
    return config_error("setting must be 'a' or 'b'");
  std::string rhs = rhs_name;
  if (rhs != "cosine-x")
    return config_error("unknown rhs name (builtin loads: cosine-x)");
  auto load = [](double x, double) {
    const double two_pi = 2.0 * fpkhom::profiles::kPi;
    return fpkhom::Vec2{-std::cos(two_pi * x) / two_pi, 0.0};
  };
  return guarded([&]() {
    auto sol = std::make_unique<fpk_solution>();
    sol->mesh = std::make_unique<fpkhom::PeriodicMesh>(mesh_n);
    if (setting == 'a') {
      fpkhom::SolveReport report;
      fpkhom::FeFunction u =
          fpkhom::solve_nonhomogeneous_a(field->field, load, *sol->mesh,
                                         kSolverTol, &report);
      sol->kind = fpk_solution::kScalar;
      sol->stats.mass = u.integral();
      sol->stats.min_value = u.coef.minCoeff();
      sol->fe.emplace(std::move(u));
      sol->stats.components = 1;
      fill_report(sol->stats, report);
    } else {
      fpkhom::NonhomogeneousB nh =
          fpkhom::solve_nonhomogeneous_b(field->field, load, *sol->mesh,
                                         kSolverTol);
      sol->kind = fpk_solution::kCell;
      sol->stats.mass = nh.u_h.integral();
      sol->stats.min_value = nh.u_h.min_value();
      sol->cell.emplace(std::move(nh.u_h));
      sol->stats.components = 1;
      fill_report(sol->stats, nh.report);
    }
    sol->stats.negative_cells = 0;
    sol->stats.mesh_n = mesh_n;
    *out = sol.release();
    return FPK_OK;
  });
}

int fpk_effective_matrix(const fpk_field* field, char setting, int mesh_n,
                         double value[4], double* asymmetry,
                         double* min_eigenvalue) {
  if (field == nullptr || value == nullptr)
    return config_error("NULL argument");
  setting = normalize_setting(setting);
  if (setting != 'a' && setting != 'b')
    return config_error("setting must be 'a' or 'b'");
  return guarded([&]() {
    fpkhom::PeriodicMesh mesh(mesh_n);
    fpkhom::EffectiveMatrix em;
    if (setting == 'a') {
      fpkhom::InvariantMeasureA inv =
          fpkhom::solve_invariant_a(field->field, mesh, kSolverTol);
      fpkhom::CorrectorA cor =
          fpkhom::solve_corrector_a(field->field, inv.r_h, kSolverTol);
      em = fpkhom::effective_matrix_a(field->field, inv, cor);
    } else {
      fpkhom::InvariantMeasureB inv =
          fpkhom::solve_invariant_b(field->field, mesh, kSolverTol);
      fpkhom::CorrectorB cor =
          fpkhom::solve_corrector_b(field->field, mesh, kSolverTol);
      em = fpkhom::effective_matrix_b(field->field, inv, cor);
    }
    value[0] = em.value.m[0][0];
    value[1] = em.value.m[0][1];
    value[2] = em.value.m[1][0];
    value[3] = em.value.m[1][1];
    if (asymmetry != nullptr) *asymmetry = em.asymmetry;
    if (min_eigenvalue != nullptr) *min_eigenvalue = em.min_eigenvalue;
    return FPK_OK;
  });
}

int fpk_solution_eval(const fpk_solution* sol, double x, double y,
                      double* out) {
  if (sol == nullptr || out == nullptr)
    return config_error("NULL argument");
  return guarded([&]() {
    switch (sol->kind) {
      case fpk_solution::kInvariantA:
        out[0] = sol->inv_a->r_h.eval(x, y);
        break;
      case fpk_solution::kInvariantB:
        out[0] = sol->inv_b->r_h_eval(x, y);
        break;
      case fpk_solution::kScalar:
        out[0] = sol->fe->eval(x, y, 0);
        break;
      case fpk_solution::kVector:
        out[0] = sol->fe->eval(x, y, 0);
        out[1] = sol->fe->eval(x, y, 1);
        break;
      case fpk_solution::kCell:
        out[0] = sol->cell->eval(x, y);
        break;
    }
    return FPK_OK;
  });
}

int fpk_solution_stats_get(const fpk_solution* sol, fpk_solution_stats* out) {
  if (sol == nullptr || out == nullptr)
    return config_error("NULL argument");
  *out = sol->stats;
  return FPK_OK;
}

void fpk_solution_destroy(fpk_solution* sol) { delete sol; }

int fpk_run_convergence(const char* config_path, char* summary_buf,
                        size_t buflen, int* failed_rows) {
  if (config_path == nullptr) return config_error("NULL config path");
  return guarded([&]() {
    fpkhom::StudyConfig cfg = fpkhom::StudyConfig::from_json_file(config_path);
    fpkhom::StudyResult res = fpkhom::run_convergence(cfg);
    fpkhom::EmitPaths paths = fpkhom::emit(res);
    int failed = 0;
    for (const fpkhom::StudyRow& row : res.rows)
      if (row.failed) ++failed;
    if (failed_rows != nullptr) *failed_rows = failed;
    std::string summary;
    summary += "problem: " + cfg.problem + "\n";
    summary += std::string("setting: ") + cfg.setting + "\n";
    summary += "rows: " + std::to_string(res.rows.size()) +
               " (failed: " + std::to_string(failed) + ")\n";
    summary += "csv: " + paths.csv + "\n";
    summary +=
        "svg: " + (paths.svg_written ? paths.svg : std::string("(none)")) +
        "\n";
    for (const fpkhom::RateFit& fit : res.fits) {
      char line[256];
      if (fit.valid) {
        std::string pw;
        for (double p : fit.pairwise) {
          char b[32];
          std::snprintf(b, sizeof b, "%s%.3f", pw.empty() ? "" : " ", p);
          pw += b;
        }
        std::snprintf(line, sizeof line, "rate %s [%s] = %.4f (pairwise: %s)\n",
                      fit.norm.c_str(), fit.parity.c_str(), fit.slope,
                      pw.c_str());
      } else {
        std::snprintf(line, sizeof line, "rate %s [%s]: %s\n",
                      fit.norm.c_str(), fit.parity.c_str(), fit.note.c_str());
      }
      summary += line;
    }
    for (const fpkhom::StudyRow& row : res.rows)
      if (row.failed)
        summary += "row N=" + std::to_string(row.n) +
                   " failed: " + row.failure_reason + "\n";
    if (summary_buf != nullptr && buflen > 0) {
      std::snprintf(summary_buf, buflen, "%s", summary.c_str());
    }
    return FPK_OK;
  });
}

}  // extern "C"
