// Command-line front end of the fpkhom shared library. Talks exclusively to
// the public C interface.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpkhom/fpkhom.h"

namespace {

int exit_code(int status) {
  switch (status) {
    case FPK_OK:
      return 0;
    case FPK_ERR_CONFIG:
      return 2;
    default:
      return 1;  // solver or internal failure
  }
}

int fail(int status) {
  std::fprintf(stderr, "error: %s\n", fpk_last_error());
  return exit_code(status);
}

struct FieldHandle {
  fpk_field* ptr = nullptr;
  explicit FieldHandle(const std::string& name) {
    ptr = fpk_field_create(name.c_str());
  }
  ~FieldHandle() { fpk_field_destroy(ptr); }
  FieldHandle(const FieldHandle&) = delete;
  FieldHandle& operator=(const FieldHandle&) = delete;
};

struct SolutionHandle {
  fpk_solution* ptr = nullptr;
  ~SolutionHandle() { fpk_solution_destroy(ptr); }
};

void print_stats(const fpk_solution_stats& st) {
  std::printf("method = %s\n", st.method);
  std::printf("relative_residual = %.6g\n", st.relative_residual);
  std::printf("iterations = %d\n", st.iterations);
  std::printf("wall_time = %.4g\n", st.wall_time);
  std::printf("mass = %.12g\n", st.mass);
  std::printf("min_density = %.12g\n", st.min_value);
  std::printf("negative_cells = %d\n", st.negative_cells);
}

int print_samples(const fpk_solution* sol, int components) {
  std::printf("samples (offset 3x3 grid):\n");
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      double x = (i + 0.5) / 3.0, y = (j + 0.5) / 3.0;
      double v[2] = {0.0, 0.0};
      int status = fpk_solution_eval(sol, x, y, v);
      if (status != FPK_OK) return status;
      if (components == 1)
        std::printf("  u(%.4f, %.4f) = %.12g\n", x, y, v[0]);
      else
        std::printf("  u(%.4f, %.4f) = (%.12g, %.12g)\n", x, y, v[0], v[1]);
    }
  }
  return FPK_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic Fokker-Planck invariant measures, correctors and "
               "effective diffusion matrices (P1 finite elements)"};
  app.require_subcommand(1);

  std::string problem, setting = "a", config_path, rhs_name = "cosine-x";
  int grid = 1000, mesh = 16, jcomp = 1;

  auto* cordes = app.add_subcommand(
      "check-cordes", "Sample ellipticity and the Cordes condition");
  cordes->add_option("problem", problem, "builtin coefficient field")
      ->required();
  cordes->add_option("--grid", grid, "sample grid resolution (default 1000)")
      ->check(CLI::PositiveNumber);

  auto add_solver_opts = [&](CLI::App* cmd, bool with_j, bool with_rhs) {
    cmd->add_option("problem", problem, "builtin coefficient field")
        ->required();
    cmd->add_option("--setting", setting, "solution regime: a or b")
        ->required()
        ->check(CLI::IsMember({"a", "b", "A", "B"}));
    cmd->add_option("--mesh", mesh, "mesh resolution N (N x N cells)")
        ->required()
        ->check(CLI::PositiveNumber);
    if (with_j)
      cmd->add_option("-j,--component", jcomp, "corrector index (1 or 2)")
          ->required()
          ->check(CLI::Range(1, 2));
    if (with_rhs)
      cmd->add_option("--rhs", rhs_name, "builtin load name (cosine-x)")
          ->required();
  };

  auto* invariant =
      app.add_subcommand("invariant", "Solve for the invariant measure");
  add_solver_opts(invariant, false, false);

  auto* corrector =
      app.add_subcommand("corrector", "Solve a cell corrector problem");
  add_solver_opts(corrector, true, false);

  auto* effective = app.add_subcommand(
      "effective-matrix", "Compute the effective diffusion matrix");
  add_solver_opts(effective, false, false);

  auto* nonhom = app.add_subcommand(
      "nonhomogeneous", "Solve the stationary equation with a built-in load");
  add_solver_opts(nonhom, false, true);

  auto* convergence = app.add_subcommand(
      "convergence", "Run a convergence study from a JSON config");
  convergence->add_option("--config", config_path, "path to JSON study config")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cordes->parsed()) {
    FieldHandle field(problem);
    if (field.ptr == nullptr) return fail(FPK_ERR_CONFIG);
    fpk_ellipticity_report ell;
    int status = fpk_check_ellipticity(field.ptr, grid, &ell);
    if (status != FPK_OK) return fail(status);
    fpk_cordes_report rep;
    status = fpk_check_cordes(field.ptr, grid, &rep);
    if (status != FPK_OK) return fail(status);
    std::printf("problem: %s\n", problem.c_str());
    std::printf("grid = %d\n", rep.grid_n);
    std::printf("lambda_min = %.12g\n", ell.lambda_min);
    std::printf("lambda_max = %.12g\n", ell.lambda_max);
    std::printf("ratio_max = %.12g\n", rep.ratio_max);
    std::printf("delta_max = %.12g\n", rep.delta_max);
    std::printf("kappa = %.12g\n", rep.kappa);
    std::printf("admissible_b = %s\n", rep.admissible_b ? "true" : "false");
    std::printf("admissible_classical = %s\n",
                rep.admissible_classical ? "true" : "false");
    return 0;
  }

  if (invariant->parsed() || corrector->parsed() || nonhom->parsed()) {
    FieldHandle field(problem);
    if (field.ptr == nullptr) return fail(FPK_ERR_CONFIG);
    SolutionHandle sol;
    int status = FPK_OK;
    if (invariant->parsed())
      status = fpk_solve_invariant(field.ptr, setting[0], mesh, &sol.ptr);
    else if (corrector->parsed())
      status =
          fpk_solve_corrector(field.ptr, setting[0], mesh, jcomp, &sol.ptr);
    else
      status = fpk_solve_nonhomogeneous(field.ptr, setting[0], mesh,
                                        rhs_name.c_str(), &sol.ptr);
    if (status != FPK_OK) return fail(status);
    fpk_solution_stats st;
    fpk_solution_stats_get(sol.ptr, &st);
    std::printf("problem: %s\n", problem.c_str());
    std::printf("setting: %c\n", setting[0]);
    std::printf("mesh = %d\n", st.mesh_n);
    if (corrector->parsed()) std::printf("j = %d\n", jcomp);
    if (nonhom->parsed()) std::printf("rhs: %s\n", rhs_name.c_str());
    print_stats(st);
    status = print_samples(sol.ptr, st.components);
    if (status != FPK_OK) return fail(status);
    return 0;
  }

  if (effective->parsed()) {
    FieldHandle field(problem);
    if (field.ptr == nullptr) return fail(FPK_ERR_CONFIG);
    double value[4], asym = 0.0, min_eig = 0.0;
    int status = fpk_effective_matrix(field.ptr, setting[0], mesh, value,
                                      &asym, &min_eig);
    if (status != FPK_OK) return fail(status);
    std::printf("problem: %s\n", problem.c_str());
    std::printf("setting: %c\n", setting[0]);
    std::printf("mesh = %d\n", mesh);
    std::printf("effective matrix:\n");
    std::printf("  [ %.15g  %.15g ]\n", value[0], value[1]);
    std::printf("  [ %.15g  %.15g ]\n", value[2], value[3]);
    std::printf("a11 = %.15g\n", value[0]);
    std::printf("a12 = %.15g\n", value[1]);
    std::printf("a21 = %.15g\n", value[2]);
    std::printf("a22 = %.15g\n", value[3]);
    std::printf("asymmetry = %.6g\n", asym);
    std::printf("min_eigenvalue = %.12g\n", min_eig);
    return 0;
  }

  if (convergence->parsed()) {
    std::vector<char> buf(1 << 20);
    int failed = 0;
    int status =
        fpk_run_convergence(config_path.c_str(), buf.data(), buf.size(),
                            &failed);
    if (status != FPK_OK) return fail(status);
    std::printf("%s", buf.data());
    if (failed > 0) {
      std::fprintf(stderr, "error: %d study row(s) failed\n", failed);
      return 1;
    }
    return 0;
  }

  return 2;
}
