/*
 * fpkhom — periodic Fokker–Planck–Kolmogorov invariant measures, correctors
 * and effective diffusion matrices on the unit cell, by P1 finite elements.
 *
 * C interface of the shared library.  All functions are thread-safe as long
 * as each handle is used from one thread at a time.  Functions returning int
 * use the FPK_* status codes; on failure fpk_last_error() describes the
 * problem (thread-local message, valid until the next failing call on the
 * same thread).
 */
#ifndef FPKHOM_H
#define FPKHOM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define FPK_OK 0           /* success */
#define FPK_ERR_SOLVE 1    /* numerical failure (solver, quadrature, ...) */
#define FPK_ERR_CONFIG 2   /* invalid argument or configuration */
#define FPK_ERR_INTERNAL 3 /* unexpected internal error */

/* Opaque coefficient field (diffusion matrix A, drift b, metadata). */
typedef struct fpk_field fpk_field;
/* Opaque discrete solution (invariant measure, corrector, ...). */
typedef struct fpk_solution fpk_solution;

typedef struct fpk_ellipticity_report {
  double lambda_min; /* smallest eigenvalue of A over the sample grid */
  double lambda_max; /* largest eigenvalue of A over the sample grid */
  int grid_n;        /* the grid sampled midpoints (i+1/2)/grid_n */
  int elliptic;      /* 1 when lambda_min > 0 */
} fpk_ellipticity_report;

typedef struct fpk_cordes_report {
  double ratio_max;        /* max of (|A|^2+|b|^2)/tr(A)^2 over the grid */
  double delta_max;        /* largest admissible Cordes parameter */
  double kappa;            /* contraction constant of the renormalized form */
  int admissible_b;        /* Cordes condition with drift holds */
  int admissible_classical;/* drift-free Cordes condition holds (b == 0) */
  int grid_n;
} fpk_cordes_report;

typedef struct fpk_solution_stats {
  double mass;              /* integral of the principal density (see solver) */
  double min_value;         /* minimum of the discrete density */
  int negative_cells;       /* number of negative density entries */
  double relative_residual; /* achieved linear-solver residual */
  double wall_time;         /* linear-solve wall time, seconds */
  int iterations;           /* 0 for the direct solver */
  char method[32];          /* "direct_lu" or "iterative" */
  int components;           /* doubles written by fpk_solution_eval */
  int mesh_n;               /* mesh resolution */
} fpk_solution_stats;

/* Library version string, e.g. "0.1.0". */
const char* fpk_version(void);

/* Thread-local description of the most recent failure. Never NULL. */
const char* fpk_last_error(void);

/*
 * Create a coefficient field from a builtin name:
 *   "identity"          A = I, b = 0
 *   "const-diag:a1,a2"  A = diag(a1, a2), b = 0
 *   "setting-a-paper"   W^{1,p} coefficients with discontinuous drift
 *   "setting-b-paper"   L^inf coefficients satisfying the Cordes condition
 * Returns NULL on unknown/malformed names (see fpk_last_error()).
 */
fpk_field* fpk_field_create(const char* name);
void fpk_field_destroy(fpk_field* field);

/* Sample A on an offset grid and report the eigenvalue range. */
int fpk_check_ellipticity(const fpk_field* field, int grid_n,
                          fpk_ellipticity_report* out);

/* Sample the Cordes ratio on an offset grid; see fpk_cordes_report. */
int fpk_check_cordes(const fpk_field* field, int grid_n,
                     fpk_cordes_report* out);

/*
 * Solve for the invariant measure on an n x n periodic mesh.
 * setting 'a': divergence-form method for differentiable A (1 component,
 *              evaluates the P1 density r_h; mass = integral of r_h).
 * setting 'b': renormalized div-curl method for bounded measurable A under
 *              the Cordes condition (1 component, evaluates the normalized
 *              density; mass = integral of the unnormalized piecewise-
 *              constant density, equal to 1 in exact arithmetic).
 */
int fpk_solve_invariant(const fpk_field* field, char setting, int mesh_n,
                        fpk_solution** out);

/*
 * Solve the corrector problem for coordinate j in {1, 2}.
 * setting 'a': scalar corrector chi_j (1 component; mass = its integral,
 *              zero up to roundoff).
 * setting 'b': gradient corrector xi_j (2 components approximating
 *              grad chi_j; mass = integral of the first component).
 */
int fpk_solve_corrector(const fpk_field* field, char setting, int mesh_n,
                        int j, fpk_solution** out);

/*
 * Solve the nonhomogeneous stationary equation with divergence-form load
 * div F.  rhs_name selects a builtin load; currently
 *   "cosine-x"  F = -(2 pi)^{-1} (cos(2 pi y1), 0)
 * Setting 'a' returns the P1 solution, setting 'b' the piecewise-constant
 * reconstruction (1 component each; mass = integral, zero up to roundoff).
 */
int fpk_solve_nonhomogeneous(const fpk_field* field, char setting, int mesh_n,
                             const char* rhs_name, fpk_solution** out);

/*
 * Effective diffusion matrix of periodic homogenization with large drift.
 * value is row-major [a11 a12; a21 a22]; asymmetry = |a12 - a21| before
 * symmetrization; min_eigenvalue refers to the symmetrized matrix.
 */
int fpk_effective_matrix(const fpk_field* field, char setting, int mesh_n,
                         double value[4], double* asymmetry,
                         double* min_eigenvalue);

/* Evaluate a solution at a point of the unit cell (periodic wrap applies).
 * Writes fpk_solution_stats.components doubles into out. */
int fpk_solution_eval(const fpk_solution* sol, double x, double y,
                      double* out);

int fpk_solution_stats_get(const fpk_solution* sol, fpk_solution_stats* out);

void fpk_solution_destroy(fpk_solution* sol);

/*
 * Run a convergence study described by a JSON config file and write
 * study.csv / study.svg into its output_dir.  A human-readable summary
 * (row counts, output paths, fitted rates) is copied into summary_buf
 * (truncated to buflen, always NUL-terminated when buflen > 0).
 * failed_rows (optional) receives the number of rows aborted by solver
 * failures; the study itself continues past such rows.
 */
int fpk_run_convergence(const char* config_path, char* summary_buf,
                        size_t buflen, int* failed_rows);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FPKHOM_H */
