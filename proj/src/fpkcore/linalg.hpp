#pragma once

#include <Eigen/Sparse>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpkhom {

/// Assembly buffer for one linear system: a square sparse matrix in
/// triplet form, a right-hand side, and optional dense constraint rows
/// (coefficients c, target tau). The solver sees the augmented saddle
/// system [[M, C^T], [C, 0]]; multipliers are internal.
class SparseSystem {
 public:
  explicit SparseSystem(int dimension);

  int dimension() const { return dim_; }
  int n_constraints() const { return static_cast<int>(cons_.size()); }

  void add(int row, int col, double value) {
    trips_.emplace_back(row, col, value);
  }
  void add_constraint(Eigen::VectorXd c, double target);
  const Eigen::VectorXd& constraint_row(int k) const { return cons_.at(k).c; }
  const std::vector<Eigen::Triplet<double>>& triplets() const { return trips_; }

  /// Same constraints and rhs, matrix transposed (for problems whose
  /// unknown sits in the second slot of a nonsymmetric form).
  SparseSystem transposed() const;

  /// The assembled (unaugmented) matrix, duplicates summed.
  Eigen::SparseMatrix<double> matrix() const;
  /// The augmented saddle matrix handed to solvers.
  Eigen::SparseMatrix<double> augmented() const;
  Eigen::VectorXd augmented_rhs() const;

  Eigen::VectorXd rhs;

 private:
  int dim_;
  std::vector<Eigen::Triplet<double>> trips_;
  struct Constraint {
    Eigen::VectorXd c;
    double target;
  };
  std::vector<Constraint> cons_;
};

struct SolveReport {
  std::string method;  ///< "direct_lu" or "iterative"
  double relative_residual = 0.0;
  int iterations = 0;  ///< 0 for the direct path
  double wall_time = 0.0;
};

/// Solve failure (singular or badly conditioned system); carries the best
/// residual achieved before giving up.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_residual(achieved) {}
  double achieved_residual;
};

/// Solve the augmented system; returns the primal part only. Tries sparse
/// LU first and falls back to diagonally preconditioned restarted GMRES;
/// throws SolveError when neither reaches tol.
Eigen::VectorXd solve(const SparseSystem& sys, SolveReport* report = nullptr,
                      double tol = 1e-10);

/// Several right-hand sides (primal size; constraint targets from sys)
/// against one factorization.
std::vector<Eigen::VectorXd> solve_multi(const SparseSystem& sys,
                                         const std::vector<Eigen::VectorXd>& rhss,
                                         std::vector<SolveReport>* reports = nullptr,
                                         double tol = 1e-10);

/// Euclidean relative residual of the augmented system at x. x may be of
/// primal size (multipliers taken as zero) or full augmented size.
double residual(const SparseSystem& sys, const Eigen::VectorXd& x);

}  // namespace fpkhom
