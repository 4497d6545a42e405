#include "linalg.hpp"

#include <Eigen/SparseLU>
#include <chrono>
#include <cmath>
#include <unsupported/Eigen/IterativeSolvers>

namespace fpkhom {

SparseSystem::SparseSystem(int dimension) : dim_(dimension) {
  rhs = Eigen::VectorXd::Zero(dimension);
}

void SparseSystem::add_constraint(Eigen::VectorXd c, double target) {
  if (c.size() != dim_)
    throw std::invalid_argument("constraint row has wrong dimension");
  cons_.push_back({std::move(c), target});
}

Eigen::SparseMatrix<double> SparseSystem::matrix() const {
  Eigen::SparseMatrix<double> M(dim_, dim_);
  M.setFromTriplets(trips_.begin(), trips_.end());
  return M;
}

Eigen::SparseMatrix<double> SparseSystem::augmented() const {
  int m = n_constraints();
  Eigen::SparseMatrix<double> S(dim_ + m, dim_ + m);
  std::vector<Eigen::Triplet<double>> t(trips_);
  t.reserve(trips_.size() + 2 * static_cast<size_t>(m) * dim_);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < dim_; ++i) {
      double v = cons_[k].c[i];
      if (v != 0.0) {
        t.emplace_back(dim_ + k, i, v);
        t.emplace_back(i, dim_ + k, v);
      }
    }
  S.setFromTriplets(t.begin(), t.end());
  return S;
}

Eigen::VectorXd SparseSystem::augmented_rhs() const {
  int m = n_constraints();
  Eigen::VectorXd f(dim_ + m);
  f.head(dim_) = rhs;
  for (int k = 0; k < m; ++k) f[dim_ + k] = cons_[k].target;
  return f;
}

double residual(const SparseSystem& sys, const Eigen::VectorXd& x) {
  Eigen::SparseMatrix<double> S = sys.augmented();
  Eigen::VectorXd f = sys.augmented_rhs();
  Eigen::VectorXd xa;
  if (x.size() == S.rows()) {
    xa = x;
  } else if (x.size() == sys.dimension()) {
    xa = Eigen::VectorXd::Zero(S.rows());
    xa.head(sys.dimension()) = x;
  } else {
    throw std::invalid_argument("solution vector has wrong dimension");
  }
  double fn = f.norm();
  if (fn == 0.0) fn = 1.0;
  return (S * xa - f).norm() / fn;
}

SparseSystem SparseSystem::transposed() const {
  SparseSystem t(dim_);
  t.rhs = rhs;
  t.trips_.reserve(trips_.size());
  for (const auto& e : trips_) t.trips_.emplace_back(e.col(), e.row(), e.value());
  t.cons_ = cons_;
  return t;
}

namespace {

/// Direct factorization of the augmented saddle matrix A = [[M, C^T], [C, 0]].
///
/// The constraint rows C are dense (mean values over all dofs), and sparse LU
/// fill-in explodes when the factored matrix carries dense rows. We instead
/// factor a bordered proxy Sp in which constraint k is replaced by a unit pin
/// at the dof where |c_k| is largest, and recover solutions of A exactly via
/// the Woodbury identity: A = Sp + U V^T with rank 2m, hence
///   A^{-1} f = y - W (I + V^T W)^{-1} V^T y,  y = Sp^{-1} f,  W = Sp^{-1} U.
/// If the proxy factorization fails, falls back to factoring A directly.
class AugmentedSolver {
 public:
  AugmentedSolver(const SparseSystem& sys, const Eigen::SparseMatrix<double>& A,
                  const std::vector<Eigen::Triplet<double>>& mat_trips)
      : n_(sys.dimension()), m_(sys.n_constraints()) {
    if (m_ == 0) {
      lu_.compute(A);
      ok_ = lu_.info() == Eigen::Success;
      plain_ = true;
      return;
    }
    // One pin dof per constraint: largest |c_k|, lowest index, no reuse.
    std::vector<int> pins(m_, 0);
    std::vector<char> used(n_, 0);
    for (int k = 0; k < m_; ++k) {
      const Eigen::VectorXd& c = sys.constraint_row(k);
      int best = -1;
      double best_abs = -1.0;
      for (int i = 0; i < n_; ++i) {
        if (used[i]) continue;
        double a = std::abs(c[i]);
        if (a > best_abs) {
          best_abs = a;
          best = i;
        }
      }
      pins[k] = best;
      used[best] = 1;
    }

    std::vector<Eigen::Triplet<double>> t(mat_trips);
    t.reserve(t.size() + 2 * static_cast<size_t>(m_));
    for (int k = 0; k < m_; ++k) {
      t.emplace_back(n_ + k, pins[k], 1.0);
      t.emplace_back(pins[k], n_ + k, 1.0);
    }
    Eigen::SparseMatrix<double> proxy(n_ + m_, n_ + m_);
    proxy.setFromTriplets(t.begin(), t.end());
    lu_.compute(proxy);
    if (lu_.info() != Eigen::Success) {
      // Degenerate pinning; pay the fill-in price rather than fail.
      lu_.compute(A);
      ok_ = lu_.info() == Eigen::Success;
      plain_ = true;
      return;
    }

    // A - Sp has rank 2m: row n+k and column n+k each change by
    // d_k = c_k - e_{pin_k} (zero on the border block).
    U_ = Eigen::MatrixXd::Zero(n_ + m_, 2 * m_);
    V_ = Eigen::MatrixXd::Zero(n_ + m_, 2 * m_);
    for (int k = 0; k < m_; ++k) {
      const Eigen::VectorXd& c = sys.constraint_row(k);
      U_(n_ + k, k) = 1.0;
      V_(n_ + k, m_ + k) = 1.0;
      U_.col(m_ + k).head(n_) = c;
      U_(pins[k], m_ + k) -= 1.0;
      V_.col(k).head(n_) = c;
      V_(pins[k], k) -= 1.0;
    }
    Eigen::MatrixXd W = lu_.solve(U_);
    Eigen::MatrixXd cap =
        Eigen::MatrixXd::Identity(2 * m_, 2 * m_) + V_.transpose() * W;
    cap_lu_.compute(cap);
    W_ = std::move(W);
    ok_ = W_.allFinite() && cap_lu_.matrixLU().allFinite();
    if (!ok_) {
      lu_.compute(A);
      ok_ = lu_.info() == Eigen::Success;
      plain_ = true;
    }
  }

  bool ok() const { return ok_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& f) const {
    Eigen::VectorXd y = lu_.solve(f);
    if (plain_) return y;
    return y - W_ * cap_lu_.solve(V_.transpose() * y);
  }

 private:
  int n_, m_;
  bool ok_ = false;
  bool plain_ = false;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  Eigen::MatrixXd U_, V_, W_;
  Eigen::PartialPivLU<Eigen::MatrixXd> cap_lu_;
};

}  // namespace

std::vector<Eigen::VectorXd> solve_multi(const SparseSystem& sys,
                                         const std::vector<Eigen::VectorXd>& rhss,
                                         std::vector<SolveReport>* reports,
                                         double tol) {
  Eigen::SparseMatrix<double> S = sys.augmented();
  AugmentedSolver solver(sys, S, sys.triplets());
  bool factored = solver.ok();

  std::vector<Eigen::VectorXd> out;
  if (reports) reports->clear();
  for (const Eigen::VectorXd& r : rhss) {
    auto t0 = std::chrono::steady_clock::now();
    if (r.size() != sys.dimension())
      throw std::invalid_argument("rhs has wrong dimension");
    Eigen::VectorXd f(S.rows());
    f.head(sys.dimension()) = r;
    f.tail(S.rows() - sys.dimension()) =
        sys.augmented_rhs().tail(S.rows() - sys.dimension());
    double fn = f.norm();
    if (fn == 0.0) fn = 1.0;

    SolveReport rep;
    Eigen::VectorXd x;
    double res = std::numeric_limits<double>::infinity();
    if (factored) {
      x = solver.solve(f);
      res = (S * x - f).norm() / fn;
      for (int round = 0; round < 3 && res > tol; ++round) {
        // iterative refinement against the true augmented matrix
        Eigen::VectorXd x2 = x + Eigen::VectorXd(solver.solve(f - S * x));
        double res2 = (S * x2 - f).norm() / fn;
        if (!(res2 < res)) break;
        x = x2;
        res = res2;
      }
      if (!std::isfinite(res)) res = std::numeric_limits<double>::infinity();
      rep.method = "direct_lu";
      rep.iterations = 0;
    }
    if (!(res <= tol)) {
      Eigen::GMRES<Eigen::SparseMatrix<double>,
                   Eigen::DiagonalPreconditioner<double>>
          gmres(S);
      gmres.setTolerance(tol);
      gmres.set_restart(100);
      gmres.setMaxIterations(10000);
      Eigen::VectorXd xi = x.size() == S.rows()
                               ? Eigen::VectorXd(gmres.solveWithGuess(f, x))
                               : Eigen::VectorXd(gmres.solve(f));
      double resi = (S * xi - f).norm() / fn;
      if (resi < res) {
        x = xi;
        res = resi;
        rep.method = "iterative";
        rep.iterations = static_cast<int>(gmres.iterations());
      }
    }
    rep.relative_residual = res;
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (!(res <= tol))
      throw SolveError("linear solve did not reach tolerance (singular or "
                       "near-singular system)", res);
    if (reports) reports->push_back(rep);
    out.push_back(x.head(sys.dimension()));
  }
  return out;
}

Eigen::VectorXd solve(const SparseSystem& sys, SolveReport* report, double tol) {
  std::vector<SolveReport> reps;
  auto sols = solve_multi(sys, {sys.rhs}, &reps, tol);
  if (report) *report = reps[0];
  return sols[0];
}

}  // namespace fpkhom
