// Linear solvers for the per-step block systems: restarted GMRES with an
// ILU(0) preconditioner, and a dense LU fallback engaged automatically for
// small systems.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hallmhd/sparse.hpp"

namespace hallmhd {

enum class SolverMethod { auto_select, gmres, dense_lu };
enum class Preconditioner { none, ilu0, mass_diagonal };

struct SolverConfig {
  SolverMethod method = SolverMethod::auto_select;
  double tolerance = 1e-10;  // relative residual
  int max_iterations = 2000;
  int restart = 200;
  Preconditioner precond = Preconditioner::ilu0;
  std::int64_t dense_threshold = 3000;  // auto_select uses dense LU below this
};

struct SolveResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual = 0.0;  // relative, achieved
  bool dense = false;
  int ilu_zero_pivots = 0;
};

class SolverError : public std::runtime_error {
 public:
  double best_residual;
  SolverError(const std::string& msg, double res)
      : std::runtime_error(msg), best_residual(res) {}
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

// ILU(0) on the CSR pattern.  Requires every diagonal entry to be structurally
// present; zero pivots are replaced by 1e-12 * ||A||_inf.
struct Ilu0 {
  SparseMatrix lu;                  // combined L (unit diagonal) and U factors
  std::vector<std::int64_t> diag;   // position of the diagonal in each row
  int zero_pivots = 0;

  void factor(const SparseMatrix& A) {
    lu = A;
    const std::int64_t n = A.rows;
    diag.assign(n, -1);
    for (std::int64_t r = 0; r < n; ++r) {
      for (std::int64_t k = lu.row_ptr[r]; k < lu.row_ptr[r + 1]; ++k)
        if (lu.col_idx[k] == r) diag[r] = k;
      if (diag[r] < 0) throw std::runtime_error("ilu0: missing structural diagonal");
    }
    const double shift = 1e-12 * std::max(A.inf_norm(), 1.0);
    zero_pivots = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t kk = lu.row_ptr[i]; kk < lu.row_ptr[i + 1]; ++kk) {
        std::int64_t k = lu.col_idx[kk];
        if (k >= i) break;
        double pivot = lu.values[diag[k]];
        double lik = lu.values[kk] / pivot;
        lu.values[kk] = lik;
        // subtract lik * row k from row i on the shared pattern right of k
        std::int64_t pi = kk + 1;
        for (std::int64_t pk = diag[k] + 1; pk < lu.row_ptr[k + 1]; ++pk) {
          std::int64_t c = lu.col_idx[pk];
          while (pi < lu.row_ptr[i + 1] && lu.col_idx[pi] < c) ++pi;
          if (pi < lu.row_ptr[i + 1] && lu.col_idx[pi] == c)
            lu.values[pi] -= lik * lu.values[pk];
        }
      }
      if (lu.values[diag[i]] == 0.0) {
        lu.values[diag[i]] = shift;
        ++zero_pivots;
      }
    }
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& b) const {
    const std::int64_t n = lu.rows;
    Eigen::VectorXd y(n);
    for (std::int64_t i = 0; i < n; ++i) {
      double acc = b[i];
      for (std::int64_t k = lu.row_ptr[i]; k < diag[i]; ++k) acc -= lu.values[k] * y[lu.col_idx[k]];
      y[i] = acc;
    }
    for (std::int64_t i = n - 1; i >= 0; --i) {
      double acc = y[i];
      for (std::int64_t k = diag[i] + 1; k < lu.row_ptr[i + 1]; ++k)
        acc -= lu.values[k] * y[lu.col_idx[k]];
      y[i] = acc / lu.values[diag[i]];
    }
    return y;
  }
};

struct DiagonalPrecond {
  Eigen::VectorXd inv_diag;
  void factor(const SparseMatrix& A) {
    inv_diag = Eigen::VectorXd::Ones(A.rows);
    for (std::int64_t r = 0; r < A.rows; ++r)
      for (std::int64_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
        if (A.col_idx[k] == r && A.values[k] != 0.0) inv_diag[r] = 1.0 / A.values[k];
  }
  Eigen::VectorXd apply(const Eigen::VectorXd& b) const { return inv_diag.cwiseProduct(b); }
};

}  // namespace detail

inline SolveResult solve_dense(const SparseMatrix& A, const Eigen::VectorXd& b) {
  Eigen::MatrixXd D = A.to_dense();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(D);
  SolveResult res;
  res.x = lu.solve(b);
  res.dense = true;
  double bn = b.norm();
  double rn = (b - D * res.x).norm();
  res.residual = bn > 0.0 ? rn / bn : rn;
  if (!res.x.allFinite() || (bn > 0.0 && res.residual > 1e-6))
    throw SingularMatrixError("dense LU: matrix is singular or severely ill-conditioned");
  return res;
}

// Right-preconditioned restarted GMRES; residuals are true residuals of A.
inline SolveResult solve_gmres(const SparseMatrix& A, const Eigen::VectorXd& b,
                               const SolverConfig& cfg) {
  const std::int64_t n = A.rows;
  detail::Ilu0 ilu;
  detail::DiagonalPrecond diag;
  if (cfg.precond == Preconditioner::ilu0) ilu.factor(A);
  if (cfg.precond == Preconditioner::mass_diagonal) diag.factor(A);
  auto precond = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    switch (cfg.precond) {
      case Preconditioner::ilu0: return ilu.apply(v);
      case Preconditioner::mass_diagonal: return diag.apply(v);
      default: return v;
    }
  };

  const double bnorm = b.norm();
  SolveResult res;
  res.ilu_zero_pivots = ilu.zero_pivots;
  if (bnorm == 0.0) {
    res.x = Eigen::VectorXd::Zero(n);
    return res;
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  int total_iters = 0;
  double rel = 1.0;
  const int m = std::max(1, cfg.restart);

  while (total_iters < cfg.max_iterations) {
    Eigen::VectorXd r = b - A.multiply(x);
    double beta = r.norm();
    rel = beta / bnorm;
    if (rel <= cfg.tolerance) break;

    std::vector<Eigen::VectorXd> V;
    V.reserve(m + 1);
    V.push_back(r / beta);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd cs = Eigen::VectorXd::Zero(m), sn = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
    g[0] = beta;

    int j = 0;
    for (; j < m && total_iters < cfg.max_iterations; ++j) {
      ++total_iters;
      Eigen::VectorXd w = A.multiply(precond(V[j]));
      for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
        H(i, j) = w.dot(V[i]);
        w -= H(i, j) * V[i];
      }
      H(j + 1, j) = w.norm();
      bool breakdown = H(j + 1, j) < 1e-300;
      if (!breakdown) V.push_back(w / H(j + 1, j));

      for (int i = 0; i < j; ++i) {  // apply stored Givens rotations
        double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      double denom = std::hypot(H(j, j), H(j + 1, j));
      if (denom < 1e-300) {
        ++j;
        break;
      }
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      rel = std::abs(g[j + 1]) / bnorm;
      if (rel <= cfg.tolerance || breakdown) {
        ++j;
        break;
      }
    }

    if (j > 0) {
      Eigen::VectorXd y = H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
      Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < j; ++i) z += y[i] * V[i];
      x += precond(z);
    } else {
      break;
    }

    rel = (b - A.multiply(x)).norm() / bnorm;
    if (rel <= cfg.tolerance) break;
  }

  rel = (b - A.multiply(x)).norm() / bnorm;
  res.x = x;
  res.iterations = total_iters;
  res.residual = rel;
  if (rel > cfg.tolerance)
    throw SolverError("gmres: no convergence in " + std::to_string(total_iters) +
                          " iterations (best relative residual " + std::to_string(rel) + ")",
                      rel);
  return res;
}

inline SolveResult solve(const SparseMatrix& A, const Eigen::VectorXd& b,
                         const SolverConfig& cfg = {}) {
  if (A.rows != A.cols) throw std::invalid_argument("solve: matrix must be square");
  if (b.size() != A.rows) throw std::invalid_argument("solve: rhs size mismatch");
  SolverMethod method = cfg.method;
  if (method == SolverMethod::auto_select)
    method = A.rows < cfg.dense_threshold ? SolverMethod::dense_lu : SolverMethod::gmres;
  if (method == SolverMethod::dense_lu) return solve_dense(A, b);
  return solve_gmres(A, b, cfg);
}

}  // namespace hallmhd
