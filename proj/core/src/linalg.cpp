#include "amt/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "amt/errors.hpp"

namespace amt {
namespace {

double inf_norm(const std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

double matrix_inf_norm(const DenseMatrix& A) {
  double n = 0.0;
  for (const auto& row : A) {
    double s = 0.0;
    for (double x : row) s += std::abs(x);
    n = std::max(n, s);
  }
  return n;
}

}  // namespace

double residual_inf_norm(const DenseMatrix& A, const std::vector<double>& x,
                         const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    long double acc = -static_cast<long double>(b[i]);
    for (std::size_t j = 0; j < x.size(); ++j) acc += static_cast<long double>(A[i][j]) * x[j];
    r = std::max(r, static_cast<double>(std::abs(acc)));
  }
  return r;
}

std::vector<double> solve_linear_system(const DenseMatrix& A, const std::vector<double>& b,
                                        double pivot_threshold) {
  const std::size_t n = A.size();
  if (n == 0) throw InputError("solve_linear_system: empty matrix");
  if (b.size() != n) throw InputError("solve_linear_system: right-hand side has wrong length");
  Eigen::MatrixXd M(n, n);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw InputError("solve_linear_system: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(A[i][j])) throw InputError("solve_linear_system: non-finite entry");
      M(i, j) = A[i][j];
    }
    rhs(i) = b[i];
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(pivot_threshold);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "solve_linear_system: matrix is numerically singular (rank " << lu.rank() << " of "
       << n << ")";
    throw SingularMatrixError(os.str());
  }

  Eigen::VectorXd x = lu.solve(rhs);
  std::vector<double> xv(x.data(), x.data() + n);
  const double anorm = matrix_inf_norm(A);
  const double bnorm = inf_norm(b);
  for (int refine = 0;; ++refine) {
    const double res = residual_inf_norm(A, xv, b);
    if (res <= 1e-12 * (anorm * inf_norm(xv) + bnorm)) return xv;
    if (refine == 2) {
      std::ostringstream os;
      os << "solve_linear_system: residual " << res << " above bound after refinement";
      throw SingularMatrixError(os.str());
    }
    Eigen::VectorXd r(n);
    for (std::size_t i = 0; i < n; ++i) {
      long double acc = b[i];
      for (std::size_t j = 0; j < n; ++j) acc -= static_cast<long double>(A[i][j]) * xv[j];
      r(i) = static_cast<double>(acc);
    }
    const Eigen::VectorXd dx = lu.solve(r);
    for (std::size_t i = 0; i < n; ++i) xv[i] += dx(i);
  }
}

}  // namespace amt
