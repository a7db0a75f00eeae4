#pragma once

#include <vector>

namespace amt {

/// Row-major dense matrix as a vector of equally sized rows.
using DenseMatrix = std::vector<std::vector<double>>;

/// Solves A x = b by LU with full pivoting.
///
/// The returned x satisfies ||Ax - b||_inf <= 1e-12 (||A||_inf ||x||_inf + ||b||_inf);
/// up to two steps of iterative refinement are spent reaching that bound.
/// Throws SingularMatrixError when a pivot falls below `pivot_threshold`
/// relative to the largest one, or when the bound cannot be met.
std::vector<double> solve_linear_system(const DenseMatrix& A, const std::vector<double>& b,
                                        double pivot_threshold = 1e-13);

/// Infinity norm of A x - b.
double residual_inf_norm(const DenseMatrix& A, const std::vector<double>& x,
                         const std::vector<double>& b);

}  // namespace amt
