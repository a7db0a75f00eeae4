#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace amt {

/// Strictly increasing radii on [r_inner, r_outer].
///
/// Grids built by `graded` start at r = 0 and cluster nodes toward both ends
/// through r = R t^p / (t^p + (1 - t)^p) with t uniform on [0, 1]. Grids that
/// start at r_inner > 0 are allowed for functions singular at the origin.
class RadialGrid {
 public:
  static RadialGrid graded(double r_outer, std::size_t n_nodes = 2048, double grading = 2.0);
  /// Same map applied on [r_inner, r_outer].
  static RadialGrid graded_annulus(double r_inner, double r_outer, std::size_t n_nodes,
                                   double grading = 2.0);
  static RadialGrid from_nodes(std::vector<double> nodes, double grading = 0.0);

  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double r_inner() const { return nodes_.front(); }
  double r_outer() const { return nodes_.back(); }
  bool contains_origin() const { return nodes_.front() == 0.0; }
  /// Grading exponent p (0 when the nodes were supplied directly).
  double grading() const { return grading_; }
  double operator[](std::size_t i) const { return nodes_[i]; }

 private:
  RadialGrid(std::vector<double> nodes, double grading);
  std::vector<double> nodes_;
  double grading_;
};

/// Weights w with sum_i w_i f(r_i) ~ integral over the grid range of f(r) r^power dr.
///
/// Product integration: f is replaced on each cell by the degree-5 polynomial
/// through the six surrounding nodes and the product with r^power is
/// integrated exactly by Gauss-Legendre.
std::vector<double> radial_weights(const RadialGrid& grid, int power);

/// The product rule of one cell [r_i, r_(i+1)]: weights on the six nodes
/// starting at `first`.
struct CellRule {
  static constexpr std::size_t kStencil = 6;
  std::size_t first = 0;
  std::array<double, kStencil> weights{};
};

/// Per-cell product rules for the weight r^power.
std::vector<CellRule> cell_rules(const RadialGrid& grid, int power);

/// out[i] = integral from r_0 to r_i of f(r) r^power dr with the given cell rules.
std::vector<double> cumulative_integral(const std::vector<CellRule>& rules,
                                        const std::vector<double>& f);

/// Lagrange interpolation of (x_k, y_k) at x using all supplied points.
double lagrange_eval(const double* xs, const double* ys, std::size_t n, double x);

/// Finite-difference weights (Fornberg's recursion): w[d][k] is the weight of
/// sample k in the d-th derivative at x0, for d = 0..max_order.
std::vector<std::vector<double>> fd_weights(const std::vector<double>& xs, double x0,
                                            int max_order);

}  // namespace amt
