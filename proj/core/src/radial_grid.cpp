#include "amt/radial_grid.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

#include "amt/errors.hpp"

namespace amt {

RadialGrid::RadialGrid(std::vector<double> nodes, double grading)
    : nodes_(std::move(nodes)), grading_(grading) {}

RadialGrid RadialGrid::graded(double r_outer, std::size_t n_nodes, double grading) {
  return graded_annulus(0.0, r_outer, n_nodes, grading);
}

RadialGrid RadialGrid::graded_annulus(double r_inner, double r_outer, std::size_t n_nodes,
                                      double grading) {
  if (!(r_inner >= 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
    throw InputError("RadialGrid: require 0 <= r_inner < r_outer < inf");
  }
  if (n_nodes < 5) throw InputError("RadialGrid: need at least 5 nodes");
  if (!(grading >= 1.0)) throw InputError("RadialGrid: grading exponent must be >= 1");
  std::vector<double> nodes(n_nodes);
  const double len = r_outer - r_inner;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_nodes - 1);
    const double a = std::pow(t, grading);
    const double b = std::pow(1.0 - t, grading);
    nodes[i] = r_inner + len * a / (a + b);
  }
  nodes.front() = r_inner;
  nodes.back() = r_outer;
  return RadialGrid(std::move(nodes), grading);
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes, double grading) {
  if (nodes.size() < 5) throw InputError("RadialGrid: need at least 5 nodes");
  if (!(nodes.front() >= 0.0)) throw InputError("RadialGrid: nodes must be non-negative");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1]) || !std::isfinite(nodes[i])) {
      throw InputError("RadialGrid: nodes must be finite and strictly increasing");
    }
  }
  return RadialGrid(std::move(nodes), grading);
}

double lagrange_eval(const double* xs, const double* ys, std::size_t n, double x) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double l = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) l *= (x - xs[j]) / (xs[k] - xs[j]);
    }
    sum += l * ys[k];
  }
  return sum;
}

std::vector<CellRule> cell_rules(const RadialGrid& grid, int power) {
  if (power < 0) throw InputError("cell_rules: power must be non-negative");
  using GL = boost::math::quadrature::gauss<double, 16>;
  const auto& abscissa = GL::abscissa();
  const auto& weight = GL::weights();
  // Symmetric rule stored as non-negative abscissae; expand to the full set.
  std::vector<double> gx, gw;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    gx.push_back(abscissa[i]);
    gw.push_back(weight[i]);
    if (abscissa[i] != 0.0) {
      gx.push_back(-abscissa[i]);
      gw.push_back(weight[i]);
    }
  }

  const auto& r = grid.nodes();
  const std::size_t n = r.size();
  constexpr std::size_t kStencil = CellRule::kStencil;
  std::vector<CellRule> rules(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    CellRule& rule = rules[i];
    rule.first = std::min(i >= 2 ? i - 2 : 0, n - kStencil);
    rule.weights.fill(0.0);
    const std::size_t j0 = rule.first;
    const double half = 0.5 * (r[i + 1] - r[i]);
    const double mid = 0.5 * (r[i] + r[i + 1]);
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double x = mid + half * gx[q];
      const double scale = gw[q] * half * std::pow(x, power);
      for (std::size_t k = 0; k < kStencil; ++k) {
        double l = 1.0;
        for (std::size_t j = 0; j < kStencil; ++j) {
          if (j != k) l *= (x - r[j0 + j]) / (r[j0 + k] - r[j0 + j]);
        }
        rule.weights[k] += scale * l;
      }
    }
  }
  return rules;
}

std::vector<double> radial_weights(const RadialGrid& grid, int power) {
  std::vector<double> w(grid.size(), 0.0);
  for (const auto& rule : cell_rules(grid, power)) {
    for (std::size_t k = 0; k < CellRule::kStencil; ++k) w[rule.first + k] += rule.weights[k];
  }
  return w;
}

std::vector<double> cumulative_integral(const std::vector<CellRule>& rules,
                                        const std::vector<double>& f) {
  if (f.size() != rules.size() + 1) throw InputError("cumulative_integral: size mismatch");
  std::vector<double> out(f.size(), 0.0);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& rule = rules[i];
    long double cell = 0.0L;
    for (std::size_t k = 0; k < CellRule::kStencil; ++k) cell += rule.weights[k] * f[rule.first + k];
    acc += cell;
    out[i + 1] = static_cast<double>(acc);
  }
  return out;
}

std::vector<std::vector<double>> fd_weights(const std::vector<double>& xs, double x0,
                                            int max_order) {
  const int n = static_cast<int>(xs.size());
  if (n < 1 || max_order < 0) throw InputError("fd_weights: bad arguments");
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

}  // namespace amt
