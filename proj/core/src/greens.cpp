#include "amt/greens.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "amt/errors.hpp"
#include "amt/linalg.hpp"
#include "amt/quadrature.hpp"

namespace amt {
namespace {

// Delta^m s^K = c_K s^(K-m).
double polyharmonic_factor(int m, int K) {
  double c = 1.0;
  for (int t = 0; t < m; ++t) c *= 4.0 * (K - t) * (K - t + m - 1);
  return c;
}

// Regular solution of (-Delta)^m u = lambda u on the unit ball with leading term s^i.
RadialSeries eigen_series(int m, int i, double lambda) {
  RadialSeries u(m);
  std::vector<double> a(1, 0.0);
  a.resize(i + 1, 0.0);
  a[i] = 1.0;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  double biggest = 1.0;
  for (int k = i; k < 2000; k += m) {
    u.add_poly(k, a[k]);
    const int next = k + m;
    a.resize(next + 1, 0.0);
    a[next] = sign * lambda * a[k] / polyharmonic_factor(m, next);
    biggest = std::max(biggest, std::abs(a[next]));
    if (std::abs(a[next]) < 1e-22 * biggest && next > 4 * m) break;
  }
  return u;
}

double boundary_determinant(int m, double lambda) {
  Eigen::MatrixXd M(m, m);
  for (int i = 0; i < m; ++i) {
    const RadialSeries u = eigen_series(m, i, lambda);
    for (int j = 0; j < m; ++j) M(j, i) = u.ladder(j)(1.0);
  }
  return M.determinant();
}

}  // namespace

double series_first_eigenvalue(const DimensionContext& ctx, double ball_radius) {
  if (!(ball_radius > 0.0)) throw InputError("series_first_eigenvalue: ball_radius must be positive");
  const int m = ctx.m;
  double lo = 0.5;
  double f_lo = boundary_determinant(m, lo);
  double hi = lo;
  double f_hi = f_lo;
  while (true) {
    hi = lo * 1.05;
    f_hi = boundary_determinant(m, hi);
    if ((f_lo > 0) != (f_hi > 0)) break;
    lo = hi;
    f_lo = f_hi;
    if (lo > 1e12) throw ConvergenceError("series_first_eigenvalue: no sign change found", lo, f_lo);
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = boundary_determinant(m, mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) * std::pow(ball_radius, -2.0 * m);
}

double GreenFunction::value(double r) const { return ladder(0, r); }

double GreenFunction::ladder(int j, double r) const {
  if (j < 0 || j > 2 * ctx.m) throw InputError("GreenFunction::ladder: level out of range");
  if (!(r > 0.0) || r > ball_radius * (1 + 1e-12)) {
    throw InputError("GreenFunction::ladder: radius outside (0, R]");
  }
  return g_levels[j](r / ball_radius) * std::pow(ball_radius, -j);
}

double GreenFunction::psi_ladder(int j, double r) const {
  if (j < 0 || j > 2 * ctx.m) throw InputError("GreenFunction::psi_ladder: level out of range");
  if (!(r >= 0.0) || r > ball_radius * (1 + 1e-12)) {
    throw InputError("GreenFunction::psi_ladder: radius outside [0, R]");
  }
  return psi_levels[j](r / ball_radius) * std::pow(ball_radius, -j);
}

double GreenFunction::radial_derivative(int i, double r) const {
  if (!(r > 0.0)) throw InputError("GreenFunction::radial_derivative: r must be positive");
  return g_levels[0].radial_derivative(i, r / ball_radius) * std::pow(ball_radius, -i);
}

double GreenFunction::psi_radial_derivative(int i, double r) const {
  if (!(r > 0.0)) throw InputError("GreenFunction::psi_radial_derivative: r must be positive");
  return psi_levels[0].radial_derivative(i, r / ball_radius) * std::pow(ball_radius, -i);
}

GreenFunction solve_green(const DimensionContext& ctx, double alpha, double ball_radius,
                          double tol, const GreenOptions& opts) {
  const int m = ctx.m;
  if (!(ball_radius > 0.0) || !std::isfinite(ball_radius)) {
    throw InputError("solve_green: ball_radius must be positive");
  }
  if (!(alpha >= 0.0)) throw InputError("solve_green: alpha must be >= 0");
  const double lambda1 = series_first_eigenvalue(ctx, ball_radius);
  if (alpha >= lambda1) {
    std::ostringstream os;
    os << "solve_green: alpha = " << alpha << " is not below lambda_1 = " << lambda1;
    throw InputError(os.str());
  }
  if (!(opts.theta > 0.0 && opts.theta <= 1.0)) throw InputError("solve_green: theta must be in (0, 1]");

  const double alpha1 = alpha * std::pow(ball_radius, 2.0 * m);
  const RadialSeries phi = RadialSeries::log_r(m, -ctx.log_coeff());

  // Boundary operator: ladder levels 0..m-1 at rho = 1 (equivalent to the
  // Dirichlet conditions on d^i/dr^i, i < m, by triangularity).
  DenseMatrix bc(m, std::vector<double>(m));
  for (int j = 0; j < m; ++j) {
    const RadialSeries basis = RadialSeries::monomial(m, j);
    for (int i = 0; i < m; ++i) bc[i][j] = basis.ladder(i)(1.0);
  }
  auto impose_bc = [&](const RadialSeries& particular) {
    const RadialSeries total = phi + particular;
    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = -total.ladder(i)(1.0);
    const std::vector<double> c = solve_linear_system(bc, rhs);
    RadialSeries out = particular;
    for (int j = 0; j < m; ++j) out.add_poly(j, c[j]);
    return out;
  };

  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  RadialSeries h(m);
  double change = 0.0;
  double first_change = 0.0;
  int iters = 0;
  int stalled = 0;
  double previous = 0.0;
  for (iters = 1; iters <= opts.max_iters; ++iters) {
    RadialSeries f = (phi + h) * alpha1;
    for (int k = 0; k < m; ++k) f = f.inverse_laplacian();
    const RadialSeries h_new = impose_bc((f * sign).truncated(opts.max_degree));
    const RadialSeries diff = h_new + h * -1.0;
    change = diff.l1_norm();
    h = h + diff * opts.theta;
    if (iters == 1) first_change = change;
    if (change < tol) break;
    if (iters > 2 && change >= previous) {
      ++stalled;
    } else {
      stalled = 0;
    }
    previous = change;
    if (change > 1e6 * first_change || stalled >= 10) {
      std::ostringstream os;
      os << "solve_green: corrector iteration not contracting, last change " << change;
      throw ConvergenceError(os.str(), h.poly_coeff(0), change);
    }
  }
  if (iters > opts.max_iters) {
    std::ostringstream os;
    os << "solve_green: no convergence in " << opts.max_iters << " iterations, last change "
       << change;
    throw ConvergenceError(os.str(), h.poly_coeff(0), change);
  }

  const double c1 = h.poly_coeff(0);
  RadialSeries psi_series = h;
  psi_series.add_poly(0, -c1);
  const RadialSeries g1 = phi + h;

  std::vector<RadialSeries> g_levels, psi_levels;
  for (int j = 0; j <= 2 * m; ++j) {
    g_levels.push_back(g1.ladder(j));
    psi_levels.push_back(psi_series.ladder(j));
  }

  std::vector<double> residuals;
  for (int i = 0; i < m; ++i) {
    residuals.push_back(std::abs(g1.radial_derivative(i, 1.0)) * std::pow(ball_radius, -i));
  }

  // ||G||^2: R^2m omega int_0^1 G1^2 rho^(2m-1) drho, with [0, d] done in closed form
  // from G1 ~ a log rho + c1 (psi = O(rho^2) there).
  const int n = 2 * m;
  const double d = 1e-6;
  const double a = -ctx.log_coeff();
  const double dn = std::pow(d, n) / n;
  const double ld = std::log(d);
  const double head = a * a * dn * (ld * ld - 2.0 * ld / n + 2.0 / (n * n)) +
                      2.0 * a * c1 * dn * (ld - 1.0 / n) + c1 * c1 * dn;
  const double body = adaptive_integrate(
      [&](double rho) {
        const double v = g1(rho);
        return v * v * std::pow(rho, n - 1);
      },
      d, 1.0, 1e-12);
  const double omega = ctx.omega_at(2 * m - 1).value();
  const double l2 = omega * std::pow(ball_radius, n) * (head + body);

  const RadialGrid grid = RadialGrid::graded(ball_radius, opts.grid_n);
  RadialProfile psi = RadialProfile::sample(grid, m, [&](double r) { return psi_series(r / ball_radius); });

  return GreenFunction{ctx,
                       alpha,
                       ball_radius,
                       c1 + ctx.log_coeff() * std::log(ball_radius),
                       std::move(psi),
                       l2,
                       h,
                       std::move(g_levels),
                       std::move(psi_levels),
                       std::move(residuals),
                       iters,
                       change};
}

GreenEnergyReport green_energy_expansion(const GreenFunction& g, double delta, double rel_tol) {
  const int m = g.ctx.m;
  if (!(delta > 0.0) || !(delta < g.ball_radius)) {
    throw InputError("green_energy_expansion: require 0 < delta < ball_radius");
  }
  const double omega = g.ctx.omega_at(2 * m - 1).value();
  const double R = g.ball_radius;
  // In u = log r the integrand |L_m G|^2 r^(2m) is smooth down to delta.
  auto integrand = [&](double u) {
    const double r = std::exp(u);
    const double v = g.ladder(m, std::min(r, R));
    return omega * v * v * std::pow(r, 2 * m);
  };
  GreenEnergyReport rep;
  rep.delta = delta;
  rep.lhs = adaptive_integrate(integrand, std::log(delta), std::log(R), rel_tol);
  rep.rhs_prediction = g.alpha * g.l2_norm_sq - g.ctx.log_coeff() * std::log(delta) + g.C +
                       g.ctx.h_m.value();
  rep.residual = rep.lhs - rep.rhs_prediction;
  return rep;
}

double green_boundary_flux(const GreenFunction& g, double delta) {
  const int m = g.ctx.m;
  if (!(delta > 0.0) || delta > g.ball_radius) throw InputError("green_boundary_flux: bad delta");
  return g.ctx.omega_at(2 * m - 1).value() * std::pow(delta, 2 * m - 1) *
         g.ladder(2 * m - 1, delta);
}

}  // namespace amt
