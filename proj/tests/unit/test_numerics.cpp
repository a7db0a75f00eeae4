#include <cmath>
#include <numbers>

#include <doctest.h>

#include "amt/decay_fit.hpp"
#include "amt/errors.hpp"
#include "amt/exact_constant.hpp"
#include "amt/linalg.hpp"
#include "amt/quadrature.hpp"
#include "amt/radial_grid.hpp"
#include "amt/radial_profile.hpp"
#include "amt/radial_series.hpp"

using namespace amt;
using doctest::Approx;

TEST_CASE("adaptive_integrate on closed-form integrals") {
  CHECK(adaptive_integrate([](double r) { return r; }, 0.0, 1.0, 1e-10) == Approx(0.5).epsilon(1e-12));
  const double v = adaptive_integrate([](double t) { return std::log1p(t) / ((1 + t) * (1 + t)); }, 0.0,
                                      INFINITY, 1e-10);
  CHECK(v == Approx(1.0).epsilon(1e-10));
  CHECK(adaptive_integrate([](double r) { return std::exp(-r); }, 0.0, INFINITY, 1e-10) ==
        Approx(1.0).epsilon(1e-10));
}

TEST_CASE("adaptive_integrate rejects bad input") {
  CHECK_THROWS_AS(adaptive_integrate([](double) { return NAN; }, 0.0, 1.0), InputError);
  CHECK_THROWS_AS(adaptive_integrate([](double r) { return r; }, 1.0, 0.0), InputError);
}

TEST_CASE("improper_integrate with algebraic tails") {
  CHECK(improper_integrate([](double r) { return 1.0 / (r * r); }, 1.0, 1e-10, 2.0) ==
        Approx(1.0).epsilon(1e-9));
  // log r / r^4 on [2, inf): by parts, log 2 / 24 + 1/72.
  const double by_parts = (1.0 + 3.0 * std::log(2.0)) / 72.0;
  CHECK(improper_integrate([](double r) { return std::log(r) / std::pow(r, 4); }, 2.0, 1e-10, 4.0) ==
        Approx(by_parts).epsilon(1e-9));
  // t = r^2/4 turns this into (1/8) int log(1+t)/(1+t)^2 dt = 1/8.
  const auto f = [](double r) { return std::log1p(r * r / 4) * r / std::pow(4 + r * r, 2); };
  CHECK(improper_integrate(f, 0.0, 1e-10, 4.0) == Approx(0.125).epsilon(1e-9));
}

TEST_CASE("solve_linear_system") {
  const auto x = solve_linear_system({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1, 2, 3});
  CHECK(x[0] == 1.0);
  CHECK(x[2] == 3.0);
  const auto y = solve_linear_system({{2, 0}, {0, 4}}, {2, 8});
  CHECK(y[0] == Approx(1.0));
  CHECK(y[1] == Approx(2.0));
  DenseMatrix h(3, std::vector<double>(3));
  std::vector<double> b(3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      h[i][j] = 1.0 / (i + j + 1);
      b[i] += h[i][j];
    }
  for (double v : solve_linear_system(h, b)) CHECK(v == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(solve_linear_system({{1, 2}, {2, 4}}, {1, 2}), SingularMatrixError);
}

TEST_CASE("fit_decay recovers exponents") {
  std::vector<std::pair<double, double>> pure, logged;
  for (double R : {10.0, 100.0, 1000.0}) {
    pure.push_back({R, std::pow(R, -2.0)});
    logged.push_back({R, 5 * std::pow(R, -4.0) * std::log(R)});
  }
  CHECK(fit_decay(pure, DecayModel::PurePower).exponent == Approx(2.0).epsilon(1e-6));
  CHECK(fit_decay(logged, DecayModel::PowerLog).exponent == Approx(4.0).epsilon(1e-6));
  std::vector<std::pair<double, double>> mass;
  for (double R : {10.0, 30.0, 100.0, 300.0}) mass.push_back({R, 1.0 / (1.0 + R * R / 4)});
  CHECK(fit_decay(mass, DecayModel::PurePower).exponent == Approx(2.0).epsilon(0.01));
  const auto floor = fit_decay({{10, 0.0}, {100, 0.0}, {1000, 0.0}}, DecayModel::PurePower);
  CHECK(floor.below_noise_floor);
  CHECK_THROWS_AS(fit_decay({{10, 1.0}, {20, 0.5}}, DecayModel::PurePower), InputError);
}

TEST_CASE("ExactConstant arithmetic") {
  const ExactConstant a(Rational(1, 2), 1);
  const ExactConstant b(Rational(3), -1);
  CHECK((a * b) == ExactConstant(Rational(3, 2), 0));
  CHECK((a / b).pi_power() == 2);
  CHECK(a.pow(2) == ExactConstant(Rational(1, 4), 2));
  CHECK(ExactConstant(Rational(-1, 16), -2).to_string() == "-1/16 * pi^-2");
  CHECK_THROWS_AS(a + b, InputError);
  CHECK(a.value() == Approx(std::numbers::pi / 2));
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(-1) == 1);
}

TEST_CASE("radial grid and weights") {
  const auto g = RadialGrid::graded(2.0, 257);
  CHECK(g.contains_origin());
  CHECK(g.r_outer() == 2.0);
  for (int p : {1, 3, 5}) {
    const auto w = radial_weights(g, p);
    double s = 0;
    for (double x : w) s += x;
    CHECK(s == Approx(std::pow(2.0, p + 1) / (p + 1)).epsilon(1e-13));
  }
  const auto rules = cell_rules(g, 1);
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = g[i] * g[i];
  const auto cum = cumulative_integral(rules, f);
  CHECK(cum.front() == 0.0);
  CHECK(cum.back() == Approx(4.0).epsilon(1e-13));
  CHECK(cum[128] == Approx(std::pow(g[128], 4) / 4).epsilon(1e-12));
}

TEST_CASE("apply_radial_polyharmonic on simple functions") {
  for (int m : {1, 2, 3}) {
    const auto g = RadialGrid::graded(1.0, 401);
    const auto r2 = RadialProfile::sample(g, m, [](double r) { return r * r; });
    const auto lap = apply_radial_polyharmonic(r2, 2);
    for (std::size_t i = 0; i < g.size(); i += 50) CHECK(lap[i] == Approx(4.0 * m).epsilon(1e-8));
    const auto c = RadialProfile::sample(g, m, [](double) { return 3.0; });
    for (int j = 1; j <= 2 * m; ++j) {
      const auto d = apply_radial_polyharmonic(c, j);
      for (std::size_t i = 0; i < g.size(); i += 50) CHECK(std::abs(d[i]) < (j <= 2 ? 1e-9 : 1e-5));
    }
    const auto ga = RadialGrid::graded_annulus(0.5, 2.0, 401);
    const auto lg = RadialProfile::sample(ga, m, [](double r) { return std::log(r); });
    const auto dl = apply_radial_polyharmonic(lg, 2);
    for (std::size_t i = 0; i < ga.size(); i += 50)
      CHECK(dl[i] == Approx((2.0 * m - 2) / (ga[i] * ga[i])).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("RadialSeries calculus") {
  const auto s2 = RadialSeries::monomial(2, 2);
  const auto lap = s2.laplacian();
  CHECK(lap.poly_coeff(1) == Approx(24.0));
  CHECK(lap.laplacian().poly_coeff(0) == Approx(192.0));
  const auto back = lap.inverse_laplacian();
  CHECK(back.poly_coeff(2) == Approx(1.0));
  const auto lg = RadialSeries::log_r(2);
  CHECK(lg.laplacian()(1.5) == Approx(2.0 / (1.5 * 1.5)));
  const auto d = s2.d_dr();
  CHECK(d(0.7) == Approx(4 * std::pow(0.7, 3)));
  CHECK(s2.radial_derivative(2, 0.7) == Approx(12 * 0.49));
  CHECK(s2.ladder(1)(0.7) == Approx(d(0.7)));
}
