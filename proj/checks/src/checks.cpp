#include "amt/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "amt/bubble.hpp"
#include "amt/constants.hpp"
#include "amt/decay_fit.hpp"
#include "amt/errors.hpp"
#include "amt/extremal.hpp"
#include "amt/greens.hpp"
#include "amt/oracles.hpp"
#include "amt/radial_profile.hpp"
#include "amt/testfn.hpp"

namespace amt::checks {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Measurement within(const std::string& label, double value, double reference, double tol) {
  return {label, value, reference, tol, std::abs(value - reference) <= tol, ""};
}

Measurement relative(const std::string& label, double value, double reference, double tol) {
  const double err = std::abs(value - reference) / std::abs(reference);
  return {label, value, reference, tol, err <= tol, "relative"};
}

Measurement below(const std::string& label, double value, double bound) {
  return {label, value, bound, 0.0, value < bound, "upper bound"};
}

Measurement above(const std::string& label, double value, double bound) {
  return {label, value, bound, 0.0, value > bound, "lower bound"};
}

Measurement flag(const std::string& label, bool ok, const std::string& note = "") {
  return {label, ok ? 1.0 : 0.0, 1.0, 0.0, ok, note};
}

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), pattern, a);
  return buf;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

bool wants(const CheckOptions& o, int m) { return o.only_m <= 0 || o.only_m == m; }

std::vector<int> dims(const CheckOptions& o, std::initializer_list<int> all) {
  std::vector<int> out;
  for (int m : all) {
    if (wants(o, m)) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------

void exact_constants(const CheckOptions& o, CriterionResult& res) {
  const auto t0 = Clock::now();
  const int top = o.only_m > 0 ? o.only_m : 8;
  const int first = o.only_m > 0 ? o.only_m : 1;
  for (int m = first; m <= top; ++m) {
    const auto ctx = build_context(m);
    const std::string tag = "m=" + std::to_string(m) + " ";
    res.measurements.push_back(
        flag(tag + "gamma_m = beta*/(2m)", ctx.gamma_m == ctx.beta_star / ExactConstant::integer(2 * m)));
    res.measurements.push_back(flag(tag + "(2m/beta*) K_{m,(2m-1)/2} = (-1)^(m-1)/omega_{2m-1}",
                                    residue_identity_holds(ctx, 2 * m - 1)));
    const auto km = ctx.k_at(m);
    res.measurements.push_back(flag(tag + "omega_{2m-1} (2m/beta*) K_{m,m/2}^2 = 1",
                                    ctx.omega_at(2 * m - 1) *
                                            (ExactConstant::integer(2 * m) / ctx.beta_star) * km * km ==
                                        ExactConstant::integer(1)));
    res.measurements.push_back(flag(tag + "H_m definition = H_m alternative sum",
                                    h_constant(ctx, HMethod::Definition) == h_constant(ctx, HMethod::Remark)));
  }
  res.measurements.push_back(below("runtime [s]", seconds_since(t0), 1.0));
}

void bubble_self_energy(const CheckOptions& o, CriterionResult& res) {
  const auto t0 = Clock::now();
  if (wants(o, 1)) {
    const auto ctx = build_context(1);
    res.measurements.push_back(relative("I_1 vs -1/(4 pi)", compute_i_m(ctx), -1.0 / (4.0 * kPi), 1e-10));
  }
  for (int m : dims(o, {1, 2, 3, 4})) {
    const auto ctx = build_context(m);
    const double direct = compute_i_m(ctx);
    const double by_operator = self_energy_by_operator(build_ladder(ctx), INFINITY);
    res.measurements.push_back(within("m=" + std::to_string(m) + " I_m radial formula vs integral of eta0 (-Delta)^m eta0",
                                      direct, by_operator, 1e-8));
  }
  res.measurements.push_back(below("runtime [s]", seconds_since(t0), 10.0));
}

void bubble_pde(const CheckOptions& o, CriterionResult& res) {
  for (int m : dims(o, {1, 2, 3})) {
    const auto ctx = build_context(m);
    res.measurements.push_back(below("m=" + std::to_string(m) + " max relative Liouville residual",
                                     bubble_pde_residual(build_ladder(ctx)), 1e-8));
  }
}

void bubble_mass_check(const CheckOptions& o, CriterionResult& res) {
  if (wants(o, 1)) {
    res.measurements.push_back(within("m=1 mass(2)", bubble_mass(build_context(1), 2.0), 0.5, 1e-10));
  }
  const int n = o.quick ? 5 : 9;
  for (int m : dims(o, {1, 2, 3})) {
    const auto ctx = build_context(m);
    std::vector<std::pair<double, double>> samples;
    for (double R : logspace(10.0, 1000.0, n)) samples.emplace_back(R, bubble_mass_deficit(ctx, R));
    const auto fit = fit_decay(samples, DecayModel::PurePower, 0.0);
    res.measurements.push_back(within("m=" + std::to_string(m) + " decay exponent of 1 - mass(R), R in [10,1000]",
                                      fit.exponent, 2.0 * m, 0.1));
  }
}

void bubble_energy_check(const CheckOptions& o, CriterionResult& res) {
  const int n = o.quick ? 5 : 9;
  for (int m : dims(o, {1, 2})) {
    const auto ctx = with_i_m(build_context(m));
    const auto ladder = build_ladder(ctx);
    std::vector<std::pair<double, double>> samples;
    for (double R : logspace(16.0, 512.0, n)) {
      const auto rep = bubble_energy(ctx, ladder, R);
      samples.emplace_back(R, rep.energy - rep.energy_prediction);
    }
    const auto fit = fit_decay(samples, DecayModel::PowerLog);
    Measurement me = within("m=" + std::to_string(m) + " energy remainder exponent (power-log), R in [16,512]",
                            fit.exponent, 2.0, 0.3);
    if (fit.below_noise_floor) me.note = "below noise floor";
    res.measurements.push_back(me);
  }
}

double lambda1(const DimensionContext& ctx) { return series_first_eigenvalue(ctx, 1.0); }

void green_check(const CheckOptions& o, CriterionResult& res) {
  if (wants(o, 1)) {
    const auto g = solve_green(build_context(1), 0.0, 1.0);
    res.measurements.push_back(within("m=1 alpha=0 unit disk C", g.C, 0.0, 1e-10));
  }
  if (wants(o, 2)) {
    const auto g = solve_green(build_context(2), 0.0, 1.0);
    res.measurements.push_back(within("m=2 alpha=0 unit ball C", g.C, -1.0 / (16.0 * kPi * kPi), 1e-8));
  }
  for (int m : dims(o, {1, 2, 3})) {
    const auto ctx = build_context(m);
    for (double frac : {0.0, 0.3}) {
      const auto g = solve_green(ctx, frac * lambda1(ctx), 1.0);
      const std::string tag = "m=" + std::to_string(m) + " alpha=" + fmt("%.1f", frac) + " lambda_1 ";
      double worst = 0.0;
      for (double r : g.dirichlet_residuals) worst = std::max(worst, r);
      res.measurements.push_back(below(tag + "max Dirichlet residual", worst, 1e-8));
      if (frac == 0.0) {
        res.measurements.push_back(within(tag + "flux omega delta^(2m-1) d/dr Delta^(m-1) G at delta=1e-3",
                                          green_boundary_flux(g, 1e-3), m % 2 == 0 ? 1.0 : -1.0, 1e-6));
      }
    }
  }
}

void green_energy_check(const CheckOptions& o, CriterionResult& res) {
  if (wants(o, 1)) {
    const auto g = solve_green(build_context(1), 0.0, 1.0);
    double worst = 0.0;
    for (double d : {1e-3, 1e-2, 1e-1}) worst = std::max(worst, std::abs(green_energy_expansion(g, d).residual));
    res.measurements.push_back(below("m=1 alpha=0 energy expansion residual (exact case)", worst, 1e-10));
  }
  const int n = o.quick ? 4 : 7;
  const std::vector<std::pair<int, double>> cases{{1, 0.3}, {2, 0.0}, {2, 0.3}};
  for (const auto& [m, frac] : cases) {
    if (!wants(o, m)) continue;
    const auto ctx = build_context(m);
    const auto g = solve_green(ctx, frac * lambda1(ctx), 1.0);
    std::vector<std::pair<double, double>> samples;
    for (double d : logspace(1e-3, 1e-1, n)) samples.emplace_back(1.0 / d, green_energy_expansion(g, d).residual);
    const auto fit = fit_decay(samples, DecayModel::PowerLog);
    res.measurements.push_back(within("m=" + std::to_string(m) + " alpha=" + fmt("%.1f", frac) +
                                          " lambda_1 residual rate in delta (delta |log delta| model)",
                                      fit.exponent, 1.0, 0.3));
  }
}

void matching_check(const CheckOptions& o, CriterionResult& res) {
  const std::vector<double> radii = o.quick ? std::vector<double>{8, 32, 128, 256}
                                            : std::vector<double>{8, 16, 32, 64, 128, 256};
  for (int m : dims(o, {1, 2, 3, 4})) {
    const auto ctx = build_context(m);
    double worst = 0.0;
    std::vector<std::vector<std::pair<double, double>>> d_samples(m);
    for (double R : radii) {
      const auto poly = build_matching_polynomial(ctx, 1e-4, R, 0.0);
      for (double r : poly.matching_residuals) worst = std::max(worst, r);
      for (int j = 0; j < m; ++j) d_samples[j].emplace_back(R, poly.d_coeffs[j]);
    }
    const std::string tag = "m=" + std::to_string(m) + " ";
    res.measurements.push_back(below(tag + "max matching residual", worst, 1e-9));
    if (m >= 2) {
      for (int j = 0; j < m; ++j) {
        const auto fit = fit_decay(d_samples[j], DecayModel::PurePower);
        res.measurements.push_back(within(tag + "decay exponent of |d_" + std::to_string(j) + "(R)|",
                                          fit.exponent, 2.0, 0.3));
      }
    }
  }
}

void threshold_check(const CheckOptions& o, CriterionResult& res) {
  const auto t0 = Clock::now();
  for (int m : dims(o, {1, 2})) {
    const auto ctx = with_i_m(build_context(m));
    const auto g = solve_green(ctx, 0.0, 1.0);
    const auto tf = assemble_test_function(ctx, 0.0, g, 1e-4);
    const auto gap = evaluate_threshold_gap(tf);
    const std::string tag = "m=" + std::to_string(m) + " eps=1e-4 ";
    if (m == 1) {
      res.measurements.push_back(relative(tag + "threshold vs pi (1 + e)", gap.threshold,
                                          kPi * (1.0 + std::exp(1.0)), 1e-12));
    }
    res.measurements.push_back(above(tag + "F_beta*(u_eps) above threshold", gap.F_value, gap.threshold));
    const double ratio = gap.gap / gap.predicted_gap;
    Measurement track{tag + "gap / ((beta*/mu^2) ||G||^2)", ratio, 1.0, 0.0, ratio >= 0.5 && ratio <= 2.0,
                      "within a factor of 2"};
    res.measurements.push_back(track);
    std::vector<std::pair<double, double>> samples;
    for (double R : {5.0, 10.0, 20.0, 40.0, 80.0}) {
      const auto t = assemble_test_function(ctx, 0.0, g, std::exp(-R));
      const double pred = -ctx.log_coeff() * std::log(2.0 * t.eps) + g.C + ctx.require_i_m();
      samples.emplace_back(R, t.mu_eps * t.mu_eps - pred);
    }
    const auto fit = fit_decay(samples, DecayModel::PowerLog);
    res.measurements.push_back(within(tag + "mu_eps^2 remainder exponent in R_eps (power-log)", fit.exponent, 2.0, 0.5));
  }
  res.measurements.push_back(below("runtime [s]", seconds_since(t0), 60.0));
}

ProblemConfig disk_config(double frac, std::size_t n = 2048) {
  const auto ctx = build_context(1);
  return make_config(ctx, 1.0, 0.0, frac * ctx.beta(), n);
}

void solver_check(const CheckOptions& o, CriterionResult& res) {
  if (!wants(o, 1)) {
    res.skipped = true;
    return;
  }
  auto cfg = disk_config(0.5);
  cfg.beta_schedule = {0.5, 0.7, 0.9};
  const auto sols = continuation(cfg);
  double previous = 0.0;
  bool monotone = true;
  for (const auto& s : sols) {
    res.measurements.push_back(below("beta/beta*=" + fmt("%.1f", s.beta / cfg.ctx.beta()) + " EL residual",
                                     s.el_residual, 1e-8));
    monotone = monotone && s.F_value >= previous;
    previous = s.F_value;
  }
  res.measurements.push_back(flag("S non-decreasing over beta/beta* in {0.5,0.7,0.9}", monotone));
  const auto best = oracle::truncated_bubble_family_best(0.5 * cfg.ctx.beta(), o.quick ? 12 : 25,
                                                         o.quick ? 10 : 20);
  res.measurements.push_back(above("S(0.5 beta*) - truncated bubble family best + 1e-6",
                                    sols.front().F_value - best.F + 1e-6, 0.0));
  const double j01 = oracle::bessel_j0_first_zero();
  const auto eig = first_eigenpair(cfg.ctx, 1.0, cfg.grid);
  res.measurements.push_back(within("lambda_1 unit disk vs j01^2", eig.lambda, j01 * j01, 1e-4));
}

void blowup_check(const CheckOptions& o, CriterionResult& res) {
  if (!wants(o, 1)) {
    res.skipped = true;
    return;
  }
  auto cfg = disk_config(0.5);
  cfg.beta_schedule = {0.5, 0.7, 0.8, 0.9, 0.95, 0.97, 0.99};
  const auto sols = continuation(cfg);
  bool mu_up = true;
  for (std::size_t i = 1; i < sols.size(); ++i) mu_up = mu_up && sols[i].mu > sols[i - 1].mu;
  res.measurements.push_back(flag("mu increases along the continuation", mu_up));
  const auto d90 = blowup_diagnostics(sols[3], cfg.ctx);
  const auto d95 = blowup_diagnostics(sols[4], cfg.ctx);
  const auto d99 = blowup_diagnostics(sols[6], cfg.ctx);
  res.measurements.push_back(flag("profile error decreases over beta/beta* in {0.9,0.95,0.99}",
                                  d90.profile_sup_error > d95.profile_sup_error &&
                                      d95.profile_sup_error > d99.profile_sup_error,
                                  fmt("%.3e", d90.profile_sup_error) + " > " + fmt("%.3e", d95.profile_sup_error) +
                                      " > " + fmt("%.3e", d99.profile_sup_error)));
  const double rel = std::abs(d99.predicted_S - sols[6].F_value) / sols[6].F_value;
  Measurement m = below("|(|Omega| + 1/(lambda mu^2)) - F| / F at 0.99 beta*", rel, 0.15);
  if (d99.pre_asymptotic) m.note = "pre-asymptotic: mu = " + fmt("%.4f", sols[6].mu);
  res.measurements.push_back(m);
}

void pohozaev_check(const CheckOptions& o, CriterionResult& res) {
  if (wants(o, 1)) {
    auto cfg = disk_config(0.5);
    cfg.beta_schedule = {0.5, 0.7, 0.9};
    const auto sols = continuation(cfg);
    for (const auto& s : sols) {
      res.measurements.push_back(below("m=1 beta/beta*=" + fmt("%.1f", s.beta / cfg.ctx.beta()) +
                                           " Pohozaev residual",
                                       pohozaev_residual(s, cfg.ctx).residual, 1e-6));
    }
    for (double frac : {0.5, 0.9}) {
      auto coarse = disk_config(0.5, 64);
      coarse.beta_schedule = {0.5, frac};
      auto fine = disk_config(0.5, 128);
      fine.beta_schedule = {0.5, frac};
      const double rc = pohozaev_residual(continuation(coarse).back(), coarse.ctx).residual;
      const double rf = pohozaev_residual(continuation(fine).back(), fine.ctx).residual;
      res.measurements.push_back(above("m=1 beta/beta*=" + fmt("%.1f", frac) +
                                           " residual reduction N=64 -> 128",
                                       rc / rf, 4.0));
    }
  }
  for (int m : dims(o, {1, 2, 3})) {
    const auto ctx = build_context(m);
    res.measurements.push_back(below("m=" + std::to_string(m) + " manufactured pair residual",
                                     pohozaev_manufactured(ctx, RadialGrid::graded(1.0, 2048)).residual, 1e-6));
  }
}

void divergence_check(const CheckOptions& o, CriterionResult& res) {
  if (!wants(o, 1)) {
    res.skipped = true;
    return;
  }
  const auto ctx = build_context(1);
  const auto grid = RadialGrid::graded(1.0, 2048);
  const double lam = first_eigenpair(ctx, 1.0, grid).lambda;
  std::vector<double> ts;
  for (int k = 0; k <= 40; ++k) ts.push_back(0.25 * k);
  const auto samples = supercritical_divergence_demo(ctx, 1.0, 1.1 * lam, ctx.beta(), ts, grid);
  double worst = -INFINITY;
  double best = 0.0;
  bool increasing = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    worst = std::max(worst, samples[i].norm_sq);
    best = std::max(best, samples[i].F_value);
    if (i > 0) increasing = increasing && samples[i].log_F > samples[i - 1].log_F;
  }
  const double volume = ball_volume(ctx, 1.0);
  res.measurements.push_back(below("max ||t phi_1||_alpha^2 over t, alpha = 1.1 lambda_1", worst, 1e-9));
  res.measurements.push_back(above("max F(t phi_1) / |Omega|", best / volume, 10.0));
  res.measurements.push_back(flag("F(t phi_1) strictly increasing in t", increasing));
}

void parts_and_cli_check(const CheckOptions& o, CriterionResult& res) {
  for (int m : dims(o, {1, 2, 3})) {
    const auto grid = RadialGrid::graded(1.0, 2048);
    double worst = 0.0;
    for (const auto& pair : oracle::integration_by_parts_pairs(m)) {
      const auto u = RadialProfile::sample(grid, m, pair.u);
      const auto v = RadialProfile::sample(grid, m, pair.v);
      const auto um = apply_radial_polyharmonic(u, m);
      const auto vm = apply_radial_polyharmonic(v, m);
      const auto v2m = apply_radial_polyharmonic(v, 2 * m);
      std::vector<double> lhs(grid.size()), rhs(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        lhs[i] = um[i] * vm[i];
        rhs[i] = (m % 2 == 0 ? 1.0 : -1.0) * u[i] * v2m[i];
      }
      const double a = u.radial_integral(lhs);
      const double b = u.radial_integral(rhs);
      worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    res.measurements.push_back(below("m=" + std::to_string(m) + " integration by parts on polynomial pairs",
                                     worst, 1e-8));
  }
  if (o.cli_path.empty()) {
    res.measurements.push_back(flag("CLI determinism", false, "no amtlab executable supplied"));
    return;
  }
  for (auto& m : cli_determinism(o.cli_path)) res.measurements.push_back(std::move(m));
}

struct Entry {
  const char* title;
  void (*run)(const CheckOptions&, CriterionResult&);
};

const Entry kEntries[kCriterionCount] = {
    {"exact constants in rational times pi^k arithmetic", exact_constants},
    {"bubble self-energy I_m by two routes", bubble_self_energy},
    {"bubble Liouville equation from the ladder", bubble_pde},
    {"bubble mass and its decay", bubble_mass_check},
    {"bubble energy expansion rate", bubble_energy_check},
    {"Green function constants, boundary data and flux", green_check},
    {"Green energy expansion: exact case and rate", green_energy_check},
    {"matching polynomial contact and coefficient decay", matching_check},
    {"test function above the concentration threshold", threshold_check},
    {"subcritical solver soundness and lambda_1", solver_check},
    {"blow-up trends along the continuation", blowup_check},
    {"Pohozaev identity residuals", pohozaev_check},
    {"divergence for alpha above lambda_1", divergence_check},
    {"integration by parts self-test and CLI determinism", parts_and_cli_check},
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

std::string CriterionResult::summary_line() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s %2d  %s (%.2f s)", skipped ? "SKIP" : (passed ? "PASS" : "FAIL"), id,
                title.c_str(), seconds);
  return buf;
}

Json CriterionResult::to_json() const {
  Json j;
  j["id"] = id;
  j["title"] = title;
  j["status"] = skipped ? "skipped" : (passed ? "pass" : "fail");
  Json items = Json::array();
  for (const auto& m : measurements) {
    Json e = check_entry(m.label, m.note, m.value, m.reference, m.tolerance, m.passed);
    items.push_back(e);
  }
  j["measurements"] = items;
  return j;
}

CriterionResult run_criterion(int id, const CheckOptions& opts) {
  if (id < 1 || id > kCriterionCount) throw InputError("run_criterion: id must be 1..14");
  CriterionResult res;
  res.id = id;
  res.title = kEntries[id - 1].title;
  const auto t0 = Clock::now();
  try {
    kEntries[id - 1].run(opts, res);
  } catch (const std::exception& e) {
    res.measurements.push_back(flag("completed without error", false, e.what()));
  }
  res.seconds = seconds_since(t0);
  if (res.measurements.empty()) res.skipped = true;
  res.passed = !res.skipped;
  for (const auto& m : res.measurements) res.passed = res.passed && m.passed;
  return res;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const CheckOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, opts));
  return out;
}

std::vector<Measurement> cli_determinism(const std::string& cli_path) {
  namespace fs = std::filesystem;
  // The runs below change directory, so resolve the tool path first.
  const std::string cli = fs::absolute(cli_path).string();
  const fs::path dir = fs::temp_directory_path() / ("amt_determinism_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"constants", "constants --m 2"},
      {"bubble", "bubble --m 2 --R 64"},
      {"bubble-csv", "bubble --m 1 --format csv"},
      {"green", "green --m 1 --alpha 1.5"},
      {"testfn", "testfn --m 1 --eps 1e-4"},
      {"extremal", "extremal --m 1 --beta-frac 0.7 --grid-n 512"},
      {"demo-divergence", "demo-divergence --m 1"},
  };
  std::vector<Measurement> out;
  for (const auto& [name, args] : commands) {
    std::string outputs[2];
    bool ran = true;
    for (int k = 0; k < 2; ++k) {
      // Same relative --out path in both runs, since it is part of the report.
      const fs::path run_dir = dir / std::to_string(k);
      fs::create_directories(run_dir);
      const std::string cmd = "cd \"" + run_dir.string() + "\" && \"" + cli + "\" " + args + " --out " +
                              name + ".out 2>/dev/null";
      ran = ran && std::system(cmd.c_str()) == 0;
      outputs[k] = read_file(run_dir / (name + ".out"));
    }
    const bool same = ran && !outputs[0].empty() && outputs[0] == outputs[1];
    out.push_back(flag("CLI determinism: " + args, same, ran ? "" : "command failed"));
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return out;
}

}  // namespace amt::checks
