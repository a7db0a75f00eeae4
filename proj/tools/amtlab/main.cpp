// amtlab: command-line front end to the amt library.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amt/bubble.hpp"
#include "amt/checks.hpp"
#include "amt/constants.hpp"
#include "amt/errors.hpp"
#include "amt/extremal.hpp"
#include "amt/greens.hpp"
#include "amt/report.hpp"
#include "amt/testfn.hpp"

#ifndef AMT_VERSION
#define AMT_VERSION "0.0.0"
#endif

namespace {

using amt::Json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Flags {
  int m = 1;
  std::optional<double> alpha;
  double beta_frac = 0.9;
  double eps = 1e-4;
  double R = 64.0;
  double delta = 1e-3;
  double ball_radius = 1.0;
  std::size_t grid_n = 2048;
  double tol = 1e-10;
  double green_tol = 1e-13;
  std::string out = "-";
  std::string format = "json";
  bool quick = false;
};

// Collected checks of one command; any failure turns the exit code to 1.
struct CheckList {
  Json items = Json::array();
  bool all_passed = true;

  void upper(const std::string& name, const std::string& label, double value, double bound) {
    add(name, label, value, bound, bound, value < bound);
  }
  void add(const std::string& name, const std::string& label, double value, double reference,
           double tolerance, bool passed) {
    items.push_back(amt::check_entry(name, label, value, reference, tolerance, passed));
    all_passed = all_passed && passed;
  }
};

std::vector<double> log_radii(double lo, double hi, int n) {
  std::vector<double> out{0.0};
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

Json base_parameters(const Flags& f) {
  return Json{{"m", f.m}, {"format", f.format}, {"out", f.out}};
}

struct Output {
  Json body;
  std::optional<amt::CsvTable> table;
  Json parameters;
  bool passed = true;
};

Output run_constants(const Flags& f) {
  const auto ctx = amt::with_i_m(amt::build_context(f.m));
  Output o;
  o.body = amt::to_json(ctx);
  CheckList checks;
  checks.add("H_m two formulas agree", "exact", 1.0, 1.0, 0.0,
             amt::h_constant(ctx, amt::HMethod::Definition) == amt::h_constant(ctx, amt::HMethod::Remark));
  o.body["checks"] = checks.items;
  o.passed = checks.all_passed;
  amt::CsvTable t;
  t.columns = {"l", "omega_l"};
  for (int l = 1; l <= 2 * f.m; ++l) t.add_row({static_cast<double>(l), ctx.omega_at(l).value()});
  o.table = t;
  o.parameters = base_parameters(f);
  return o;
}

Output run_bubble(const Flags& f) {
  const auto ctx = amt::with_i_m(amt::build_context(f.m));
  const auto ladder = amt::build_ladder(ctx);
  auto rep = amt::bubble_energy(ctx, ladder, f.R);
  rep.mass = amt::bubble_mass(ctx, f.R);
  rep.mass_deficit = amt::bubble_mass_deficit(ctx, f.R);
  rep.pde_max_residual = amt::bubble_pde_residual(ladder);
  double asym = 0.0;
  for (int j = 1; j < 2 * f.m; ++j) asym = std::max(asym, std::abs(amt::asymptotic_remainder(ladder, j, f.R)));
  rep.asymptotic_max_residual = asym;
  Output o;
  o.body = amt::to_json(rep);
  o.body["half_step_residual"] = amt::bubble_half_step_residual(ladder);
  CheckList checks;
  checks.upper("Liouville residual", "relative, fixed sample radii", rep.pde_max_residual, 1e-8);
  checks.upper("half-step identity residual", "relative", amt::bubble_half_step_residual(ladder), 1e-8);
  checks.upper("mass + deficit - 1", "absolute", std::abs(rep.mass + rep.mass_deficit - 1.0), 1e-10);
  o.body["checks"] = checks.items;
  o.passed = checks.all_passed;
  o.table = amt::bubble_table(ladder, log_radii(1e-2, f.R, 60));
  o.parameters = base_parameters(f);
  o.parameters["R"] = f.R;
  return o;
}

Output run_green(const Flags& f) {
  const auto ctx = amt::build_context(f.m);
  const double alpha = f.alpha.value_or(0.0);
  amt::GreenOptions opts;
  const auto g = amt::solve_green(ctx, alpha, f.ball_radius, f.green_tol, opts);
  const double delta = f.delta * f.ball_radius;
  Output o;
  o.body = amt::to_json(g);
  o.body["energy_expansion"] = amt::to_json(amt::green_energy_expansion(g, delta));
  const double flux = amt::green_boundary_flux(g, delta);
  o.body["flux"] = flux;
  CheckList checks;
  double worst = 0.0;
  for (double r : g.dirichlet_residuals) worst = std::max(worst, r);
  checks.upper("Dirichlet residual", "max over orders 0..m-1", worst, 1e-8);
  o.body["checks"] = checks.items;
  o.passed = checks.all_passed;
  o.table = amt::green_table(g, 200);
  o.parameters = base_parameters(f);
  o.parameters["alpha"] = alpha;
  o.parameters["ball_radius"] = f.ball_radius;
  o.parameters["delta"] = f.delta;
  o.parameters["tol"] = f.green_tol;
  o.parameters["theta"] = opts.theta;
  o.parameters["max_degree"] = opts.max_degree;
  return o;
}

Output run_testfn(const Flags& f) {
  const auto ctx = amt::with_i_m(amt::build_context(f.m));
  const double alpha = f.alpha.value_or(0.0);
  const auto g = amt::solve_green(ctx, alpha, f.ball_radius);
  const auto tf = amt::assemble_test_function(ctx, alpha, g, f.eps);
  const auto gap = amt::evaluate_threshold_gap(tf);
  Output o;
  o.body = amt::to_json(tf, gap);
  CheckList checks;
  double worst = 0.0;
  for (double r : tf.poly.matching_residuals) worst = std::max(worst, r);
  checks.upper("matching residual", "relative", worst, 1e-9);
  worst = 0.0;
  for (double r : tf.continuity_residuals) worst = std::max(worst, r);
  checks.upper("continuity across the interface", "relative", worst, 1e-9);
  checks.upper("| ||u||_alpha - 1 |", "absolute", std::abs(tf.alpha_norm() - 1.0), 1e-9);
  checks.add("gap positive", "F - threshold > 0", gap.gap, 0.0, 0.0, gap.gap > 0.0);
  o.body["checks"] = checks.items;
  o.passed = checks.all_passed;
  o.table = amt::testfn_table(tf, 300);
  o.parameters = base_parameters(f);
  o.parameters["alpha"] = alpha;
  o.parameters["eps"] = f.eps;
  o.parameters["ball_radius"] = f.ball_radius;
  return o;
}

std::vector<double> schedule_to(double target) {
  std::vector<double> s;
  for (double b = 0.5; b < target - 1e-12; b += 0.1) s.push_back(b);
  s.push_back(target);
  return s;
}

Output run_extremal(const Flags& f) {
  const auto ctx = amt::build_context(f.m);
  if (!(f.beta_frac > 0.0 && f.beta_frac < 1.0)) throw amt::InputError("--beta-frac must lie in (0, 1)");
  const double alpha = f.alpha.value_or(0.0);
  auto cfg = amt::make_config(ctx, f.ball_radius, alpha, f.beta_frac * ctx.beta(), f.grid_n);
  cfg.residual_tol = f.tol;
  cfg.beta_schedule = schedule_to(f.beta_frac);
  const auto sols = amt::continuation(cfg);
  const auto& sol = sols.back();
  const auto diag = amt::blowup_diagnostics(sol, ctx);
  const auto poh = amt::pohozaev_residual(sol, ctx);
  Output o;
  o.body = amt::to_json(sol, diag, poh);
  Json path = Json::array();
  for (const auto& s : sols) path.push_back(Json{{"beta_frac", s.beta / ctx.beta()}, {"S_value", s.F_value}, {"mu", s.mu}});
  o.body["continuation"] = path;
  CheckList checks;
  checks.upper("Euler-Lagrange residual", "relative sup norm", sol.el_residual, 1e-8);
  checks.upper("| ||u||_alpha - 1 |", "absolute", std::abs(sol.alpha_norm - 1.0), 1e-9);
  checks.upper("Pohozaev residual", "relative", poh.residual, 1e-6);
  checks.upper("|scale identity - 1|", "absolute", std::abs(diag.scale_identity - 1.0), 1e-12);
  o.body["checks"] = checks.items;
  o.passed = checks.all_passed;
  o.table = amt::extremal_table(sol, diag, ctx);
  o.parameters = base_parameters(f);
  o.parameters["alpha"] = alpha;
  o.parameters["beta_frac"] = f.beta_frac;
  o.parameters["ball_radius"] = f.ball_radius;
  o.parameters["grid_n"] = f.grid_n;
  o.parameters["tol"] = f.tol;
  o.parameters["damping"] = cfg.damping;
  o.parameters["max_iters"] = cfg.max_iters;
  o.parameters["beta_schedule"] = cfg.beta_schedule;
  return o;
}

Output run_divergence(const Flags& f) {
  const auto ctx = amt::build_context(f.m);
  const auto grid = amt::RadialGrid::graded(f.ball_radius, f.grid_n);
  const double lam = amt::first_eigenpair(ctx, f.ball_radius, grid).lambda;
  const double alpha = f.alpha.value_or(1.1 * lam);
  const double beta_frac = f.beta_frac;
  std::vector<double> ts;
  for (int k = 0; k <= 40; ++k) ts.push_back(0.25 * k);
  const auto samples = amt::supercritical_divergence_demo(ctx, f.ball_radius, alpha, beta_frac * ctx.beta(), ts, grid);
  Output o;
  Json rows = Json::array();
  amt::CsvTable t;
  t.columns = {"t", "norm_sq", "F", "log_F"};
  CheckList checks;
  double worst = -INFINITY;
  bool increasing = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rows.push_back(amt::to_json(samples[i]));
    t.add_row({samples[i].t, samples[i].norm_sq, samples[i].F_value, samples[i].log_F});
    worst = std::max(worst, samples[i].norm_sq);
    if (i > 0 && beta_frac > 0.0) increasing = increasing && samples[i].log_F > samples[i - 1].log_F;
  }
  o.body = Json{{"m", f.m}, {"lambda_1", lam}, {"alpha", alpha}, {"beta", beta_frac * ctx.beta()},
                {"volume", amt::ball_volume(ctx, f.ball_radius)}, {"samples", rows}};
  checks.upper("max ||t phi_1||_alpha^2", "stays in the constraint set", worst, 1e-9);
  checks.add("F increasing in t", "strict", increasing ? 1.0 : 0.0, 1.0, 0.0, increasing);
  o.body["checks"] = checks.items;
  o.passed = checks.all_passed;
  o.table = t;
  o.parameters = base_parameters(f);
  o.parameters["alpha"] = alpha;
  o.parameters["beta_frac"] = beta_frac;
  o.parameters["ball_radius"] = f.ball_radius;
  o.parameters["grid_n"] = f.grid_n;
  o.parameters["t_list"] = ts;
  return o;
}

std::string self_path(const char* argv0) {
  std::error_code ec;
  const auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
  return ec ? std::string(argv0) : p.string();
}

Output run_verify_all(const Flags& f, const std::string& exe) {
  amt::checks::CheckOptions opts;
  opts.quick = f.quick;
  opts.only_m = f.m;
  opts.cli_path = exe;
  std::vector<int> ids;
  for (int i = 1; i <= amt::checks::kCriterionCount; ++i) ids.push_back(i);
  const auto results = amt::checks::run_criteria(ids, opts);
  Output o;
  Json items = Json::array();
  amt::CsvTable t;
  t.columns = {"criterion", "passed", "skipped"};
  for (const auto& r : results) {
    std::cerr << r.summary_line() << "\n";
    Json j = r.to_json();
    j.erase("seconds");
    items.push_back(j);
    t.add_row({static_cast<double>(r.id), r.passed ? 1.0 : 0.0, r.skipped ? 1.0 : 0.0});
    o.passed = o.passed && (r.passed || r.skipped);
  }
  o.body = Json{{"criteria", items}};
  o.table = t;
  o.parameters = base_parameters(f);
  o.parameters["quick"] = f.quick;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amtlab: numerical laboratory for the Adams-Moser-Trudinger extremal problem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", AMT_VERSION);
  Flags f;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--m", f.m, "half the space dimension")->check(CLI::Range(1, 12))->capture_default_str();
    sub->add_option("--out", f.out, "output path, - for standard output")->capture_default_str();
    sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };
  const auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", f.alpha, "coefficient of the L2 term")->check(CLI::NonNegativeNumber);
  };
  const auto add_ball = [&](CLI::App* sub) {
    sub->add_option("--ball-radius", f.ball_radius, "radius of the ball")->check(CLI::PositiveNumber)->capture_default_str();
  };
  const auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-n", f.grid_n, "radial grid nodes")->check(CLI::Range(64, 1 << 20))->capture_default_str();
  };

  auto* constants = app.add_subcommand("constants", "exact constants and I_m");
  add_common(constants);
  auto* bubble = app.add_subcommand("bubble", "bubble ladder, mass and energy");
  add_common(bubble);
  bubble->add_option("--R", f.R, "radius for mass and energy")->check(CLI::Range(4.0, 1e6))->capture_default_str();
  auto* green = app.add_subcommand("green", "Green function of the ball");
  add_common(green);
  add_alpha(green);
  add_ball(green);
  green->add_option("--delta", f.delta, "inner radius of the energy check, relative to the ball")
      ->check(CLI::Range(1e-8, 0.999))->capture_default_str();
  green->add_option("--tol", f.green_tol, "corrector fixed-point tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  auto* testfn = app.add_subcommand("testfn", "glued test function and threshold gap");
  add_common(testfn);
  add_alpha(testfn);
  add_ball(testfn);
  testfn->add_option("--eps", f.eps, "concentration parameter")->check(CLI::Range(1e-300, 0.1))->capture_default_str();
  auto* extremal = app.add_subcommand("extremal", "subcritical maximizer with diagnostics");
  add_common(extremal);
  add_alpha(extremal);
  add_ball(extremal);
  add_grid(extremal);
  extremal->add_option("--beta-frac", f.beta_frac, "beta / beta*")->capture_default_str();
  extremal->add_option("--tol", f.tol, "Euler-Lagrange residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  auto* divergence = app.add_subcommand("demo-divergence", "F_beta(t phi_1) for alpha >= lambda_1");
  add_common(divergence);
  add_alpha(divergence);
  add_ball(divergence);
  add_grid(divergence);
  divergence->add_option("--beta-frac", f.beta_frac, "beta / beta* (default 1 for this command)");
  auto* verify = app.add_subcommand("verify-all", "run the acceptance criteria");
  add_common(verify);
  verify->add_flag("--quick", f.quick, "fewer samples per fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (divergence->parsed() && divergence->count("--beta-frac") == 0) f.beta_frac = 1.0;
  if (verify->parsed() && verify->count("--m") == 0) f.m = 0;

  const auto started = std::chrono::steady_clock::now();
  Output result;
  std::string name;
  try {
    if (constants->parsed()) {
      name = "constants";
      result = run_constants(f);
    } else if (bubble->parsed()) {
      name = "bubble";
      result = run_bubble(f);
    } else if (green->parsed()) {
      name = "green";
      result = run_green(f);
    } else if (testfn->parsed()) {
      name = "testfn";
      result = run_testfn(f);
    } else if (extremal->parsed()) {
      name = "extremal";
      result = run_extremal(f);
    } else if (divergence->parsed()) {
      name = "demo-divergence";
      result = run_divergence(f);
    } else {
      name = "verify-all";
      result = run_verify_all(f, self_path(argv[0]));
    }
  } catch (const amt::InputError& e) {
    std::cerr << "amtlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "amtlab: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  amt::RunManifest manifest;
  manifest.command = name;
  manifest.parameters = result.parameters;
  manifest.tool_version = AMT_VERSION;
  manifest.outputs = {f.out};
  try {
    const auto format = amt::parse_format(f.format);
    const std::string text =
        amt::render_report(result.body, result.table ? &*result.table : nullptr, format, manifest);
    amt::write_output(f.out, text);
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (f.out != "-") {
      manifest.outputs.push_back(amt::manifest_path(f.out));
      amt::write_output(amt::manifest_path(f.out), manifest.to_json(true).dump(2) + "\n");
    }
  } catch (const amt::InputError& e) {
    std::cerr << "amtlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "amtlab: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return result.passed ? kExitOk : kExitCheckFailed;
}
