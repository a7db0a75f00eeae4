#include "amt/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "amt/errors.hpp"

namespace amt {

namespace {

Json num(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

Json num_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw InputError("unknown format '" + name + "' (expected json or csv)");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw InputError("CsvTable: row width does not match header");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) out += ',';
    out += columns[j];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_number(row[j]);
    }
    out += '\n';
  }
  return out;
}

Json RunManifest::to_json(bool with_timing) const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["tool_version"] = tool_version;
  j["schema_version"] = kReportSchemaVersion;
  if (with_timing) j["duration_seconds"] = duration_seconds;
  j["outputs"] = outputs;
  return j;
}

Json check_entry(const std::string& name, const std::string& label, double value,
                 double reference, double tolerance, bool passed) {
  return Json{{"name", name},           {"label", label},         {"value", num(value)},
              {"reference", num(reference)}, {"tolerance", num(tolerance)}, {"passed", passed}};
}

Json to_json(const ExactConstant& c) {
  return Json{{"exact", c.to_string()},
              {"numerator", c.numerator_string()},
              {"denominator", c.denominator_string()},
              {"pi_power", c.pi_power()},
              {"float", num(c.value())}};
}

Json to_json(const DimensionContext& ctx) {
  Json j;
  j["m"] = ctx.m;
  j["dimension"] = ctx.dim;
  j["beta_star"] = to_json(ctx.beta_star);
  j["gamma_m"] = to_json(ctx.gamma_m);
  Json omega = Json::object();
  for (int l = 1; l <= 2 * ctx.m; ++l) omega[std::to_string(l)] = to_json(ctx.omega_at(l));
  j["omega"] = omega;
  Json kt = Json::object();
  for (int l = 1; l < ctx.m; ++l) kt[std::to_string(l)] = to_json(ctx.k_tilde_at(l));
  j["k_tilde"] = kt;
  Json kh = Json::object();
  for (int jj = 1; jj < 2 * ctx.m; ++jj) {
    const std::string key = jj % 2 == 0 ? std::to_string(jj / 2) : std::to_string(jj) + "/2";
    kh[key] = to_json(ctx.k_at(jj));
  }
  j["k_half"] = kh;
  j["h_m"] = to_json(ctx.h_m);
  if (ctx.i_m) j["i_m"] = num(*ctx.i_m);
  return j;
}

Json to_json(const BubbleReport& rep) {
  return Json{{"R", num(rep.R)},
              {"mass", num(rep.mass)},
              {"mass_deficit", num(rep.mass_deficit)},
              {"energy", num(rep.energy)},
              {"energy_prediction", num(rep.energy_prediction)},
              {"energy_residual", num(rep.energy - rep.energy_prediction)},
              {"pde_max_residual", num(rep.pde_max_residual)},
              {"asymptotic_max_residual", num(rep.asymptotic_max_residual)}};
}

Json to_json(const GreenFunction& g) {
  return Json{{"m", g.ctx.m},
              {"alpha", num(g.alpha)},
              {"ball_radius", num(g.ball_radius)},
              {"C", num(g.C)},
              {"l2_norm_sq", num(g.l2_norm_sq)},
              {"dirichlet_residuals", num_array(g.dirichlet_residuals)},
              {"iterations", g.iterations},
              {"last_change", num(g.last_change)}};
}

Json to_json(const GreenEnergyReport& rep) {
  return Json{{"delta", num(rep.delta)},
              {"lhs", num(rep.lhs)},
              {"rhs_prediction", num(rep.rhs_prediction)},
              {"residual", num(rep.residual)}};
}

Json to_json(const MatchingPolynomial& poly) {
  return Json{{"eps", num(poly.eps)},
              {"R", num(poly.R)},
              {"mu", num(poly.mu)},
              {"d_coeffs", num_array(poly.d_coeffs)},
              {"c_coeffs", num_array(poly.c_coeffs)},
              {"matching_residuals", num_array(poly.matching_residuals)}};
}

Json to_json(const TestFunction& tf, const ThresholdGap& gap) {
  return Json{{"m", tf.ctx.m},
              {"alpha", num(tf.alpha)},
              {"eps", num(tf.eps)},
              {"R_eps", num(tf.R_eps)},
              {"mu_eps_sq", num(tf.mu_eps * tf.mu_eps)},
              {"mu_eps_sq_prediction", num(gap.mu_sq_prediction)},
              {"F_value", num(gap.F_value)},
              {"threshold", num(gap.threshold)},
              {"gap", num(gap.gap)},
              {"predicted_gap", num(gap.predicted_gap)},
              {"inner_energy", num(tf.inner_energy)},
              {"outer_energy", num(tf.outer_energy)},
              {"continuity_residuals", num_array(tf.continuity_residuals)},
              {"matching", to_json(tf.poly)}};
}

Json to_json(const ExtremalSolution& sol, const BlowupDiagnostics& diag, const PohozaevReport& poh) {
  return Json{{"m", sol.ladder.m},
              {"alpha", num(sol.alpha)},
              {"beta", num(sol.beta)},
              {"S_value", num(sol.F_value)},
              {"lambda", num(sol.lambda)},
              {"mu", num(sol.mu)},
              {"r_scale", num(diag.r_scale)},
              {"lambda_mu_sq", num(diag.lambda_mu_sq)},
              {"predicted_S", num(diag.predicted_S)},
              {"profile_sup_error", num(diag.profile_sup_error)},
              {"pre_asymptotic", diag.pre_asymptotic},
              {"pohozaev_residual", num(poh.residual)},
              {"el_residual", num(sol.el_residual)},
              {"alpha_norm", num(sol.alpha_norm)},
              {"iters", sol.iterations}};
}

Json to_json(const DivergenceSample& s) {
  return Json{{"t", num(s.t)},
              {"norm_sq", num(s.norm_sq)},
              {"F_value", num(s.F_value)},
              {"log_F", num(s.log_F)}};
}

CsvTable bubble_table(const BubbleLadder& ladder, const std::vector<double>& radii) {
  const int m = ladder.ctx.m;
  CsvTable t;
  t.columns = {"r", "eta0"};
  for (int j = 1; j <= 2 * m; ++j) t.columns.push_back("level_" + std::to_string(j));
  for (double r : radii) {
    std::vector<double> row{r, eta0(ladder.ctx, r)};
    for (int j = 1; j <= 2 * m; ++j) row.push_back(ladder_eval(ladder, j, r));
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable green_table(const GreenFunction& g, std::size_t samples) {
  CsvTable t;
  t.columns = {"r", "G", "psi"};
  for (double r : linspace(g.ball_radius / static_cast<double>(samples), g.ball_radius, samples)) {
    t.add_row({r, g.value(r), g.psi_value(r)});
  }
  return t;
}

CsvTable testfn_table(const TestFunction& tf, std::size_t samples) {
  CsvTable t;
  t.columns = {"r", "u_tilde", "u"};
  const double R = tf.green.ball_radius;
  // Log-spaced from well inside the bubble core to the boundary.
  const double r0 = 0.01 * tf.eps;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = i + 1 == samples ? R
                     : r0 * std::pow(R / r0, static_cast<double>(i) / static_cast<double>(samples - 1));
    t.add_row({r, tf.tilde_value(r), tf.value(r)});
  }
  return t;
}

CsvTable extremal_table(const ExtremalSolution& sol, const BlowupDiagnostics& diag,
                        const DimensionContext& ctx) {
  CsvTable t;
  t.columns = {"r", "u", "y", "eta", "eta0"};
  const auto& r = sol.ladder.grid.nodes();
  const auto& u = sol.ladder.values();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double y = r[i] / diag.r_scale;
    t.add_row({r[i], u[i], y, sol.mu * (u[i] - sol.mu), eta0(ctx, y)});
  }
  return t;
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string manifest_path(const std::string& path) { return path + ".manifest.json"; }

std::string render_report(const Json& body, const CsvTable* table, OutputFormat format,
                          const RunManifest& manifest) {
  if (format == OutputFormat::Csv) {
    if (table == nullptr) throw InputError("this command has no CSV form");
    return table->to_string();
  }
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["manifest"] = manifest.to_json(false);
  doc["report"] = body;
  return doc.dump(2) + "\n";
}

}  // namespace amt
