#pragma once

#include <string>
#include <vector>

#include "amt/report.hpp"

namespace amt::checks {

struct CheckOptions {
  bool quick = false;
  int only_m = 0;             ///< restrict to one dimension parameter when > 0
  std::string cli_path;       ///< amtlab executable for the determinism part of criterion 14
};

/// One measured quantity inside a criterion.
struct Measurement {
  std::string label;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool skipped = false;  ///< nothing applicable under the given options
  double seconds = 0.0;
  std::vector<Measurement> measurements;

  /// "PASS  3  title (0.12 s)" style summary line.
  std::string summary_line() const;
  Json to_json() const;
};

inline constexpr int kCriterionCount = 14;

CriterionResult run_criterion(int id, const CheckOptions& opts);
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const CheckOptions& opts);

/// Runs every amtlab subcommand twice and compares the outputs byte for byte.
/// Returns one measurement per subcommand.
std::vector<Measurement> cli_determinism(const std::string& cli_path);

}  // namespace amt::checks
