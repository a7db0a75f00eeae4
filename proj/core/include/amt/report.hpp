#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "amt/bubble.hpp"
#include "amt/constants.hpp"
#include "amt/extremal.hpp"
#include "amt/greens.hpp"
#include "amt/testfn.hpp"

namespace amt {

using Json = nlohmann::ordered_json;

/// Version string of the JSON layout written by this library (see docs/).
inline constexpr const char* kReportSchemaVersion = "1";

enum class OutputFormat { Json, Csv };

/// "json" or "csv"; InputError otherwise.
OutputFormat parse_format(const std::string& name);

/// Numeric table with a header row.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::string to_string() const;
};

/// Shortest text that reads back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

/// Parameters, version and outputs of one CLI invocation. The timing is only
/// written to the sidecar file so that reports stay byte-identical across runs.
struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::string tool_version;
  double duration_seconds = 0.0;
  std::vector<std::string> outputs;

  Json to_json(bool with_timing) const;
};

/// One numeric claim with its reference value and tolerance.
Json check_entry(const std::string& name, const std::string& label, double value,
                 double reference, double tolerance, bool passed);

Json to_json(const ExactConstant& c);
Json to_json(const DimensionContext& ctx);
Json to_json(const BubbleReport& rep);
Json to_json(const GreenFunction& g);
Json to_json(const GreenEnergyReport& rep);
Json to_json(const MatchingPolynomial& poly);
Json to_json(const TestFunction& tf, const ThresholdGap& gap);
Json to_json(const ExtremalSolution& sol, const BlowupDiagnostics& diag, const PohozaevReport& poh);
Json to_json(const DivergenceSample& s);

/// Profile tables for plotting.
CsvTable bubble_table(const BubbleLadder& ladder, const std::vector<double>& radii);
CsvTable green_table(const GreenFunction& g, std::size_t samples);
CsvTable testfn_table(const TestFunction& tf, std::size_t samples);
CsvTable extremal_table(const ExtremalSolution& sol, const BlowupDiagnostics& diag,
                        const DimensionContext& ctx);

/// Writes `content` to `path` ("-" is standard output). Throws IoError.
void write_output(const std::string& path, const std::string& content);

/// Sidecar path of the manifest for a report written to `path`.
std::string manifest_path(const std::string& path);

/// Serialized report text: pretty JSON with the manifest block embedded, or the table.
std::string render_report(const Json& body, const CsvTable* table, OutputFormat format,
                          const RunManifest& manifest);

}  // namespace amt
