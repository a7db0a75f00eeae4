#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

#include <doctest.h>

#include "amt/bubble.hpp"
#include "amt/constants.hpp"
#include "amt/errors.hpp"
#include "amt/report.hpp"

using namespace amt;

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("csv tables") {
  CsvTable t;
  t.columns = {"a", "b"};
  t.add_row({1.0, 0.25});
  CHECK(t.to_string() == "a,b\n1,0.25\n");
  CHECK_THROWS_AS(t.add_row({1.0}), InputError);
  const auto b = bubble_table(build_ladder(build_context(2)), {0.0, 1.0});
  CHECK(b.columns == std::vector<std::string>{"r", "eta0", "level_1", "level_2", "level_3", "level_4"});
  CHECK(b.rows.size() == 2);
}

TEST_CASE("constants report") {
  const Json j = to_json(build_context(1));
  CHECK(j["beta_star"]["float"].get<double>() == doctest::Approx(4 * M_PI));
  CHECK(j["beta_star"]["pi_power"] == 1);
  CHECK(j["beta_star"]["numerator"] == "4");
}

TEST_CASE("rendered reports are deterministic and carry the manifest") {
  RunManifest man;
  man.command = "constants";
  man.parameters = Json{{"m", 1}, {"format", "json"}};
  man.tool_version = "1.0.0";
  man.duration_seconds = 1.25;
  man.outputs = {"-"};
  const Json body = to_json(build_context(3));
  const std::string a = render_report(body, nullptr, OutputFormat::Json, man);
  man.duration_seconds = 7.0;
  const std::string b = render_report(body, nullptr, OutputFormat::Json, man);
  CHECK(a == b);
  const Json parsed = Json::parse(a);
  CHECK(parsed["schema_version"] == kReportSchemaVersion);
  CHECK(parsed["manifest"]["parameters"]["m"] == 1);
  CHECK(!parsed["manifest"].contains("duration_seconds"));
  CHECK(man.to_json(true).contains("duration_seconds"));
  CHECK_THROWS_AS(render_report(body, nullptr, OutputFormat::Csv, man), InputError);
  CHECK(parse_format("csv") == OutputFormat::Csv);
  CHECK_THROWS_AS(parse_format("xml"), InputError);
}

TEST_CASE("write_output") {
  const auto p = std::filesystem::temp_directory_path() / "amt_report_test.txt";
  write_output(p.string(), "hello\n");
  std::ifstream in(p);
  CHECK(std::string(std::istreambuf_iterator<char>(in), {}) == "hello\n");
  std::filesystem::remove(p);
  CHECK(manifest_path("x.json") == "x.json.manifest.json");
  CHECK_THROWS_AS(write_output("/nonexistent-dir/x", "y"), IoError);
}
