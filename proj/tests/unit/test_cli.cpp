#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <doctest.h>

#include "amt/report.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string("\"") + AMTLAB_PATH + "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("constants subcommand") {
  const auto r = run("constants --m 1 --out -");
  CHECK(r.status == 0);
  const auto j = amt::Json::parse(r.out);
  CHECK(j["report"]["beta_star"]["float"].get<double>() == doctest::Approx(12.566370614359172).epsilon(1e-15));
  CHECK(j["manifest"]["parameters"]["m"] == 1);
  CHECK(j["manifest"]["parameters"]["format"] == "json");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("constants --m 0").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("bubble --format xml").status == 2);
  CHECK(run("nosuchcommand").status == 2);
  CHECK(run("extremal --beta-frac 1.5 --grid-n 512").status == 2);
  CHECK(run("green --m 1 --alpha 100").status == 2);
}

TEST_CASE("I/O errors exit with 1") {
  CHECK(run("constants --out /nonexistent-dir/x.json").status == 1);
}

TEST_CASE("csv output and byte-identical reruns") {
  const auto a = run("bubble --m 1 --format csv");
  CHECK(a.status == 0);
  CHECK(a.out.rfind("r,eta0,level_1,level_2\n", 0) == 0);
  CHECK(run("bubble --m 1 --format csv").out == a.out);
  const auto t1 = run("testfn --m 1 --eps 1e-4");
  CHECK(t1.status == 0);
  CHECK(run("testfn --m 1 --eps 1e-4").out == t1.out);
  const auto j = amt::Json::parse(t1.out);
  CHECK(j["report"]["checks"].is_array());
  CHECK(j["manifest"]["parameters"]["eps"] == 1e-4);
}
