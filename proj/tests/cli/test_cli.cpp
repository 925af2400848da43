// Runs the ginsum executable and checks exit codes and outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef GINSUM_CLI_PATH
#error "GINSUM_CLI_PATH must name the CLI executable"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + GINSUM_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ginsum_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("classify") {
  auto r = run("classify --h1 2 --h2 0.5 --p1 1 --p2 1");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["regime"] == "MI1");
  CHECK(j["messages"] == json::array({"W1", "U2"}));
  CHECK(j["sum_capacity"].get<double>() == doctest::Approx(1.29248).epsilon(1e-5));

  r = run("classify --h1 0.1 --h2 0.1 --p1 1 --p2 1");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["subregions"]["li_tin_optimal"] == true);

  CHECK(run("classify --h1 -1 --h2 0.5 --p1 1 --p2 1").code == 2);
  CHECK(run("classify --h1 1 --h2 0.5 --p1 0 --p2 1").code == 2);
  CHECK(run("classify --h1 1").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("optimize") {
  auto r = run("optimize --h1 2 --h2 0.5 --p1 1 --p2 1 --workers 1");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["best_value"].get<double>() == doctest::Approx(1.2924812503605781).epsilon(1e-10));
  CHECK(j.contains("lp_value"));

  r = run("optimize --h1 0 --h2 0 --p1 1 --p2 3");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["best_value"].get<double>() ==
        doctest::Approx(0.5 + 1.0).epsilon(1e-10));

  const auto full = run("optimize --h1 0.1 --h2 0.1 --p1 1 --p2 1");
  const auto tin = run("optimize --h1 0.1 --h2 0.1 --p1 1 --p2 1 --restrict U1,U2");
  REQUIRE(full.code == 0);
  REQUIRE(tin.code == 0);
  CHECK(std::abs(json::parse(full.out)["best_value"].get<double>() -
                 json::parse(tin.out)["best_value"].get<double>()) <= 1e-4);

  CHECK(run("optimize --h1 1 --h2 1 --p1 1 --p2 1 --restrict U7").code == 2);
  CHECK(run("optimize --h1 1 --h2 1 --p1 1 --p2 1 --restrict ,").code == 2);
  CHECK(run("optimize --h1 1 --h2 1 --p1 1 --p2 1 --grid-step 0").code == 2);
  CHECK(run("optimize --h1 1 --h2 1 --p1 1 --p2 1 --grid-step abc").code == 2);
}

TEST_CASE("constraints") {
  auto r = run("constraints --h1 0 --h2 0.5 --p1 1 --p2 1 --split 1,0,0,1,0,0");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["constraints"].size() == 30);
  CHECK(j["constraints"][14]["rhs"].get<double>() == doctest::Approx(0.5 * std::log2(1.8)).epsilon(1e-12));
  CHECK(j["bounds"].contains("t4"));

  r = run("constraints --h1 0 --h2 0.5 --p1 1 --p2 1 --split 1,0,0,1,0,0 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("#", 0) == 0);

  CHECK(run("constraints --h1 0 --h2 0.5 --p1 1 --p2 1 --split 0.5,0.5,0.5,1,0,0").code == 2);
  CHECK(run("constraints --h1 0 --h2 0.5 --p1 1 --p2 1 --split 1,0,0").code == 2);
  CHECK(run("constraints --h1 0 --h2 0.5 --p1 1 --p2 1 --split 1,0,x,1,0,0").code == 2);
}

TEST_CASE("sweep") {
  const std::string grid =
      "sweep --h1-min 0.5 --h1-max 2 --h1-steps 3 --h2-min 0.5 --h2-max 2 --h2-steps 3 "
      "--p1 1 --p2 1";
  auto a = run(grid);
  auto b = run(grid + " --workers 2");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream in(a.out);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line == "h1,h2,regime,max_sum_rate,active_messages,subregions,capacity_known");
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);

  const auto csv = scratch("sweep.csv");
  const auto svg = scratch("sweep.svg");
  fs::remove(csv);
  fs::remove(svg);
  REQUIRE(run(grid + " --out \"" + csv.string() + "\" --svg \"" + svg.string() + "\"").code == 0);
  CHECK(slurp(csv) == a.out);
  CHECK(slurp(svg).find("</svg>") != std::string::npos);
  CHECK_FALSE(fs::exists(csv.string() + ".partial"));

  auto j = run(grid + " --format json");
  REQUIRE(j.code == 0);
  CHECK(json::parse(j.out)["points"].size() == 9);

  // Unwritable destination: no partial files are left behind.
  const auto missing = scratch("no_such_dir") / "out.csv";
  CHECK(run(grid + " --out \"" + missing.string() + "\"").code == 2);
  CHECK_FALSE(fs::exists(missing));
  CHECK_FALSE(fs::exists(missing.string() + ".partial"));
  const auto kept = scratch("kept.csv");
  fs::remove(kept);
  CHECK(run(grid + " --out \"" + kept.string() + "\" --svg \"" + missing.string() + "\"").code ==
        2);
  CHECK_FALSE(fs::exists(kept));

  CHECK(run("sweep --h1-min 2 --h1-max 1 --h1-steps 3 --h2-min 0 --h2-max 1 --h2-steps 2 "
            "--p1 1 --p2 1")
            .code == 2);
  CHECK(run("sweep --h1-min 0 --h1-max 1 --h1-steps 1 --h2-min 0 --h2-max 1 --h2-steps 2 "
            "--p1 1 --p2 1")
            .code == 2);
}

TEST_CASE("verify") {
  auto r = run("verify --suite t3 --trials 2000 --seed 7");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["reports"].size() == 1);

  r = run("verify --suite all --trials 100 --seed 1 --opt-trials 2");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["reports"].size() == 5);
  CHECK(r.out.find("elapsed") == std::string::npos);
  CHECK(run("verify --suite t1 --trials 50 --timing").out.find("elapsed") != std::string::npos);

  CHECK(run("verify --suite bogus").code == 2);
  CHECK(run("verify --suite t1 --trials 0").code == 2);
  CHECK(run("verify --suite t1 --trials ten").code == 2);
}
