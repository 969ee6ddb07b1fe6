#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "funkvol/cli.hpp"
#include "funkvol/errors.hpp"
#include "funkvol/hanner.hpp"
#include "funkvol/json_io.hpp"
#include "funkvol/simplex_ode.hpp"

using namespace funkvol;
using nlohmann::json;

namespace {

std::string write_file(const std::string& name, const std::string& text) {
  std::ofstream f(name);
  f << text;
  return name;
}

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

RunResult run(const RunConfig& cfg) {
  std::ostringstream out, err;
  RunResult r;
  r.exit_code = run_command(cfg, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kSquare = write_file("cli_square.json",
                                       R"({"vertices": [[1,1],[-1,1],[-1,-1],[1,-1]]})");
const std::string kTriangle = write_file("cli_triangle.json",
                                         R"({"vertices": [[2,0],[-1,1.2],[-0.6,-1.5]]})");

}  // namespace

TEST_CASE("volume output is deterministic and matches the closed form") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::volume;
  cfg.input_path = kSquare;
  cfg.radii = {std::log(2.0)};
  cfg.tol = 1e-8;
  cfg.format = RunConfig::Format::json;

  RunResult a = run(cfg);
  RunResult b = run(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.err.empty());
  CHECK(a.out == b.out);

  json j = json::parse(a.out);
  double want = hanner_ball_volume(2, std::log(2.0));
  CHECK(j["rows"][0]["value"].get<double>() == doctest::Approx(want).epsilon(1e-6));
  CHECK(j["rows"][0]["converged"].get<bool>());
}

TEST_CASE("the center key translates the body") {
  std::string shifted = write_file(
      "cli_shifted.json",
      R"({"vertices": [[1.2,0.9],[-0.8,0.9],[-0.8,-1.1],[1.2,-1.1]], "center": [0.2,-0.1]})");
  RunConfig cfg;
  cfg.command = RunConfig::Command::volume;
  cfg.radii = {1.0};
  cfg.tol = 1e-9;
  cfg.format = RunConfig::Format::csv;

  cfg.input_path = kSquare;
  RunResult a = run(cfg);
  cfg.input_path = shifted;
  RunResult b = run(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("failures print nothing to out and name the stage") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::volume;

  SUBCASE("missing input") {
    cfg.input_path = "cli_does_not_exist.json";
    RunResult r = run(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("[parse]") != std::string::npos);
  }
  SUBCASE("unknown key") {
    cfg.input_path = write_file("cli_bad_key.json", R"({"vertices": [[1,0],[0,1],[-1,-1]], "x": 0})");
    RunResult r = run(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
  }
  SUBCASE("center outside the body") {
    cfg.input_path = kSquare;
    cfg.center = {5.0, 5.0};
    RunResult r = run(cfg);
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
    CHECK(r.err.find("[geometry]") != std::string::npos);
  }
  SUBCASE("nonpositive radius") {
    cfg.input_path = kSquare;
    cfg.radii = {-2.0};
    RunResult r = run(cfg);
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
  }
  SUBCASE("negative tolerance") {
    cfg.input_path = kSquare;
    cfg.tol = -1.0;
    RunResult r = run(cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
  }
  SUBCASE("polygon command on a 3-d body") {
    cfg.command = RunConfig::Command::polygon;
    cfg.input_path = write_file(
        "cli_tetra.json", R"({"vertices": [[1,1,1],[1,-1,-1],[-1,1,-1],[-1,-1,1]]})");
    RunResult r = run(cfg);
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
  }
}

TEST_CASE("polytope json parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_polytope_json(""), Error);
  CHECK_THROWS_AS(parse_polytope_json("[1,2]"), Error);
  CHECK_THROWS_AS(parse_polytope_json(R"({"vertices": []})"), Error);
  CHECK_THROWS_AS(parse_polytope_json(R"({"vertices": [[1,"a"],[0,1],[-1,-1]]})"), Error);
  CHECK_THROWS_AS(parse_polytope_json(R"({"vertices": [[1,0],[0,1,2],[-1,-1]]})"), Error);
  CHECK_THROWS_AS(parse_polytope_json(R"({"vertices": [[1,0,0,0,0,0,0],[-1,0,0,0,0,0,0]]})"),
                  Error);
  CHECK_THROWS_AS(parse_polytope_json(R"({"vertices": [[1,0],[0,1],[-1,-1]], "center": [1]})"),
                  Error);

  std::string many = R"({"vertices": [)";
  for (int i = 0; i < 65; ++i) {
    if (i) many += ",";
    double a = 6.283185307179586 * i / 65.0;
    many += "[" + std::to_string(std::cos(a)) + "," + std::to_string(std::sin(a)) + "]";
  }
  many += "]}";
  CHECK_THROWS_AS(parse_polytope_json(many), Error);
}

TEST_CASE("verify passes on the square and skips symmetry checks on a triangle") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::verify;
  cfg.format = RunConfig::Format::json;

  cfg.input_path = kSquare;
  RunResult a = run(cfg);
  CHECK(a.exit_code == 0);
  json ja = json::parse(a.out);
  CHECK(ja["failures"].get<int>() == 0);
  CHECK(ja["properties"].size() == 5);
  for (const auto& p : ja["properties"]) CHECK(p["status"].get<std::string>() == "PASS");

  cfg.input_path = kTriangle;
  RunResult b = run(cfg);
  CHECK(b.exit_code == 0);
  json jb = json::parse(b.out);
  CHECK(jb["failures"].get<int>() == 0);
  bool skipped = false;
  for (const auto& p : jb["properties"])
    if (p["name"] == "flag pairing equality") skipped = p["status"] == "SKIP";
  CHECK(skipped);
}

TEST_CASE("verify recenters a body whose interior misses the origin") {
  std::string off = write_file(
      "cli_offset.json", R"({"vertices": [[5,5],[3,5],[3,3],[5,3]]})");
  RunConfig cfg;
  cfg.command = RunConfig::Command::verify;
  cfg.format = RunConfig::Format::json;
  cfg.input_path = off;
  RunResult r = run(cfg);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["recentered"].get<bool>());
  CHECK(j["failures"].get<int>() == 0);
}

TEST_CASE("hanner and simplex commands report the library values") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::hanner;
  cfg.hanner_spec = "polar(product(segment,segment,segment))";
  cfg.radii = {1.0, 2.0};
  cfg.format = RunConfig::Format::json;
  RunResult a = run(cfg);
  CHECK(a.exit_code == 0);
  json ja = json::parse(a.out);
  CHECK(ja["dimension"].get<int>() == 3);
  CHECK(ja["flag_count"].get<double>() == 48.0);
  CHECK(ja["rows"][1]["volht"].get<double>() ==
        doctest::Approx(hanner_ball_volume(3, 2.0)).epsilon(1e-14));

  cfg = RunConfig{};
  cfg.command = RunConfig::Command::simplex;
  cfg.simplex_dim = 2;
  cfg.radii = {1.5};
  cfg.format = RunConfig::Format::json;
  RunResult b = run(cfg);
  CHECK(b.exit_code == 0);
  json jb = json::parse(b.out);
  CHECK(jb["rows"][0]["V"].get<double>() ==
        doctest::Approx(simplex_volume_ode(2, 1.5)).epsilon(1e-12));
}

TEST_CASE("polygon command cross-checks the flag route") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::polygon;
  cfg.input_path = kSquare;
  cfg.lambdas = {0.5};
  cfg.format = RunConfig::Format::json;
  RunResult r = run(cfg);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["consistent"].get<bool>());
  CHECK(j["c1"].get<double>() == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(j["stationarity_gradient_norm"].get<double>() <= 1e-6);
}

TEST_CASE("santalo csv lists the limit point first") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::santalo;
  cfg.input_path = kTriangle;
  cfg.radii = {2.0};
  cfg.format = RunConfig::Format::csv;
  RunResult r = run(cfg);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header, inf_row, finite_row;
  std::getline(lines, header);
  std::getline(lines, inf_row);
  std::getline(lines, finite_row);
  CHECK(header == "R,x0,x1,gap_to_s_infinity,residual");
  CHECK(inf_row.substr(0, 4) == "inf,");
  double x0 = 0, x1 = 0;
  std::sscanf(inf_row.c_str(), "inf,%lf,%lf", &x0, &x1);
  CHECK(x0 == doctest::Approx(0.4 / 3.0).epsilon(1e-9));
  CHECK(x1 == doctest::Approx(-0.1).epsilon(1e-9));
  CHECK(finite_row.substr(0, 2) == "2,");
}

TEST_CASE("sweep emits one csv row per grid radius") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::sweep;
  cfg.input_path = kSquare;
  cfg.radii = {10.0, 12.5, 15.0};
  cfg.tol = 1e-3;
  RunResult r = run(cfg);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "R,volume,fit_residual");
  int rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
}
