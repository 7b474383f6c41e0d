#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cgnls/errors.hpp"
#include "cgnls/io.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace cgnls;
using namespace cgnls::cli;
using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "cgnls_test_cli" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run(const std::string& command, const std::string& config, const std::filesystem::path& out) {
  const ExperimentConfig cfg = parse_config(config, command);
  const RunContext ctx{command, out, false};
  if (command == "simulate") return cmd_simulate(cfg, ctx);
  if (command == "scatter") return cmd_scatter(cfg, ctx);
  if (command == "solitons") return cmd_solitons(cfg, ctx);
  if (command == "asymptote") return cmd_asymptote(cfg, ctx);
  if (command == "compare") return cmd_compare(cfg, ctx);
  return cmd_pcf(cfg, ctx);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::runtime_error("no column " + name);
  }
};

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  REQUIRE(line.rfind("# {", 0) == 0);
  Table t;
  std::getline(in, line);
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  while (std::getline(in, line)) {
    std::stringstream rs(line);
    std::vector<double> row;
    for (std::string cell; std::getline(rs, cell, ',');) row.push_back(std::stod(cell));
    t.rows.push_back(row);
  }
  return t;
}

json read_json(const std::filesystem::path& path) { return json::parse(read_text(path)); }

std::string config_error(const std::string& command, const std::string& config) {
  try {
    parse_config(config, command);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

double max_abs(const CVec& v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("simulate: the zero preset stays zero and carries metadata") {
  const auto out = fresh_dir("zero");
  const std::string config = R"({"grid": {"x_min": -10, "x_max": 10, "n": 64},
    "initial": {"preset": "zero"}, "solver": {"dt": 0.01, "t_end": 0.5, "snapshot_every": 0.25}})";
  CHECK(run("simulate", config, out) == exit_ok);
  for (int i = 0; i < 3; ++i) {
    const auto s = read_snapshot(out / ("snapshot_000" + std::to_string(i)));
    CHECK(s.t == doctest::Approx(0.25 * i));
    CHECK(max_abs(s.u) == 0.0);
    CHECK(max_abs(s.v) == 0.0);
  }
  const json meta = read_json(out / "simulate.json")["metadata"];
  CHECK(meta["command"] == "simulate");
  CHECK(meta["config_hash"] == fnv1a_hex(config));
}

TEST_CASE("simulate: a one-soliton keeps its peak height 2 eta") {
  const auto out = fresh_dir("one");
  const std::string config = R"({"grid": {"x_min": -32, "x_max": 32, "n": 512},
    "params": {"alpha": 0.2, "beta": 0.15, "gamma": 0.3},
    "initial": {"solitons": [{"z": [0.1, 0.6], "c": [0, -1]}]},
    "solver": {"dt": 0.002, "t_end": 1.0, "snapshot_every": 0.5}})";
  CHECK(run("simulate", config, out) == exit_ok);
  for (int i = 0; i < 3; ++i) {
    const auto s = read_snapshot(out / ("snapshot_000" + std::to_string(i)));
    // the peak between grid nodes sits within O(dx²) of 2 eta
    CHECK(max_abs(s.u) == doctest::Approx(1.2).epsilon(2e-2));
  }
  const Table cons = read_csv(out / "conservation.csv");
  REQUIRE(!cons.rows.empty());
  for (const auto& row : cons.rows) CHECK(row[cons.column("quadrature_mass")] == doctest::Approx(4.0 * 0.6));
}

TEST_CASE("config errors name the offending field") {
  const std::string grid = R"("grid": {"x_min": -10, "x_max": 10, "n": 64})";
  CHECK(config_error("simulate", "{" + grid + R"(, "initial": {"preset": "zero"}, "solver": {"t_end": 1}})") ==
        "config.solver.dt: missing required field");
  CHECK(config_error("simulate", "{" + grid + R"(, "initial": {"preset": "zero"}, "solver": {"dt": "x", "t_end": 1}})") ==
        "config.solver.dt: expected a number");
  CHECK(config_error("simulate", "{" + grid + R"(, "initial": {"solitons": [{"z": [0, -1], "c": 1}]}, "solver": {"dt": 0.1, "t_end": 1}})") ==
        "config.initial.solitons[0].z: eigenvalue must lie in the upper half-plane");
  CHECK(config_error("scatter", R"({"grid": {"x_min": -10, "x_max": 10, "n": 63}, "initial": {"preset": "zero"}})") ==
        "config.grid.n: must be an even integer >= 4");
  CHECK(config_error("scatter", "{" + grid + R"(, "initial": {"preset": "boxcar"}})").find("config.initial.preset") == 0);
  CHECK(config_error("simulate", "[1, 2").find("invalid JSON") != std::string::npos);
}

TEST_CASE("scatter: zero field, sech preset and a round trip") {
  const auto out = fresh_dir("scatter");
  CHECK(run("scatter", R"({"grid": {"x_min": -20, "x_max": 20, "n": 256}, "initial": {"preset": "zero"},
    "scatter": {"n_z": 21}})", out) == exit_ok);
  auto data = load_scattering(out / "scattering.json");
  CHECK(data.discrete.empty());
  CHECK(max_abs(data.r) == 0.0);

  CHECK(run("scatter", R"({"grid": {"x_min": -40, "x_max": 40, "n": 2048}, "initial": {"preset": "sech"},
    "scatter": {"n_z": 21}})", out) == exit_ok);
  data = load_scattering(out / "scattering.json");
  REQUIRE(data.discrete.size() == 1);
  CHECK(std::abs(data.discrete[0].z - cplx(0.0, 0.5)) < 1e-6);
  // the amplitude-one sech potential is reflectionless
  CHECK(max_abs(data.r) < 1e-6);

  CHECK(run("scatter", R"({"grid": {"x_min": -40, "x_max": 40, "n": 2048}, "params": {"alpha": 0.3, "beta": -0.2},
    "initial": {"solitons": [{"z": [-0.3, 0.5], "c": [0.5, 1]}, {"z": [0.4, 0.7], "c": [0, -1]}]},
    "scatter": {"n_z": 11}})", out) == exit_ok);
  data = load_scattering(out / "scattering.json");
  REQUIRE(data.discrete.size() == 2);
  const cplx expected[] = {cplx(-0.3, 0.5), cplx(0.4, 0.7)};
  const cplx constants[] = {cplx(0.5, 1.0), cplx(0.0, -1.0)};
  for (int k = 0; k < 2; ++k) {
    const auto& found = std::abs(data.discrete[0].z - expected[k]) < 1e-3 ? data.discrete[0] : data.discrete[1];
    CHECK(std::abs(found.z - expected[k]) < 1e-6);
    CHECK(std::abs(std::abs(found.c) - std::abs(constants[k])) < 1e-4);
  }
}

TEST_CASE("asymptote: zero data, a pure soliton, and the report structure") {
  const auto out = fresh_dir("asymptote");
  const std::string cone = R"("asymptote": {"cone": {"x1": -5, "x2": 5, "v1": -1, "v2": 0},
      "times": [10, 15, 20], "rays": [{"x0": 0, "velocity": -0.4}, {"x0": 1, "velocity": -0.5}]})";
  CHECK(run("asymptote", R"({"grid": {"x_min": -40, "x_max": 40, "n": 256}, "initial": {"preset": "zero"},
    "solver": {"dt": 0.01}, "scatter": {"n_z": 21}, )" + cone + "}", out) == exit_ok);
  Table t = read_csv(out / "asymptote.csv");
  CHECK(t.rows.size() == 6);
  for (const auto& row : t.rows) {
    CHECK(row[t.column("abs_u_num")] == 0.0);
    CHECK(row[t.column("abs_u_pred")] == 0.0);
    CHECK(row[t.column("abs_err")] == 0.0);
  }

  CHECK(run("asymptote", R"({"grid": {"x_min": -40, "x_max": 40, "n": 512},
    "initial": {"solitons": [{"z": [0.1, 0.5], "c": [0, -1]}]}, "solver": {"dt": 0.005}, )" + cone + "}",
            out) == exit_ok);
  t = read_csv(out / "asymptote.csv");
  for (const auto& row : t.rows) {
    if (row[t.column("t")] == 20.0) CHECK(row[t.column("abs_err")] < 1e-3);
  }
  const json report = read_json(out / "asymptote.json");
  REQUIRE(report["rays"].size() == 2);
  for (const auto& ray : report["rays"]) {
    CHECK(ray["slope_with_radiation"].contains("inv_sqrt2"));
    CHECK(ray["slope_with_radiation"].contains("inv_2sqrt2"));
    CHECK(ray.contains("slope_without_radiation"));
  }

  const ExperimentConfig outside = parse_config(R"({"grid": {"x_min": -40, "x_max": 40, "n": 256},
    "initial": {"preset": "zero"}, "solver": {"dt": 0.01},
    "asymptote": {"cone": {"x1": -5, "x2": 5, "v1": -1, "v2": 0}, "times": [10], "rays": [{"x0": 30, "velocity": 1}]}})",
                                                "asymptote");
  CHECK_THROWS_AS(cmd_asymptote(outside, RunContext{"asymptote", out, false}), ConfigError);
}

TEST_CASE("compare against the closed form") {
  const auto out = fresh_dir("compare");
  const std::string base = R"("grid": {"x_min": -32, "x_max": 32, "n": 512},
    "initial": {"solitons": [{"z": [-0.2, 0.5], "c": [1, 0]}]})";
  CHECK(run("simulate", "{" + base + R"(, "solver": {"dt": 0.002, "t_end": 0.5}})", out) == exit_ok);
  CHECK(run("compare", "{" + base + R"(, "compare": {"snapshot": ")" + (out / "snapshot_0001").string() + "\"}}",
            out) == exit_ok);
  const json summary = read_json(out / "compare.json");
  CHECK(summary["t"] == doctest::Approx(0.5));
  CHECK(summary["max_abs_err"].get<double>() < 1e-8);
}

TEST_CASE("pcf table, jump residuals and moment rows") {
  const auto out = fresh_dir("pcf");
  CHECK(run("pcf", R"({"pcf": {"orders": [0, [1, 0]], "z_min": -4, "z_max": 4, "n_z": 41,
    "r0": [[0.8, 0], [0.3, -0.5]], "radii": [0.5, 2, 10], "moment_radius": 100}})", out) == exit_ok);
  const Table values = read_csv(out / "pcf.csv");
  for (const auto& row : values.rows) {
    const double z = row[values.column("z")];
    const double expected = row[values.column("re_a")] == 0.0 ? std::exp(-z * z / 4.0) : z * std::exp(-z * z / 4.0);
    CHECK(row[values.column("re_D")] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(row[values.column("im_D")]) < 1e-14);
  }
  const Table jumps = read_csv(out / "pc_jump.csv");
  CHECK(jumps.rows.size() == 2 * 4 * 3);
  for (const auto& row : jumps.rows) CHECK(row[jumps.column("residual")] < 1e-6);
  const Table moments = read_csv(out / "pc_moment.csv");
  for (const auto& row : moments.rows) {
    const cplx m12(row[moments.column("re_m12")], row[moments.column("im_m12")]);
    const cplx b12(row[moments.column("re_beta12")], row[moments.column("im_beta12")]);
    CHECK(std::abs(m12 - b12) < 1e-3);
  }
}
