#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "qetsim/config.hpp"
#include "qetsim/io.hpp"
#include "qetsim/recipes.hpp"
#include "qetsim/rng.hpp"
#include "qetsim/run.hpp"
#include "qetsim/sweep.hpp"
#include "test_support.hpp"

using namespace qetsim;
using qetsim::test::TempDir;

TEST_CASE("shortest formatting round-trips doubles exactly") {
  SplitMix64 rng(71);
  for (int i = 0; i < 5000; ++i) {
    double v;
    const auto bits = rng.next();
    std::memcpy(&v, &bits, sizeof(v));
    if (!std::isfinite(v)) continue;
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-36) == "1e-36");
}

TEST_CASE("2x2 sweep emits a csv with three columns and four rows") {
  const Model model = make_model("snr_parametric");
  const SweepResult result = run_sweep(model, {{"n_units", 1.0, 2.0, 2, AxisScale::Linear},
                                               {"spacing", 1.0, 2.0, 2, AxisScale::Linear}});
  TempDir tmp;
  emit_sweep(result, {tmp.path, "mini", {OutputFormat::Csv}, ""});
  std::istringstream csv(qetsim::test::read_file(tmp.path / "mini.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n_units,spacing,value");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("json emission round-trips bitwise") {
  DataTable table;
  SplitMix64 rng(73);
  std::vector<double> xs, ys;
  for (int i = 0; i < 64; ++i) {
    xs.push_back(rng.uniform(-1e10, 1e10));
    ys.push_back(rng.uniform(-1e-30, 1e-30));
  }
  table.add_column("x", xs);
  table.add_column("y", ys);

  TempDir tmp;
  emit_table(table, {tmp.path, "rt", {OutputFormat::Json}, ""});
  const auto doc = nlohmann::json::parse(qetsim::test::read_file(tmp.path / "rt.json"));
  const auto back_x = doc["values"]["x"].get<std::vector<double>>();
  const auto back_y = doc["values"]["y"].get<std::vector<double>>();
  REQUIRE(back_x.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(back_x[i] == xs[i]);
    CHECK(back_y[i] == ys[i]);
  }
}

TEST_CASE("gnuplot matrix carries coordinate headers") {
  MatrixData m;
  m.row_label = "t";
  m.col_label = "x";
  for (int i = 0; i < 101; ++i) {
    m.row_coords.push_back(i);
    m.col_coords.push_back(i * 0.5);
  }
  m.values.assign(101 * 101, 1.5);
  TempDir tmp;
  emit_matrix(m, {tmp.path, "grid", {OutputFormat::GnuplotMatrix}, ""});

  std::istringstream in(qetsim::test::read_file(tmp.path / "grid.matrix.dat"));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    std::istringstream fields(line);
    std::string tok;
    int cols = 0;
    while (fields >> tok) ++cols;
    CHECK(cols == 102);
  }
  CHECK(rows == 102);
}

TEST_CASE("config parsing") {
  SUBCASE("minimal config fills documented defaults") {
    const std::string text =
        "command = snr_sweep\n"
        "[axis1]\n"
        "param = n_units\n"
        "min = 1\n"
        "max = 100\n";
    const RunConfig config = validate_config(parse_config_text(text, "test"));
    CHECK(config.command == Command::SnrSweep);
    CHECK(config.text("axis1.points") == "101");
    CHECK(config.defaulted.count("axis1.points") == 1);
    CHECK(config.text("model.id") == "snr_parametric");
    CHECK(config.text("params.squeeze") == "1.5");
    CHECK(config.seed() == 1);
    CHECK(config.units() == UnitMode::Si);
  }

  SUBCASE("negative finesse is rejected by name") {
    const std::string text =
        "command = snr_sweep\n"
        "[params]\n"
        "finesse = -3\n"
        "[axis1]\n"
        "param = n_units\n"
        "min = 1\n"
        "max = 100\n";
    try {
      validate_config(parse_config_text(text, "test"));
      FAIL("expected rejection");
    } catch (const validation_error& e) {
      const std::string what = e.what();
      CHECK(what.find("finesse") != std::string::npos);
      CHECK(what.find("> 0") != std::string::npos);
    }
  }

  SUBCASE("unknown keys are rejected by name, not ignored") {
    const std::string text =
        "command = snr_sweep\n"
        "[params]\n"
        "finnesse = 3\n"
        "[axis1]\n"
        "param = n_units\n"
        "min = 1\n"
        "max = 100\n";
    try {
      validate_config(parse_config_text(text, "test"));
      FAIL("expected rejection");
    } catch (const validation_error& e) {
      CHECK(std::string(e.what()).find("finnesse") != std::string::npos);
    }
  }

  SUBCASE("parse errors carry line numbers") {
    try {
      parse_config_text("command = snr_sweep\nnot a key value line\n", "test");
      FAIL("expected rejection");
    } catch (const validation_error& e) {
      CHECK(std::string(e.what()).find("test:2") != std::string::npos);
    }
  }

  SUBCASE("duplicate and malformed keys") {
    CHECK_THROWS_AS(parse_config_text("a = 1\na = 2\n", "test"), validation_error);
    CHECK_THROWS_AS(parse_config_text("a =\n", "test"), validation_error);
    CHECK_THROWS_AS(parse_config_text("[broken\na = 1\n", "test"), validation_error);
  }

  SUBCASE("missing required keys are reported") {
    CHECK_THROWS_AS(validate_config(parse_config_text("command = qix_sim\n", "test")),
                    validation_error);
  }

  SUBCASE("bad axis ranges are rejected") {
    const std::string text =
        "command = snr_sweep\n"
        "[axis1]\n"
        "param = n_units\n"
        "min = 100\n"
        "max = 1\n";
    CHECK_THROWS_AS(validate_config(parse_config_text(text, "test")), validation_error);
  }
}

TEST_CASE("sidecar closure: the .meta file re-runs to identical bytes") {
  const std::string text =
      "command = snr_sweep\n"
      "name = closure\n"
      "[model]\n"
      "id = snr_curvature\n"
      "[params]\n"
      "delta_r0 = 1e-36\n"
      "sigma_r = 1e-35\n"
      "[axis1]\n"
      "param = n_units\n"
      "min = 1\n"
      "max = 100\n"
      "points = 41\n"
      "scale = log10\n";
  TempDir tmp;
  const RunConfig config = validate_config(parse_config_text(text, "test"));
  execute_config(config, tmp.path / "a");

  const RunConfig reparsed = parse_config(tmp.path / "a" / "closure.meta");
  execute_config(reparsed, tmp.path / "b");

  CHECK(qetsim::test::read_file(tmp.path / "a" / "closure.csv") ==
        qetsim::test::read_file(tmp.path / "b" / "closure.csv"));
  CHECK(qetsim::test::read_file(tmp.path / "a" / "closure.json") ==
        qetsim::test::read_file(tmp.path / "b" / "closure.json"));
}

TEST_CASE("recipes are deterministic end to end") {
  TempDir tmp;
  run_recipe("fig6", tmp.path / "run1");
  run_recipe("fig6", tmp.path / "run2");
  for (const char* file : {"fig6.csv", "fig6.json", "fig6.meta"}) {
    CHECK(qetsim::test::read_file(tmp.path / "run1" / file) ==
          qetsim::test::read_file(tmp.path / "run2" / file));
  }
  CHECK_THROWS_AS(run_recipe("fig99", tmp.path), validation_error);
}

TEST_CASE("io failures carry the path") {
  DataTable table;
  table.add_column("x", {1.0});
  try {
    emit_table(table, {"/proc/qetsim_cannot_write_here", "x", {OutputFormat::Csv}, ""});
    FAIL("expected io_error");
  } catch (const io_error& e) {
    CHECK(std::string(e.what()).find("/proc/qetsim_cannot_write_here") != std::string::npos);
  }
}
