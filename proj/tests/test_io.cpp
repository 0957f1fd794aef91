#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "bolab/trajectory_io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bolab;
using namespace testing;

namespace {

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

Trajectory short_run() {
  EvolutionConfig c;
  c.grid = Grid(2.0, 32);
  c.dt = 1e-2;
  c.t_final = 0.05;
  c.snapshot_stride = 2;
  return evolve(cos_field(c.grid), c);
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
  CHECK(format_cell(Cell{std::int64_t(42)}) == "42");
  CHECK(format_cell(Cell{true}) == "true");
}

TEST_CASE("csv quoting") {
  Table t{{"name", "value"}, {}};
  t.add({std::string("plain"), 1.5});
  t.add({std::string("a,b"), std::int64_t(2)});
  t.add({std::string("say \"hi\""), false});
  t.add({std::string("two\nlines"), 0.0});
  CHECK(csv(t) ==
        "name,value\r\nplain,1.5\r\n\"a,b\",2\r\n\"say \"\"hi\"\"\",false\r\n\"two\nlines\",0\r\n");
  CHECK_THROWS_AS(t.add({1.0}), SizeError);
  const auto j = to_json(t);
  CHECK(j.size() == 4);
  CHECK(j[1]["name"] == "a,b");
  CHECK(j[0]["value"] == 1.5);
}

TEST_CASE("report files") {
  ExperimentReport r;
  r.name = "demo";
  r.rows = Table{{"x"}, {}};
  r.rows.add({1.0});
  r.passed = true;
  const auto j = r.to_json();
  CHECK(j["verdict"] == "pass");
  CHECK(j["name"] == "demo");
  const auto dir = std::filesystem::temp_directory_path() / "bolab_test_report";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_report(r, dir);
  CHECK(std::filesystem::exists(dir / "demo.csv"));
  std::ifstream is(dir / "demo.json");
  CHECK(nlohmann::json::parse(is)["verdict"] == "pass");
  std::filesystem::remove_all(dir);
}

TEST_CASE("trajectory tables") {
  const Trajectory tr = short_run();
  const Table t = trajectory_table(tr);
  CHECK(t.columns == std::vector<std::string>{"time", "k", "xi", "re", "im"});
  CHECK(t.rows.size() == tr.size() * 32);
  CHECK(std::get<double>(t.rows[1][2]) == 0.5);

  const Table d = drift_table(drift(tr, Quantity::momentum()));
  CHECK(d.columns == std::vector<std::string>{"t", "value", "relative_drift"});
  CHECK(d.rows.size() == tr.size());
  CHECK(std::get<double>(d.rows[0][2]) == 0.0);

  ResidualSeries s{TimeDerivativeMode::finite_difference, {0.0, 0.1}, {1e-3, 2e-3}};
  const Table r = residual_table(s);
  CHECK(r.columns == std::vector<std::string>{"t", "residual_L2", "mode"});
  CHECK(std::get<std::string>(r.rows[0][2]) == "finite_difference");
}

TEST_CASE("snapshot round trip") {
  const Trajectory tr = short_run();
  std::stringstream buf;
  write_snapshots(tr, buf);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 6) == "BOLAB1");
  CHECK(bytes.size() == 40 + tr.size() * (8 + 32 * 8));

  const Trajectory back = read_snapshots(buf);
  REQUIRE(back.size() == tr.size());
  CHECK(back.config.grid == tr.config.grid);
  CHECK(back.config.alpha == tr.config.alpha);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(back.times[i] == tr.times[i]);
    CHECK((back.states[i].coeffs() - tr.states[i].coeffs()).cwiseAbs().maxCoeff() <
          1e-6 * tr.states[i].coeffs().cwiseAbs().maxCoeff());
  }

  std::stringstream bad("BOLAB2 and then some bytes");
  CHECK_THROWS_AS(read_snapshots(bad), Error);
  std::stringstream truncated(bytes.substr(0, 60));
  CHECK_THROWS_AS(read_snapshots(truncated), Error);
  std::stringstream sink;
  CHECK_THROWS_AS(write_snapshots(Trajectory{}, sink), InsufficientDataError);
}
