#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "trigspline/cli_app.hpp"

namespace fs = std::filesystem;
using trigspline::cli::run;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path make_temp_dir() {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("trigspline_cli_test_" + std::to_string(::getpid()) +
                        "_" + std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct Row {
  std::vector<double> cells;
};

std::vector<Row> parse_csv(const std::string& text,
                           const std::string& expected_header) {
  std::stringstream ss(text);
  std::string line;
  REQUIRE(std::getline(ss, line));
  CHECK(line == expected_header);
  std::vector<Row> rows;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    Row row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.cells.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("figures subcommand emits the four reference curves") {
  const fs::path dir = make_temp_dir();
  REQUIRE(run({"figures", "--outdir", dir.string()}) == 0);
  for (const char* name :
       {"st5_I10_I20.csv", "st5_I10_I21.csv", "st5_I11_I20.csv",
        "st5_I11_I21.csv"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(dir / name));
    const auto rows = parse_csv(slurp(dir / name),
                                "t,value,tail_bound,truncation_incomplete");
    REQUIRE(rows.size() == 721);
    for (const auto& row : rows) {
      REQUIRE(row.cells.size() == 4);
      CHECK(row.cells[3] == 0.0);
    }
  }
  const auto rows = parse_csv(slurp(dir / "st5_I10_I20.csv"),
                              "t,value,tail_bound,truncation_incomplete");
  CHECK(rows[320].cells[0] == doctest::Approx(8.0 * kPi / 9.0).epsilon(1e-12));
  CHECK(rows[320].cells[1] == doctest::Approx(1.0).epsilon(1e-8));
  fs::remove_all(dir);
}

TEST_CASE("figures output is byte-identical across runs") {
  const fs::path a = make_temp_dir();
  const fs::path b = make_temp_dir();
  REQUIRE(run({"figures", "--outdir", a.string()}) == 0);
  REQUIRE(run({"figures", "--outdir", b.string()}) == 0);
  for (const char* name :
       {"st5_I10_I20.csv", "st5_I10_I21.csv", "st5_I11_I20.csv",
        "st5_I11_I21.csv"}) {
    CHECK(slurp(a / name) == slurp(b / name));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("fundamental subcommand: polynomial mode at the first node") {
  const fs::path dir = make_temp_dir();
  const fs::path cfg = dir / "config.json";
  spit(cfg, R"({"N":9,"r":1,"gamma":[1,0,0],"eta":[1,0,0],
               "factor":{"family":"ConstantPower","alpha":1.0,"r":1}})");
  const fs::path out = dir / "out.csv";
  REQUIRE(run({"fundamental", "--config", cfg.string(), "--k", "1",
               "--samples", "1", "--out", out.string()}) == 0);
  const auto rows =
      parse_csv(slurp(out), "t,value,tail_bound,truncation_incomplete");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].cells[0] == 0.0);
  CHECK(rows[0].cells[1] == doctest::Approx(1.0).epsilon(1e-10));
  fs::remove_all(dir);
}

TEST_CASE("interpolate subcommand reproduces constant samples") {
  const fs::path dir = make_temp_dir();
  const fs::path data = dir / "samples.csv";
  std::string csv = "k,f\n";
  for (int k = 1; k <= 9; ++k) csv += std::to_string(k) + ",2.5\n";
  spit(data, csv);
  const fs::path out = dir / "out.csv";
  REQUIRE(run({"interpolate", "--data", data.string(), "--samples", "16",
               "--out", out.string()}) == 0);
  const auto rows =
      parse_csv(slurp(out), "t,value,tail_bound,truncation_incomplete");
  REQUIRE(rows.size() == 16);
  for (const auto& row : rows)
    CHECK(row.cells[1] == doctest::Approx(2.5).epsilon(1e-8));
  fs::remove_all(dir);
}

TEST_CASE("factors subcommand lists values with envelopes") {
  const fs::path dir = make_temp_dir();
  const fs::path out = dir / "factors.csv";
  REQUIRE(run({"factors", "--jmax", "10", "--out", out.string()}) == 0);
  const auto rows = parse_csv(slurp(out), "j,value,envelope");
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].cells[1] == doctest::Approx(1.0));
  CHECK(rows[1].cells[1] == doctest::Approx(0.25));
  for (const auto& row : rows)
    CHECK(std::abs(row.cells[1]) <= row.cells[2] * (1.0 + 1e-12));
  fs::remove_all(dir);
}

TEST_CASE("json output format mirrors the CSV rows") {
  const fs::path dir = make_temp_dir();
  const fs::path out = dir / "out.json";
  REQUIRE(run({"fundamental", "--samples", "4", "--format", "json", "--out",
               out.string()}) == 0);
  const auto parsed = nlohmann::json::parse(slurp(out));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 4);
  CHECK(parsed[0].contains("t"));
  CHECK(parsed[0].contains("value"));
  CHECK(parsed[0].contains("tail_bound"));
  fs::remove_all(dir);
}

TEST_CASE("malformed config exits with code 2") {
  const fs::path dir = make_temp_dir();
  const fs::path cfg = dir / "bad.json";
  spit(cfg, "{ not json");
  CHECK(run({"fundamental", "--config", cfg.string()}) == 2);
  spit(cfg, R"({"N":8})");
  CHECK(run({"fundamental", "--config", cfg.string()}) == 2);
  spit(cfg, R"({"factor":{"family":"Nope"}})");
  CHECK(run({"fundamental", "--config", cfg.string()}) == 2);
  fs::remove_all(dir);
}

TEST_CASE("numeric failures exit with code 3") {
  const fs::path dir = make_temp_dir();
  const fs::path cfg = dir / "degenerate.json";
  spit(cfg, R"({"N":3,"r":1,
    "factor":{"family":"Composite","head":[-0.462163614976201277,0.25,1.0],
              "tail":{"family":"ConstantPower","alpha":1.0,"r":1}}})");
  CHECK(run({"fundamental", "--config", cfg.string(), "--k", "1",
             "--samples", "2", "--out", (dir / "x.csv").string()}) == 3);
  fs::remove_all(dir);
}

TEST_CASE("truncation cap from the environment flags incomplete rows") {
  const fs::path dir = make_temp_dir();
  const fs::path cfg = dir / "cfg.json";
  spit(cfg, R"({"N":9,"r":3,
    "factor":{"family":"Product","operands":[
       {"family":"BumpSine","alpha":1.0,"r":1},
       {"family":"ConstantPower","alpha":1.0,"r":1}]},
    "epsilon":1e-12})");
  const fs::path out = dir / "out.csv";
  ::setenv("TRIGSPLINE_MMAX", "6", 1);
  REQUIRE(run({"fundamental", "--config", cfg.string(), "--samples", "3",
               "--out", out.string()}) == 0);
  ::unsetenv("TRIGSPLINE_MMAX");
  const auto rows =
      parse_csv(slurp(out), "t,value,tail_bound,truncation_incomplete");
  for (const auto& row : rows) CHECK(row.cells[3] == 1.0);
  fs::remove_all(dir);
}

TEST_CASE("validate subcommand passes on the default battery") {
  CHECK(run({"validate"}) == 0);
}
