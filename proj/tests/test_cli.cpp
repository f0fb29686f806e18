#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "kfp/asymptotics.hpp"
#include "kfp/cli.hpp"

using namespace kfp;
using doctest::Approx;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

TEST_CASE("spectrum table for a=14 matches the golden report") {
  const Result r = run({"spectrum", "--a", "14", "--b", "5,10,100,200,800"});
  CHECK(r.code == 0);
  CHECK(r.out == read_file(KFP_GOLDEN_DIR "/spectrum_a14.txt"));
}

TEST_CASE("spectrum table columns") {
  const Result r = run({"spectrum", "--a", "14", "--b", "100", "--b", "200"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("100.0000000 | 0.0013940 | 0.0014000") != std::string::npos);
  CHECK(r.out.find("200.0000000 | 0.0003496 | 0.0003500") != std::string::npos);

  // Tabulated rows within one unit of the last printed digit; b=5 is the
  // corrected 0.2210337 (see the 7-digit check in the spectrum tests).
  const double b[] = {10, 100, 200, 800};
  const double tab[] = {0.0992201, 0.0013940, 0.0003496, 0.0000219};
  const double ulp[] = {1e-7, 1e-7, 1e-7, 1e-7};
  for (int i = 0; i < 4; ++i) {
    const Result row = run({"spectrum", "--a", "14", "--b", fmt17(b[i])});
    const std::string last = row.out.substr(row.out.rfind('\n', row.out.size() - 2) + 1);
    const double v = std::stod(last.substr(last.find(" | ") + 3, 9));
    CHECK(std::abs(v - tab[i]) <= ulp[i] * (1 + 1e-9));
  }
}

TEST_CASE("spectrum at the degenerate point marks a/b^2") {
  const Result r = run({"spectrum", "--a", "0.25", "--b", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.0000000 | 0.5000000 | —") != std::string::npos);
}

TEST_CASE("invalid parameters exit 2") {
  CHECK(run({"spectrum", "--a", "-1", "--b", "1"}).code == 2);
  CHECK(run({"spectrum", "--a", "1"}).code == 2);
  CHECK(run({"norm-sweep", "--a", "0", "--b", "1"}).code == 2);
  CHECK(run({"norm-sweep", "--a", "1", "--b", "1", "--t-min", "2", "--t-max", "1"}).code == 2);
  CHECK(run({"norm-sweep", "--a", "1", "--b", "1", "--steps", "1"}).code == 2);
  CHECK(run({"norm-sweep", "--a", "1", "--b", "1", "--scale", "log"}).code == 2);
  CHECK(run({"norm-sweep", "--a", "1", "--b", "1", "--format", "xml"}).code == 2);
  CHECK(run({"norm-sweep", "--a", "1", "--b", "0", "--envelope", "long-time"}).code == 2);
  CHECK(run({"regimes", "--a", "8", "--b", "0"}).code == 2);
  CHECK(run({"periodicity", "--a", "0.2"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("zero-field sweep is periodic after rate compensation") {
  const double T = 4 * std::numbers::pi / std::sqrt(95.0);
  const Result first = run({"norm-sweep", "--a", "24", "--b", "0", "--t-min", "0", "--t-max", fmt17(3 * T), "--steps",
                            "600", "--rate-compensated"});
  const Result shifted = run({"norm-sweep", "--a", "24", "--b", "0", "--t-min", fmt17(T), "--t-max", fmt17(4 * T),
                              "--steps", "600", "--rate-compensated"});
  REQUIRE(first.code == 0);
  REQUIRE(shifted.code == 0);
  const auto x = parse_csv(first.out);
  const auto y = parse_csv(shifted.out);
  REQUIRE(x.size() == 601);
  REQUIRE(y.size() == 601);
  double worst = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    CHECK(x[i][5] == "oracle");
    worst = std::max(worst, std::abs(std::stod(x[i][2]) - std::stod(y[i][2])));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("long sweep approaches sqrt(R1)") {
  const Result r = run({"norm-sweep", "--a", "8", "--b", "12", "--t-min", "0", "--t-max", "30", "--steps", "301",
                        "--rate-compensated"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  const double last = std::stod(rows.back()[1]);
  const double target = long_time_estimate(Params(8, 12)).sqrt_r1;
  CHECK(std::abs(last / target - 1) <= 0.01);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][5] == "closed-form");
}

TEST_CASE("degenerate sweep at t = 0") {
  const Result r = run({"norm-sweep", "--a", "1", "--b", "1", "--t-min", "0", "--t-max", "0", "--steps", "2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"t", "norm", "log_norm", "envelope_low", "envelope_high", "source"});
  CHECK(rows[1][1] == "1");
  CHECK(rows[2][1] == "1");
}

TEST_CASE("csv is bit-stable, thread-count independent and matches the golden file") {
  const std::vector<std::string> args{"norm-sweep", "--a", "2", "--b", "3", "--t-min", "0.01", "--t-max", "20",
                                      "--steps", "12", "--scale", "log", "--envelope", "long-time"};
  const Result one = run(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "4"});
  CHECK(one.code == 0);
  CHECK(one.out == run(args).out);
  CHECK(one.out == run(threaded).out);
  CHECK(one.out == read_file(KFP_GOLDEN_DIR "/sweep_a2_b3_log.csv"));
}

TEST_CASE("csv rows: norm = exp(log_norm), envelope brackets sqrt(R1)") {
  const Result r = run({"norm-sweep", "--a", "8", "--b", "12", "--t-min", "5", "--t-max", "40", "--steps", "36",
                        "--rate-compensated", "--envelope", "long-time", "--envelope-c", "50"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  const double s = long_time_estimate(Params(8, 12)).sqrt_r1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double norm = std::stod(rows[i][1]);
    CHECK(norm == Approx(std::exp(std::stod(rows[i][2]))).epsilon(1e-12));
    CHECK(std::stod(rows[i][3]) <= s);
    CHECK(std::stod(rows[i][4]) >= s);
    CHECK(norm >= std::stod(rows[i][3]));
    CHECK(norm <= std::stod(rows[i][4]));
  }
}

TEST_CASE("json output") {
  const Result r = run({"norm-sweep", "--a", "1", "--b", "0", "--t-max", "2", "--steps", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 3);
  CHECK(j[0]["t"] == 0.0);
  CHECK(j[0]["norm"].get<double>() == Approx(1.0));
  CHECK(j[1]["envelope_low"].is_null());
  CHECK(j[2]["source"] == "oracle");
  CHECK(j[2]["log_norm"].get<double>() == Approx(std::log(j[2]["norm"].get<double>())).epsilon(1e-12));
}

TEST_CASE("svg plot") {
  const std::string path = "kfp_test_plot.svg";
  std::remove(path.c_str());
  const Result r = run({"norm-sweep", "--a", "8", "--b", "12", "--t-max", "10", "--steps", "50", "--svg", path,
                        "--envelope", "long-time"});
  REQUIRE(r.code == 0);
  const std::string svg = read_file(path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("validate examples") {
  const Result ok = run({"validate", "--seed", "1", "--cases", "200"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("norm") != std::string::npos);
  const auto suites = cli::run_validation(1, 200);
  REQUIRE(suites.size() == 4);
  CHECK(suites[0].name == "norm");
  CHECK(suites[0].worst <= 1e-9);

  const Result vacuous = run({"validate", "--seed", "1", "--cases", "0"});
  CHECK(vacuous.code == 0);
  CHECK(vacuous.err.find("warning") != std::string::npos);

  CHECK(run({"validate", "--seed", "2", "--cases", "200", "--tol", "1e-15"}).code == 1);
}

TEST_CASE("tolerance precedence: flag over KFP_TOL over defaults") {
  ::setenv("KFP_TOL", "1e-15", 1);
  CHECK(cli::resolve_tol(std::nullopt) == 1e-15);
  CHECK(cli::resolve_tol(1e-3) == 1e-3);
  CHECK(run({"validate", "--seed", "2", "--cases", "20"}).code == 1);
  CHECK(run({"validate", "--seed", "2", "--cases", "20", "--tol", "1e-6"}).code == 0);
  ::setenv("KFP_TOL", "garbage", 1);
  CHECK_FALSE(cli::resolve_tol(std::nullopt).has_value());
  ::unsetenv("KFP_TOL");
  CHECK_FALSE(cli::resolve_tol(std::nullopt).has_value());
}

TEST_CASE("regimes: large-b ratios follow b^-3") {
  const Result r = run({"regimes", "--a", "8", "--b", "25,50,100", "--regime", "large-b"});
  REQUIRE(r.code == 0);
  std::vector<double> ratios;
  for (const auto& row : parse_csv(r.out))
    if (row[2] == "ratio_to_previous") ratios.push_back(std::stod(row[3]));
  REQUIRE(ratios.size() == 2);
  for (double q : ratios) CHECK(q == Approx(8.0).epsilon(0.05));
}

TEST_CASE("regimes: small-t slope and long-t projector agreement") {
  const Result s = run({"regimes", "--a", "1", "--b", "2", "--regime", "small-t"});
  REQUIRE(s.code == 0);
  const auto srows = parse_csv(s.out);
  REQUIRE(srows.size() == 2);
  const double slope = std::stod(srows[1][3]);
  CHECK(slope >= 6.5);
  CHECK(slope <= 7.5);

  const Result l = run({"regimes", "--a", "8", "--b", "12", "--regime", "long-t", "--format", "json"});
  REQUIRE(l.code == 0);
  const auto j = nlohmann::json::parse(l.out);
  bool seen = false;
  for (const auto& row : j)
    if (row["quantity"] == "projector_max_diff") {
      CHECK(row["value"].get<double>() <= 1e-10);
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("periodicity command") {
  const Result r = run({"periodicity", "--a", "24"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][1]) == Approx(4 * std::numbers::pi / std::sqrt(95.0)).epsilon(1e-15));
  CHECK(std::stod(rows[1][2]) <= 1e-9);
}

TEST_CASE("sweep spec grid") {
  cli::SweepSpec s;
  s.t_min = 1;
  s.t_max = 100;
  s.steps = 3;
  s.scale = cli::Scale::Log;
  const auto g = s.grid();
  CHECK(g[0] == 1.0);
  CHECK(g[1] == Approx(10.0).epsilon(1e-14));
  CHECK(g[2] == 100.0);
}
