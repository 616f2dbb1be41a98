#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>

#include "fdra/experiments.hpp"

using namespace fdra;

namespace {

RunConfig small_config(const std::string& experiment) {
  RunConfig c;
  c.experiment = experiment;
  c.scenario.M = 3;
  c.scenario.N = 3;
  c.scenario.K = 3;
  c.scenario.seed = 11;
  c.bs_power_sweep_dbm = {10.0, 20.0};
  c.trials = 2;
  return c;
}

std::map<std::string, double> mean_by_scheme(const RunResult& r,
                                             double power_dbm) {
  std::map<std::string, double> sum;
  std::map<std::string, int> count;
  for (const ResultRow& row : r.rows) {
    if (row.bs_power_dbm != power_dbm) continue;
    sum[row.scheme] += row.throughput_bps;
    ++count[row.scheme];
  }
  for (auto& [k, v] : sum) v /= count[k];
  return sum;
}

}  // namespace

TEST_CASE("config validation") {
  RunConfig c = small_config("assign-compare");
  CHECK_NOTHROW(c.validate());

  c.bs_power_sweep_dbm = {};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.bs_power_sweep_dbm = {20.0, 10.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = small_config("nonsense");
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = small_config("assign-compare");
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("config json parsing with defaults and overrides") {
  const auto j = nlohmann::json::parse(R"({
    "experiment": "assign-compare",
    "scenario": {"M": 2, "N": 2, "K": 4, "seed": 9},
    "bs_power_sweep_dbm": [12, 18],
    "trials": 3,
    "output_format": "json",
    "dual": {"max_iters": 111}
  })");
  const RunConfig c = run_config_from_json(j);
  CHECK(c.scenario.M == 2);
  CHECK(c.scenario.K == 4);
  CHECK(c.scenario.seed == 9);
  CHECK(c.scenario.bandwidth_hz == 180e3);  // untouched default
  CHECK(c.bs_power_sweep_dbm == std::vector<double>{12, 18});
  CHECK(c.trials == 3);
  CHECK(c.format == OutputFormat::kJson);
  CHECK(c.dual.max_iters == 111);

  CHECK_THROWS_AS(
      run_config_from_json(nlohmann::json::parse(R"({"output_format":"xml"})")),
      std::invalid_argument);
}

TEST_CASE("equal-power tensor matches direct recomputation") {
  ScenarioParams p;
  p.M = p.N = 2;
  p.K = 4;
  p.seed = 3;
  const Scenario sc = generate_scenario(p);
  const RateTensor rates = equal_power_rate_tensor(sc);
  // Expected planning split: p_down = P_b/K, p_up = P_m / (K/min(M,N)).
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int k = 0; k < 4; ++k)
        CHECK(rates.at(m, n, k) ==
              doctest::Approx(pair_rate(sc.P_m[m] / 2.0, sc.P_b / 4.0,
                                        equivalent_gains(sc, m, n, k)))
                  .epsilon(1e-12));
}

TEST_CASE("assign-compare emits one row per power, scheme and trial") {
  const RunConfig c = small_config("assign-compare");
  const RunResult r = assign_compare(c);
  // Square 3x3x3: exhaustive included -> 4 schemes x 2 powers x 2 trials.
  CHECK(r.rows.size() == 16);
  for (const ResultRow& row : r.rows) {
    CHECK(row.throughput_bps >= 0.0);
    CHECK_FALSE(row.duality_gap.has_value());
  }
  for (double power : c.bs_power_sweep_dbm) {
    const auto means = mean_by_scheme(r, power);
    CHECK(means.at("exhaustive") >= means.at("proposed") - 1e-9);
    CHECK(means.at("proposed") >= means.at("greedy") - 1e-9);
    CHECK(means.at("proposed") >= means.at("random") - 1e-9);
  }
}

TEST_CASE("assign-compare omits exhaustive off square-small instances") {
  RunConfig c = small_config("assign-compare");
  c.scenario.K = 6;  // relaxed
  c.trials = 1;
  const RunResult r = assign_compare(c);
  for (const ResultRow& row : r.rows) CHECK(row.scheme != "exhaustive");
  CHECK(r.rows.size() == 6);  // 3 schemes x 2 powers
}

TEST_CASE("joint-compare rows carry the gap and beat equal power") {
  RunConfig c = small_config("joint-compare");
  c.scenario.K = 4;
  c.scenario.M = c.scenario.N = 2;
  c.trials = 1;
  c.dual.max_iters = 300;
  const RunResult r = joint_compare(c);
  CHECK(r.rows.size() == 4);  // 2 schemes x 2 powers
  for (double power : c.bs_power_sweep_dbm) {
    double joint = -1, equal = -1;
    for (const ResultRow& row : r.rows) {
      if (row.bs_power_dbm != power) continue;
      if (row.scheme == "joint") {
        joint = row.throughput_bps;
        CHECK(row.duality_gap.has_value());
      } else {
        CHECK(row.scheme == "equal");
        equal = row.throughput_bps;
      }
    }
    CHECK(joint >= equal - 1e-9);
  }
}

TEST_CASE("csv output is schema-stable") {
  RunResult r;
  r.rows.push_back({10.0, "greedy", 7, 123.5, 0.25, std::nullopt});
  r.rows.push_back({10.0, "joint", 7, 150.0, 1.5, 0.01});
  std::ostringstream out;
  write_result_csv(r, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kCsvHeader);
  std::getline(in, line);
  CHECK(line == "10,greedy,7,123.5,0.25,");
  std::getline(in, line);
  CHECK(line == "10,joint,7,150,1.5,0.01");
}

TEST_CASE("json output carries null gaps") {
  RunResult r;
  r.rows.push_back({10.0, "greedy", 7, 123.5, 0.25, std::nullopt});
  std::ostringstream out;
  write_result_json(r, out);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j.at("rows").size() == 1);
  CHECK(j.at("rows")[0].at("duality_gap").is_null());
  CHECK(j.at("rows")[0].at("scheme") == "greedy");
}

TEST_CASE("experiment reruns are identical modulo runtime") {
  const RunConfig c = small_config("assign-compare");
  const RunResult a = assign_compare(c);
  const RunResult b = assign_compare(c);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].bs_power_dbm == b.rows[i].bs_power_dbm);
    CHECK(a.rows[i].scheme == b.rows[i].scheme);
    CHECK(a.rows[i].seed == b.rows[i].seed);
    CHECK(a.rows[i].throughput_bps == b.rows[i].throughput_bps);
  }
}

TEST_CASE("solve on a generated file reproduces library results") {
  ScenarioParams p;
  p.M = p.N = p.K = 3;
  p.seed = 21;
  const Scenario sc = generate_scenario(p);
  const auto path =
      (std::filesystem::temp_directory_path() / "fdra_test_solve.json").string();
  save_scenario(sc, path);

  RunConfig c;
  c.experiment = "solve";
  c.scheme = "exhaustive";
  c.input_path = path;
  c.scenario = p;

  const RunResult r = solve_file(c);
  REQUIRE(r.rows.size() == 1);

  const RateTensor rates = equal_power_rate_tensor(sc);
  const Assignment3D best = exhaustive_3d(rates).first;
  const double expect =
      total_throughput(best, equal_power_allocation(sc, best), sc) *
      (p.bandwidth_hz / p.K);
  CHECK(r.rows[0].throughput_bps == doctest::Approx(expect).epsilon(1e-12));
  CHECK(r.rows[0].bs_power_dbm == doctest::Approx(20.0).epsilon(1e-9));

  const RunResult again = solve_file(c);
  CHECK(again.rows[0].throughput_bps == r.rows[0].throughput_bps);
  std::remove(path.c_str());

  c.scheme = "no-such-scheme";
  CHECK_THROWS_AS(solve_file(c), std::invalid_argument);
}
