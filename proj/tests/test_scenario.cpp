#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "fdra/scenario.hpp"

using namespace fdra;

namespace {

ScenarioParams small_params(std::uint64_t seed) {
  ScenarioParams p;
  p.M = 3;
  p.N = 3;
  p.K = 4;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("dBm round trip") {
  for (double dbm : {-126.0, -30.0, 0.0, 15.0, 20.0, 30.0}) {
    CHECK(watts_to_dbm(dbm_to_watts(dbm)) ==
          doctest::Approx(dbm).epsilon(1e-9));
  }
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("noise, self-interference and budget relations") {
  ScenarioParams p = small_params(7);
  p.bs_power_dbm = 20.0;
  const Scenario sc = generate_scenario(p);

  // SI sits 3 dB above the receiver noise power.
  CHECK(sc.sigma2_D / sc.sigma2_B ==
        doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-12));
  CHECK(sc.sigma2_N == sc.sigma2_B);

  // UUE budgets sit 5 dB below the BS budget: 20 dBm -> 15 dBm.
  CHECK(sc.P_b == doctest::Approx(dbm_to_watts(20.0)).epsilon(1e-12));
  for (double pm : sc.P_m)
    CHECK(pm == doctest::Approx(dbm_to_watts(15.0)).epsilon(1e-12));

  // Noise power integrates the density over one subchannel.
  CHECK(sc.sigma2_B ==
        doctest::Approx(dbm_to_watts(-126.0) * 180e3 / p.K).epsilon(1e-12));
}

TEST_CASE("same seed produces a bitwise-identical scenario") {
  const Scenario a = generate_scenario(small_params(1234));
  const Scenario b = generate_scenario(small_params(1234));
  CHECK(a.g_ub == b.g_ub);
  CHECK(a.g_bn == b.g_bn);
  CHECK(a.g_mn == b.g_mn);
  CHECK(a.P_m == b.P_m);
  CHECK(a.sigma2_D == b.sigma2_D);

  const Scenario c = generate_scenario(small_params(1235));
  CHECK(a.g_ub != c.g_ub);
}

TEST_CASE("stream splitting: adding users leaves other draws alone") {
  ScenarioParams p = small_params(77);
  const Scenario base = generate_scenario(p);
  p.M = 5;  // two extra UUEs
  const Scenario wider = generate_scenario(p);
  for (int m = 0; m < 3; ++m) CHECK(base.g_ub[m] == wider.g_ub[m]);
  for (int n = 0; n < 3; ++n) CHECK(base.g_bn[n] == wider.g_bn[n]);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) CHECK(base.g_mn[m][n] == wider.g_mn[m][n]);
}

TEST_CASE("generated gains are strictly positive and finite") {
  const Scenario sc = generate_scenario(small_params(42));
  for (const auto& row : sc.g_ub)
    for (double g : row) {
      CHECK(g > 0.0);
      CHECK(std::isfinite(g));
    }
  for (const auto& plane : sc.g_mn)
    for (const auto& row : plane)
      for (double g : row) CHECK(g > 0.0);
  CHECK_NOTHROW(sc.validate());
}

TEST_CASE("parameter validation") {
  ScenarioParams p = small_params(1);
  p.cell_radius_m = 0.0;
  CHECK_THROWS_AS(generate_scenario(p), std::invalid_argument);
  p = small_params(1);
  p.K = 0;
  CHECK_THROWS_AS(generate_scenario(p), std::invalid_argument);
}

TEST_CASE("equal power split saturates both budgets") {
  SUBCASE("square: each assigned triple gets P_b/K") {
    ScenarioParams p = small_params(3);
    p.K = 4;
    p.M = p.N = 4;
    const Scenario sc = generate_scenario(p);
    const Assignment3D a = identity_assignment(4, 4, 4);
    const PowerAllocation pa = equal_power_allocation(sc, a);
    for (const auto& [t, pw] : pa.entries) {
      CHECK(pw.down == doctest::Approx(sc.P_b / 4).epsilon(1e-12));
      CHECK(pw.up == doctest::Approx(sc.P_m[t.m]).epsilon(1e-12));
    }
  }

  SUBCASE("relaxed: budgets split over owned subchannels") {
    ScenarioParams p = small_params(3);
    p.M = p.N = 2;
    p.K = 8;
    const Scenario sc = generate_scenario(p);
    const Assignment3D a = identity_assignment(2, 2, 8);  // 4 subchannels each
    const PowerAllocation pa = equal_power_allocation(sc, a);
    CHECK(pa.down_total() == doctest::Approx(sc.P_b).epsilon(1e-12));
    for (int m = 0; m < 2; ++m) {
      CHECK(pa.up_total_for(m) == doctest::Approx(sc.P_m[m]).epsilon(1e-12));
      for (const auto& [t, pw] : pa.entries)
        if (t.m == m)
          CHECK(pw.up == doctest::Approx(sc.P_m[m] / 4).epsilon(1e-12));
    }
  }
}

TEST_CASE("scenario JSON round trip and diagnostics") {
  const Scenario sc = generate_scenario(small_params(2025));
  const auto path =
      (std::filesystem::temp_directory_path() / "fdra_test_scenario.json")
          .string();
  save_scenario(sc, path);
  const Scenario back = load_scenario(path);
  CHECK(back.M == sc.M);
  CHECK(back.g_ub == sc.g_ub);
  CHECK(back.g_bn == sc.g_bn);
  CHECK(back.g_mn == sc.g_mn);
  CHECK(back.P_b == sc.P_b);
  CHECK(back.sigma2_D == sc.sigma2_D);
  std::remove(path.c_str());

  nlohmann::json j = scenario_to_json(sc);
  j.erase("g_ub");
  CHECK_THROWS_WITH_AS(scenario_from_json(j),
                       doctest::Contains("g_ub"), std::invalid_argument);
  j = scenario_to_json(sc);
  j["version"] = 9;
  CHECK_THROWS_AS(scenario_from_json(j), std::invalid_argument);

  CHECK_THROWS_AS(load_scenario("/nonexistent/nowhere.json"),
                  std::runtime_error);
}
