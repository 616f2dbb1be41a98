#include "fdra/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fdra/rng.hpp"

namespace fdra {

namespace {

// Substream tags of the fdra-rng-v1 splitting scheme.
constexpr std::uint64_t kStreamPositions = 1;
constexpr std::uint64_t kStreamFading = 2;
constexpr std::uint64_t kLinkUue = 1;   // UUE -> BS
constexpr std::uint64_t kLinkDue = 2;   // BS -> DUE
constexpr std::uint64_t kLinkCross = 3; // UUE -> DUE

struct Point {
  double x = 0.0;
  double y = 0.0;
};

Point draw_position(std::uint64_t seed, std::uint64_t user_tag,
                    std::uint64_t index, double radius) {
  Rng rng(derive_seed(seed, kStreamPositions, user_tag, index));
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

void ScenarioParams::validate() const {
  if (!(cell_radius_m > 0.0))
    throw std::invalid_argument("ScenarioParams: cell_radius_m must be > 0");
  if (M < 1 || N < 1 || K < 1)
    throw std::invalid_argument("ScenarioParams: M, N, K must be >= 1");
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("ScenarioParams: bandwidth_hz must be > 0");
  if (!(pathloss_exponent > 0.0))
    throw std::invalid_argument(
        "ScenarioParams: pathloss_exponent must be > 0");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0))
    throw std::domain_error("watts_to_dbm: power must be > 0");
  return 10.0 * std::log10(watts) + 30.0;
}

Scenario generate_scenario(const ScenarioParams& params) {
  params.validate();

  Scenario sc;
  sc.M = params.M;
  sc.N = params.N;
  sc.K = params.K;

  const double noise_density_w_hz = dbm_to_watts(params.noise_density_dbm_hz);
  sc.sigma2_B = noise_density_w_hz * (params.bandwidth_hz / params.K);
  sc.sigma2_N = sc.sigma2_B * db_to_linear(params.due_noise_offset_db);
  sc.sigma2_D = sc.sigma2_B * db_to_linear(params.si_over_noise_db);
  sc.P_b = dbm_to_watts(params.bs_power_dbm);
  sc.P_m.assign(params.M, sc.P_b * db_to_linear(params.uue_power_offset_db));

  // 1 m reference gain, set so the median per-subchannel cell-edge SNR is
  // edge_snr_target_db when a 20 dBm BS budget is split equally over the
  // subchannels. Both K factors cancel:
  //   (P/K) g0 R^-alpha median(|h|^2) / (N0 B / K) = target.
  const double median_fading = std::numbers::ln2;  // median of Exp(1)
  const double ref_power_w = dbm_to_watts(20.0);
  const double g0 = db_to_linear(params.edge_snr_target_db) *
                    noise_density_w_hz * params.bandwidth_hz *
                    std::pow(params.cell_radius_m, params.pathloss_exponent) /
                    (ref_power_w * median_fading);

  const auto pathloss = [&](double d) {
    return g0 * std::pow(std::max(d, 1.0), -params.pathloss_exponent);
  };

  const Point bs{0.0, 0.0};
  std::vector<Point> uue(params.M), due(params.N);
  for (int m = 0; m < params.M; ++m)
    uue[m] = draw_position(params.seed, kLinkUue, m, params.cell_radius_m);
  for (int n = 0; n < params.N; ++n)
    due[n] = draw_position(params.seed, kLinkDue, n, params.cell_radius_m);

  const auto faded_row = [&](double pl, std::uint64_t link,
                             std::uint64_t index) {
    Rng rng(derive_seed(params.seed, kStreamFading, link, index));
    std::vector<double> row(params.K);
    for (int k = 0; k < params.K; ++k) row[k] = pl * rng.exponential();
    return row;
  };

  sc.g_ub.resize(params.M);
  for (int m = 0; m < params.M; ++m)
    sc.g_ub[m] = faded_row(pathloss(distance(uue[m], bs)), kLinkUue, m);

  sc.g_bn.resize(params.N);
  for (int n = 0; n < params.N; ++n)
    sc.g_bn[n] = faded_row(pathloss(distance(bs, due[n])), kLinkDue, n);

  sc.g_mn.resize(params.M);
  for (int m = 0; m < params.M; ++m) {
    sc.g_mn[m].resize(params.N);
    for (int n = 0; n < params.N; ++n)
      sc.g_mn[m][n] =
          faded_row(pathloss(distance(uue[m], due[n])), kLinkCross,
                    (static_cast<std::uint64_t>(m) << 32) |
                        static_cast<std::uint64_t>(n));
  }

  sc.validate();
  return sc;
}

PowerAllocation equal_power_allocation(const Scenario& sc,
                                       const Assignment3D& assignment) {
  std::vector<int> owned(sc.M, 0);
  for (const Triple& t : assignment.triples()) ++owned[t.m];

  PowerAllocation pa;
  const double p_down = sc.P_b / sc.K;
  for (const Triple& t : assignment.triples())
    pa.entries[t] = {sc.P_m[t.m] / owned[t.m], p_down};
  return pa;
}

nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["M"] = sc.M;
  j["N"] = sc.N;
  j["K"] = sc.K;
  j["sigma2_D"] = sc.sigma2_D;
  j["sigma2_B"] = sc.sigma2_B;
  j["sigma2_N"] = sc.sigma2_N;
  j["P_b"] = sc.P_b;
  j["P_m"] = sc.P_m;
  j["g_ub"] = sc.g_ub;
  j["g_bn"] = sc.g_bn;
  j["g_mn"] = sc.g_mn;
  return j;
}

namespace {

template <typename T>
T require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name))
    throw std::invalid_argument(std::string("scenario json: missing field '") +
                                name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario json: field '") + name +
                                "': " + e.what());
  }
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  const int version = require_field<int>(j, "version");
  if (version != 1)
    throw std::invalid_argument("scenario json: unsupported version " +
                                std::to_string(version));
  Scenario sc;
  sc.M = require_field<int>(j, "M");
  sc.N = require_field<int>(j, "N");
  sc.K = require_field<int>(j, "K");
  sc.sigma2_D = require_field<double>(j, "sigma2_D");
  sc.sigma2_B = require_field<double>(j, "sigma2_B");
  sc.sigma2_N = require_field<double>(j, "sigma2_N");
  sc.P_b = require_field<double>(j, "P_b");
  sc.P_m = require_field<std::vector<double>>(j, "P_m");
  sc.g_ub = require_field<std::vector<std::vector<double>>>(j, "g_ub");
  sc.g_bn = require_field<std::vector<std::vector<double>>>(j, "g_bn");
  sc.g_mn =
      require_field<std::vector<std::vector<std::vector<double>>>>(j, "g_mn");
  sc.validate();
  return sc;
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("save_scenario: cannot open '" + path + "'");
  out << scenario_to_json(sc).dump(1) << '\n';
  if (!out)
    throw std::runtime_error("save_scenario: write failed for '" + path + "'");
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("load_scenario: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("load_scenario: " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace fdra
