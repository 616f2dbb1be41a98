#include "fdra/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fdra {

namespace {

const std::vector<std::string> kExperiments = {
    "assign-compare", "joint-compare", "sweep", "gen", "solve"};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

bool exhaustive_feasible(const ScenarioParams& p) {
  return p.M == p.N && p.N == p.K && p.K <= 8;
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) ==
      kExperiments.end())
    throw std::invalid_argument("RunConfig: unknown experiment '" +
                                experiment + "'");
  if (bs_power_sweep_dbm.empty())
    throw std::invalid_argument("RunConfig: bs_power_sweep_dbm is empty");
  if (!std::is_sorted(bs_power_sweep_dbm.begin(), bs_power_sweep_dbm.end(),
                      std::less_equal<double>()))
    throw std::invalid_argument(
        "RunConfig: bs_power_sweep_dbm must be strictly ascending");
  if (trials < 1) throw std::invalid_argument("RunConfig: trials must be >= 1");
  if (hungarian_iterations < 1)
    throw std::invalid_argument("RunConfig: hungarian_iterations must be >= 1");
  scenario.validate();
}

namespace {

template <typename T>
void read_opt(const nlohmann::json& j, const char* name, T& into) {
  if (!j.contains(name)) return;
  try {
    into = j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config json: field '") + name +
                                "': " + e.what());
  }
}

ScenarioParams scenario_params_from_json(const nlohmann::json& j) {
  ScenarioParams p;
  read_opt(j, "cell_radius_m", p.cell_radius_m);
  read_opt(j, "M", p.M);
  read_opt(j, "N", p.N);
  read_opt(j, "K", p.K);
  read_opt(j, "noise_density_dbm_hz", p.noise_density_dbm_hz);
  read_opt(j, "bandwidth_hz", p.bandwidth_hz);
  read_opt(j, "si_over_noise_db", p.si_over_noise_db);
  read_opt(j, "bs_power_dbm", p.bs_power_dbm);
  read_opt(j, "uue_power_offset_db", p.uue_power_offset_db);
  read_opt(j, "pathloss_exponent", p.pathloss_exponent);
  read_opt(j, "edge_snr_target_db", p.edge_snr_target_db);
  read_opt(j, "due_noise_offset_db", p.due_noise_offset_db);
  read_opt(j, "seed", p.seed);
  return p;
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  read_opt(j, "experiment", c.experiment);
  if (j.contains("scenario"))
    c.scenario = scenario_params_from_json(j.at("scenario"));
  read_opt(j, "bs_power_sweep_dbm", c.bs_power_sweep_dbm);
  read_opt(j, "trials", c.trials);
  read_opt(j, "scheme", c.scheme);
  read_opt(j, "input_path", c.input_path);
  read_opt(j, "output_path", c.output_path);
  if (j.contains("output_format")) {
    const auto f = j.at("output_format").get<std::string>();
    if (f == "csv")
      c.format = OutputFormat::kCsv;
    else if (f == "json")
      c.format = OutputFormat::kJson;
    else
      throw std::invalid_argument("config json: unknown output_format '" + f +
                                  "'");
  }
  if (j.contains("dual")) {
    const auto& d = j.at("dual");
    read_opt(d, "max_iters", c.dual.max_iters);
    read_opt(d, "eps_gap", c.dual.eps_gap);
    read_opt(d, "pi0", c.dual.pi0);
  }
  read_opt(j, "hungarian_iterations", c.hungarian_iterations);
  c.dual.hungarian_iterations = c.hungarian_iterations;
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("load_run_config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("load_run_config: " + path + ": " + e.what());
  }
  return run_config_from_json(j);
}

void write_result_csv(const RunResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : result.rows) {
    out << format_double(r.bs_power_dbm) << ',' << r.scheme << ',' << r.seed
        << ',' << format_double(r.throughput_bps) << ','
        << format_double(r.runtime_ms) << ',';
    if (r.duality_gap) out << format_double(*r.duality_gap);
    out << '\n';
  }
}

void write_result_json(const RunResult& result, std::ostream& out) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["rows"] = nlohmann::json::array();
  for (const ResultRow& r : result.rows) {
    nlohmann::ordered_json row;
    row["bs_power_dbm"] = r.bs_power_dbm;
    row["scheme"] = r.scheme;
    row["seed"] = r.seed;
    row["throughput_bps"] = r.throughput_bps;
    row["runtime_ms"] = r.runtime_ms;
    row["duality_gap"] =
        r.duality_gap ? nlohmann::ordered_json(*r.duality_gap)
                      : nlohmann::ordered_json(nullptr);
    j["rows"].push_back(row);
  }
  out << j.dump(1) << '\n';
}

void write_result(const RunResult& result, std::ostream& out,
                  OutputFormat format) {
  if (format == OutputFormat::kCsv)
    write_result_csv(result, out);
  else
    write_result_json(result, out);
}

RateTensor equal_power_rate_tensor(const Scenario& sc) {
  const double p_down = sc.P_b / sc.K;
  const double share =
      std::max(1.0, static_cast<double>(sc.K) / std::min(sc.M, sc.N));
  RateTensor rates(sc.M, sc.N, sc.K);
  for (int m = 0; m < sc.M; ++m) {
    const double p_up = sc.P_m[m] / share;
    for (int n = 0; n < sc.N; ++n)
      for (int k = 0; k < sc.K; ++k)
        rates.at(m, n, k) =
            pair_rate(p_up, p_down, equivalent_gains(sc, m, n, k));
  }
  return rates;
}

double scheme_throughput_bps(const Scenario& sc, double bandwidth_hz,
                             const std::string& scheme, std::uint64_t seed,
                             const JointConfig& dual, int hungarian_iterations,
                             std::optional<double>* gap_out) {
  const double hz_per_subchannel = bandwidth_hz / sc.K;
  if (gap_out) gap_out->reset();

  if (scheme == "joint") {
    const JointSolution sol = solve_joint(sc, dual);
    if (gap_out) *gap_out = sol.gap;
    return sol.primal_value * hz_per_subchannel;
  }

  const RateTensor rates = equal_power_rate_tensor(sc);
  Assignment3D mapping;
  if (scheme == "proposed" || scheme == "equal") {
    mapping = iterative_hungarian_3d(rates,
                                     identity_assignment(sc.M, sc.N, sc.K),
                                     hungarian_iterations);
  } else if (scheme == "exhaustive") {
    mapping = exhaustive_3d(rates).first;
  } else if (scheme == "random") {
    mapping = random_3d(rates, seed);
  } else if (scheme == "greedy") {
    mapping = greedy_3d(rates);
  } else {
    throw std::invalid_argument("unknown scheme '" + scheme + "'");
  }
  const double spectral =
      total_throughput(mapping, equal_power_allocation(sc, mapping), sc);
  return spectral * hz_per_subchannel;
}

namespace {

RunResult compare_over_sweep(const RunConfig& config,
                             const std::vector<std::string>& schemes,
                             bool with_gap) {
  config.validate();
  RunResult result;
  for (double power_dbm : config.bs_power_sweep_dbm) {
    for (int trial = 0; trial < config.trials; ++trial) {
      ScenarioParams params = config.scenario;
      params.bs_power_dbm = power_dbm;
      params.seed = config.scenario.seed + static_cast<std::uint64_t>(trial);
      const Scenario sc = generate_scenario(params);
      for (const std::string& scheme : schemes) {
        const auto start = std::chrono::steady_clock::now();
        std::optional<double> gap;
        const double bps = scheme_throughput_bps(
            sc, params.bandwidth_hz, scheme, params.seed, config.dual,
            config.hungarian_iterations, with_gap ? &gap : nullptr);
        result.rows.push_back({power_dbm, scheme, params.seed, bps,
                               elapsed_ms(start), gap});
      }
    }
  }
  return result;
}

}  // namespace

RunResult assign_compare(const RunConfig& config) {
  std::vector<std::string> schemes = {"proposed", "random", "greedy"};
  // Exhaustive search blows up factorially; emit it only at desk scale.
  if (exhaustive_feasible(config.scenario))
    schemes.insert(schemes.begin(), "exhaustive");
  return compare_over_sweep(config, schemes, false);
}

RunResult joint_compare(const RunConfig& config) {
  return compare_over_sweep(config, {"joint", "equal"}, true);
}

RunResult sweep_scheme(const RunConfig& config) {
  if (config.scheme.empty())
    throw std::invalid_argument("sweep: --scheme is required");
  return compare_over_sweep(config, {config.scheme},
                            config.scheme == "joint");
}

RunResult solve_file(const RunConfig& config) {
  if (config.scheme.empty())
    throw std::invalid_argument("solve: --scheme is required");
  if (config.input_path.empty())
    throw std::invalid_argument("solve: input scenario path is required");
  const Scenario sc = load_scenario(config.input_path);

  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  std::optional<double> gap;
  const double bps = scheme_throughput_bps(
      sc, config.scenario.bandwidth_hz, config.scheme, config.scenario.seed,
      config.dual, config.hungarian_iterations, &gap);
  result.rows.push_back({watts_to_dbm(sc.P_b), config.scheme,
                         config.scenario.seed, bps, elapsed_ms(start), gap});
  return result;
}

}  // namespace fdra
