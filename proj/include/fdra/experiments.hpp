#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdra/dualopt.hpp"
#include "fdra/mapping3d.hpp"
#include "fdra/scenario.hpp"

namespace fdra {

enum class OutputFormat { kCsv, kJson };

/// Parameters of one experiment run; mirrors the JSON config file.
struct RunConfig {
  std::string experiment;  ///< assign-compare | joint-compare | sweep | gen | solve
  ScenarioParams scenario;
  std::vector<double> bs_power_sweep_dbm = {10, 15, 20, 25, 30};
  int trials = 1;
  std::string scheme;       ///< for sweep and solve
  std::string input_path;   ///< scenario file, for solve
  std::string output_path;  ///< empty means stdout
  OutputFormat format = OutputFormat::kCsv;
  JointConfig dual;
  int hungarian_iterations = 5;

  void validate() const;
};

RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// One emitted metrics row.
struct ResultRow {
  double bs_power_dbm = 0.0;
  std::string scheme;
  std::uint64_t seed = 0;
  double throughput_bps = 0.0;
  double runtime_ms = 0.0;
  std::optional<double> duality_gap;
};

struct RunResult {
  std::vector<ResultRow> rows;
};

inline constexpr const char* kCsvHeader =
    "bs_power_dbm,scheme,seed,throughput_bps,runtime_ms,duality_gap";

void write_result_csv(const RunResult& result, std::ostream& out);
void write_result_json(const RunResult& result, std::ostream& out);
void write_result(const RunResult& result, std::ostream& out,
                  OutputFormat format);

/// Per-triple rates under the a-priori equal power split: P_b/K of downlink
/// power per subchannel and each UUE budget divided by the subchannels one
/// user is expected to own (K / min(M,N), at least one).
RateTensor equal_power_rate_tensor(const Scenario& sc);

/// System throughput in bits/s of a named mapping scheme under equal
/// power: one of proposed, exhaustive, random, greedy, equal ("equal" is
/// the proposed mapping under its equal-power evaluation), or joint for
/// the full dual solver. `gap_out`, when non-null, receives the duality
/// gap for the joint scheme.
double scheme_throughput_bps(const Scenario& sc, double bandwidth_hz,
                             const std::string& scheme, std::uint64_t seed,
                             const JointConfig& dual, int hungarian_iterations,
                             std::optional<double>* gap_out = nullptr);

/// Fig.-1-style study: per swept BS power and trial, evaluates the
/// proposed mapping against the exhaustive, random and greedy baselines
/// under equal power. The exhaustive rows appear only on square instances
/// with K <= 8.
RunResult assign_compare(const RunConfig& config);

/// Fig.-2-style study: per swept BS power and trial, the joint solver
/// (with its duality gap) against equal power on the proposed mapping.
RunResult joint_compare(const RunConfig& config);

/// One named scheme across the BS-power sweep.
RunResult sweep_scheme(const RunConfig& config);

/// Runs config.scheme on the scenario loaded from config.input_path.
RunResult solve_file(const RunConfig& config);

}  // namespace fdra
