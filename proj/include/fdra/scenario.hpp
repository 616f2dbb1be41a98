#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fdra/model.hpp"

namespace fdra {

/// Simulation-setup parameters. Angles of attack: a disc cell with the BS
/// at the center, log-distance path loss with i.i.d. per-subchannel
/// Rayleigh fading, and noise given as a spectral density over a shared
/// bandwidth.
struct ScenarioParams {
  double cell_radius_m = 200.0;
  int M = 8;
  int N = 8;
  int K = 64;
  double noise_density_dbm_hz = -126.0;
  double bandwidth_hz = 180e3;
  double si_over_noise_db = 3.0;      ///< sigma2_D over sigma2_B
  double bs_power_dbm = 20.0;         ///< P_b; the usual sweep variable
  double uue_power_offset_db = -5.0;  ///< P_m relative to P_b
  double pathloss_exponent = 3.7;
  /// Calibrates the 1 m reference gain: median per-subchannel cell-edge SNR
  /// under equal power at a 20 dBm BS budget.
  double edge_snr_target_db = 10.0;
  double due_noise_offset_db = 0.0;  ///< sigma2_N over sigma2_B
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Draws user positions uniformly in the cell disc and per-subchannel
/// gains as pathloss(distance) times unit-mean exponential fading. Fully
/// determined by params.seed; position and fading substreams are split per
/// user and per link (scheme fdra-rng-v1), so changing M or N does not
/// perturb the other draws.
Scenario generate_scenario(const ScenarioParams& params);

/// Baseline power split: every assigned triple gets P_b/K of downlink
/// power, and each UUE divides its budget equally over the subchannels it
/// owns. Budgets hold with equality for every user that owns at least one
/// subchannel.
PowerAllocation equal_power_allocation(const Scenario& sc,
                                       const Assignment3D& assignment);

/// Versioned JSON document (schema version 1): counts, noise powers,
/// budgets and nested gain arrays, all in linear SI units.
nlohmann::ordered_json scenario_to_json(const Scenario& sc);

/// Throws std::invalid_argument naming the offending field.
Scenario scenario_from_json(const nlohmann::json& j);

void save_scenario(const Scenario& sc, const std::string& path);

/// Throws std::runtime_error with file/position diagnostics on parse
/// failure, std::invalid_argument on schema violations.
Scenario load_scenario(const std::string& path);

}  // namespace fdra
