#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <vector>

namespace fdra {

/// Index triple: uplink user m, downlink user n, subchannel k.
struct Triple {
  int m = 0;
  int n = 0;
  int k = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// One problem instance. All quantities are linear SI units: dimensionless
/// power gains, noise powers and budgets in watts. dB/dBm handling lives in
/// scenario.hpp.
struct Scenario {
  int M = 0;  ///< number of uplink users (UUEs)
  int N = 0;  ///< number of downlink users (DUEs)
  int K = 0;  ///< number of subchannels
  std::vector<std::vector<double>> g_ub;               ///< [M][K] UUE->BS gain
  std::vector<std::vector<double>> g_bn;               ///< [N][K] BS->DUE gain
  std::vector<std::vector<std::vector<double>>> g_mn;  ///< [M][N][K] UUE->DUE
  double sigma2_D = 0.0;  ///< residual self-interference power at the BS
  double sigma2_B = 0.0;  ///< BS receiver noise power
  double sigma2_N = 0.0;  ///< DUE receiver noise power
  double P_b = 0.0;       ///< BS total power budget
  std::vector<double> P_m;  ///< [M] per-UUE power budgets

  /// Throws std::invalid_argument on dimension mismatch, negative gains,
  /// nonpositive noise powers or budgets.
  void validate() const;
};

/// Channel gains normalized by the receiver-side noise, in 1/watts.
struct EquivalentGains {
  double a_ub = 0.0;  ///< uplink gain over (sigma2_D + sigma2_B)
  double a_bn = 0.0;  ///< downlink gain over sigma2_N
  double a_mn = 0.0;  ///< cross-interference gain over sigma2_N
};

/// Binary 3D mapping: the chosen (m,n,k) triples, kept sorted and
/// duplicate-free.
class Assignment3D {
 public:
  Assignment3D() = default;

  /// Inserts a triple; throws std::invalid_argument on duplicates.
  void add(const Triple& t);

  bool contains(const Triple& t) const;
  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  friend bool operator==(const Assignment3D&, const Assignment3D&) = default;

 private:
  std::vector<Triple> triples_;  // sorted, unique
};

/// Deterministic initial mapping: pairs (d,d) for d < min(M,N), subchannels
/// dealt round-robin to the pairs. In square mode this is the identity
/// mapping (k,k,k).
Assignment3D identity_assignment(int M, int N, int K);

/// Every subchannel 0..K-1 owned by exactly one triple.
bool covers_subchannels_once(const Assignment3D& a, int K);

/// Full mapping-constraint check for the given dimensions: each subchannel
/// exactly once, indices in range, and when K <= min(M,N) each user at most
/// once (which in square mode M=N=K forces exactly once).
bool satisfies_c4(const Assignment3D& a, int M, int N, int K);

/// Per-triple transmit powers in watts.
struct TriplePowers {
  double up = 0.0;
  double down = 0.0;
};

/// Virtual powers keyed by assignment triples; a triple absent from the map
/// carries zero power.
struct PowerAllocation {
  std::map<Triple, TriplePowers> entries;

  double down_total() const;
  double up_total_for(int m) const;
};

/// a_ub = g_ub/(sigma2_D + sigma2_B), a_bn = g_bn/sigma2_N,
/// a_mn = g_mn/sigma2_N. Throws std::out_of_range on bad indices.
EquivalentGains equivalent_gains(const Scenario& sc, int m, int n, int k);

/// log2(1 + p_up * a_ub), bits/s/Hz. Throws std::domain_error on negative
/// inputs.
double uplink_rate(double p_up, double a_ub);

/// log2(1 + p_down * a_bn / (p_up * a_mn + 1)), bits/s/Hz.
double downlink_rate(double p_down, double p_up, double a_bn, double a_mn);

/// Sum rate of one (m,n,k) transmission pair.
double pair_rate(double p_up, double p_down, const EquivalentGains& g);

/// Sum of pair rates over the assigned triples. Throws
/// std::invalid_argument when an assigned triple has no power entry.
double total_throughput(const Assignment3D& assignment,
                        const PowerAllocation& powers, const Scenario& sc);

}  // namespace fdra
