#include "fdra/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fdra {

namespace {

void check_gain_row(const std::vector<double>& row, int K, const char* name) {
  if (static_cast<int>(row.size()) != K)
    throw std::invalid_argument(std::string("Scenario: ") + name +
                                " row length does not match K");
  for (double g : row)
    if (!(g >= 0.0) || !std::isfinite(g))
      throw std::invalid_argument(std::string("Scenario: ") + name +
                                  " entries must be finite and >= 0");
}

}  // namespace

void Scenario::validate() const {
  if (M < 1 || N < 1 || K < 1)
    throw std::invalid_argument("Scenario: M, N, K must be >= 1");
  if (static_cast<int>(g_ub.size()) != M ||
      static_cast<int>(g_bn.size()) != N ||
      static_cast<int>(g_mn.size()) != M)
    throw std::invalid_argument("Scenario: gain tensor dimensions disagree");
  for (const auto& row : g_ub) check_gain_row(row, K, "g_ub");
  for (const auto& row : g_bn) check_gain_row(row, K, "g_bn");
  for (const auto& plane : g_mn) {
    if (static_cast<int>(plane.size()) != N)
      throw std::invalid_argument("Scenario: g_mn dimensions disagree");
    for (const auto& row : plane) check_gain_row(row, K, "g_mn");
  }
  if (!(sigma2_D >= 0.0) || !(sigma2_B > 0.0) || !(sigma2_N > 0.0))
    throw std::invalid_argument(
        "Scenario: noise powers must be positive (sigma2_D >= 0)");
  if (!(P_b > 0.0))
    throw std::invalid_argument("Scenario: P_b must be positive");
  if (static_cast<int>(P_m.size()) != M)
    throw std::invalid_argument("Scenario: P_m length does not match M");
  for (double p : P_m)
    if (!(p > 0.0))
      throw std::invalid_argument("Scenario: all P_m must be positive");
}

void Assignment3D::add(const Triple& t) {
  auto it = std::lower_bound(triples_.begin(), triples_.end(), t);
  if (it != triples_.end() && *it == t)
    throw std::invalid_argument("Assignment3D: duplicate triple");
  triples_.insert(it, t);
}

bool Assignment3D::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

Assignment3D identity_assignment(int M, int N, int K) {
  if (M < 1 || N < 1 || K < 1)
    throw std::invalid_argument("identity_assignment: M, N, K must be >= 1");
  const int pairs = std::min(M, N);
  Assignment3D a;
  for (int k = 0; k < K; ++k) {
    const int d = k % pairs;
    a.add({d, d, k});
  }
  return a;
}

bool covers_subchannels_once(const Assignment3D& a, int K) {
  std::vector<int> count(static_cast<std::size_t>(K), 0);
  for (const Triple& t : a.triples()) {
    if (t.k < 0 || t.k >= K) return false;
    ++count[static_cast<std::size_t>(t.k)];
  }
  return std::all_of(count.begin(), count.end(),
                     [](int c) { return c == 1; });
}

bool satisfies_c4(const Assignment3D& a, int M, int N, int K) {
  for (const Triple& t : a.triples())
    if (t.m < 0 || t.m >= M || t.n < 0 || t.n >= N) return false;
  if (!covers_subchannels_once(a, K)) return false;
  if (K <= std::min(M, N)) {
    std::vector<int> m_count(static_cast<std::size_t>(M), 0);
    std::vector<int> n_count(static_cast<std::size_t>(N), 0);
    for (const Triple& t : a.triples()) {
      if (++m_count[static_cast<std::size_t>(t.m)] > 1) return false;
      if (++n_count[static_cast<std::size_t>(t.n)] > 1) return false;
    }
  }
  return true;
}

double PowerAllocation::down_total() const {
  double s = 0.0;
  for (const auto& [t, p] : entries) s += p.down;
  return s;
}

double PowerAllocation::up_total_for(int m) const {
  double s = 0.0;
  for (const auto& [t, p] : entries)
    if (t.m == m) s += p.up;
  return s;
}

EquivalentGains equivalent_gains(const Scenario& sc, int m, int n, int k) {
  if (m < 0 || m >= sc.M || n < 0 || n >= sc.N || k < 0 || k >= sc.K)
    throw std::out_of_range("equivalent_gains: index out of range");
  EquivalentGains g;
  g.a_ub = sc.g_ub[m][k] / (sc.sigma2_D + sc.sigma2_B);
  g.a_bn = sc.g_bn[n][k] / sc.sigma2_N;
  g.a_mn = sc.g_mn[m][n][k] / sc.sigma2_N;
  return g;
}

double uplink_rate(double p_up, double a_ub) {
  if (p_up < 0.0 || a_ub < 0.0)
    throw std::domain_error("uplink_rate: negative input");
  return std::log1p(p_up * a_ub) / std::numbers::ln2;
}

double downlink_rate(double p_down, double p_up, double a_bn, double a_mn) {
  if (p_down < 0.0 || p_up < 0.0 || a_bn < 0.0 || a_mn < 0.0)
    throw std::domain_error("downlink_rate: negative input");
  const double denom = p_up * a_mn + 1.0;
  return std::log1p(p_down * a_bn / denom) / std::numbers::ln2;
}

double pair_rate(double p_up, double p_down, const EquivalentGains& g) {
  return uplink_rate(p_up, g.a_ub) +
         downlink_rate(p_down, p_up, g.a_bn, g.a_mn);
}

double total_throughput(const Assignment3D& assignment,
                        const PowerAllocation& powers, const Scenario& sc) {
  double sum = 0.0;
  for (const Triple& t : assignment.triples()) {
    auto it = powers.entries.find(t);
    if (it == powers.entries.end())
      throw std::invalid_argument(
          "total_throughput: assigned triple has no power entry");
    sum += pair_rate(it->second.up, it->second.down,
                     equivalent_gains(sc, t.m, t.n, t.k));
  }
  return sum;
}

}  // namespace fdra
