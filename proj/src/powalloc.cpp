#include "fdra/powalloc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fdra {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_gains(const EquivalentGains& g) {
  if (!(g.a_ub >= 0.0) || !(g.a_bn >= 0.0) || !(g.a_mn >= 0.0) ||
      !std::isfinite(g.a_ub) || !std::isfinite(g.a_bn) || !std::isfinite(g.a_mn))
    throw std::domain_error("solve_inner: gains must be finite and >= 0");
}

}  // namespace

double best_response_down(double p_up, double a_bn, double a_mn,
                          double lambda_b) {
  if (!(lambda_b > 0.0))
    throw std::domain_error(
        "best_response_down: lambda_b <= 0 makes the problem unbounded");
  if (p_up < 0.0 || a_bn < 0.0 || a_mn < 0.0)
    throw std::domain_error("best_response_down: negative input");
  if (a_bn == 0.0) return 0.0;  // downlink term vanishes, power only costs
  const double water_level = 1.0 / (lambda_b * kLn2);
  const double floor = (p_up * a_mn + 1.0) / a_bn;
  return std::max(0.0, water_level - floor);
}

InnerSolution solve_inner(const EquivalentGains& gains, double lambda_m,
                          double lambda_b) {
  if (!(lambda_m > 0.0) || !(lambda_b > 0.0))
    throw std::domain_error(
        "solve_inner: nonpositive prices make the problem unbounded");
  check_gains(gains);

  const double a_ub = gains.a_ub;
  const double a_bn = gains.a_bn;
  const double a_mn = gains.a_mn;
  const double p_max = 1.0 / (lambda_m * kLn2);

  const auto payoff = [&](double p_up) {
    const double p_down = best_response_down(p_up, a_bn, a_mn, lambda_b);
    return pair_rate(p_up, p_down, gains) - lambda_m * p_up -
           lambda_b * p_down;
  };

  std::vector<double> candidates = {0.0, p_max};
  const auto consider = [&](double u) {
    if (std::isfinite(u) && u > 0.0 && u < p_max) candidates.push_back(u);
  };

  // Stationary point with the downlink at zero power.
  if (a_ub > 0.0) consider(p_max - 1.0 / a_ub);

  if (a_bn > 0.0) {
    const double water_level = 1.0 / (lambda_b * kLn2);
    // Uplink power at which the downlink water level meets its floor.
    if (a_mn > 0.0) consider((water_level * a_bn - 1.0) / a_mn);

    // Stationary points with the downlink active. Substituting the water-
    // filling response reduces the objective's derivative to
    //   (a_ub - a_mn) / ((1 + a_ub u)(1 + a_mn u) ln 2) - lambda_m
    //     + lambda_b a_mn / a_bn,
    // so stationarity is the quadratic (1 + a_ub u)(1 + a_mn u) = rhs.
    const double gamma = (lambda_m - lambda_b * a_mn / a_bn) * kLn2;
    if (gamma != 0.0) {
      const double c2 = a_ub * a_mn;
      const double c1 = a_ub + a_mn;
      const double c0 = 1.0 - (a_ub - a_mn) / gamma;
      if (c2 != 0.0) {
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
          const double sq = std::sqrt(disc);
          consider((-c1 + sq) / (2.0 * c2));
          consider((-c1 - sq) / (2.0 * c2));
        }
      } else if (c1 != 0.0) {
        consider(-c0 / c1);
      }
    }
  }

  std::sort(candidates.begin(), candidates.end());
  InnerSolution best;
  best.p_up = 0.0;
  best.objective = payoff(0.0);
  for (double u : candidates) {
    const double v = payoff(u);
    if (v > best.objective) {
      best.objective = v;
      best.p_up = u;
    }
  }
  best.p_down = best_response_down(best.p_up, a_bn, a_mn, lambda_b);
  return best;
}

}  // namespace fdra
