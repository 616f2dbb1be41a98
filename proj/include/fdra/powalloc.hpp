#pragma once

#include "fdra/model.hpp"

namespace fdra {

/// Solution of the per-triple power subproblem at a fixed dual point:
///   max  log2(1 + p_up a_ub) + log2(1 + p_down a_bn / (p_up a_mn + 1))
///        - lambda_m p_up - lambda_b p_down   over p_up, p_down >= 0.
struct InnerSolution {
  double p_up = 0.0;
  double p_down = 0.0;
  double objective = 0.0;
};

/// Optimal downlink power for a fixed uplink power: the water-filling form
/// max(0, 1/(lambda_b ln 2) - (p_up a_mn + 1)/a_bn). The objective is
/// concave in p_down, so this is its unique maximizer.
/// Throws std::domain_error when lambda_b <= 0 (the problem is unbounded)
/// or on negative power/gain inputs.
double best_response_down(double p_up, double a_bn, double a_mn,
                          double lambda_b);

/// Global maximizer of the per-triple objective over the nonnegative
/// quadrant. Eliminates p_down through best_response_down and compares the
/// stationary points of the two remaining one-dimensional regimes (downlink
/// water level above or below its floor) against the regime boundary and
/// the interval ends. The search interval is [0, 1/(lambda_m ln 2)]; beyond
/// it the objective strictly decreases in p_up.
/// Throws std::domain_error on nonpositive prices.
InnerSolution solve_inner(const EquivalentGains& gains, double lambda_m,
                          double lambda_b);

}  // namespace fdra
