#include "fdra/dualopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdra/mapping3d.hpp"
#include "fdra/powalloc.hpp"

namespace fdra {

double DualState::step_size() const { return pi0 / std::sqrt(l); }

DualState DualState::warm_start(const Scenario& sc) {
  DualState s;
  s.lambda_b = std::max(kLambdaFloor, 1.0 / sc.P_b);
  s.lambda_m.reserve(sc.P_m.size());
  double lambda_max = s.lambda_b;
  for (double p : sc.P_m) {
    s.lambda_m.push_back(std::max(kLambdaFloor, 1.0 / p));
    lambda_max = std::max(lambda_max, s.lambda_m.back());
  }
  s.l = 1;
  s.pi0 = 0.5 * lambda_max;
  return s;
}

namespace {

void check_state(const DualState& state, const Scenario& sc) {
  if (static_cast<int>(state.lambda_m.size()) != sc.M)
    throw std::invalid_argument("DualState: lambda_m length does not match M");
  if (!(state.lambda_b >= kLambdaFloor) || state.l < 1 || !(state.pi0 > 0.0))
    throw std::invalid_argument("DualState: invariants violated");
  for (double lm : state.lambda_m)
    if (!(lm >= kLambdaFloor))
      throw std::invalid_argument("DualState: lambda_m below floor");
}

}  // namespace

DualEvaluation evaluate_dual(const DualState& state, const Scenario& sc,
                             int hungarian_iterations) {
  sc.validate();
  check_state(state, sc);

  RateTensor payoff(sc.M, sc.N, sc.K);
  std::vector<TriplePowers> opt(static_cast<std::size_t>(sc.M) * sc.N * sc.K);
  for (int m = 0; m < sc.M; ++m)
    for (int n = 0; n < sc.N; ++n)
      for (int k = 0; k < sc.K; ++k) {
        const InnerSolution sol = solve_inner(
            equivalent_gains(sc, m, n, k), state.lambda_m[m], state.lambda_b);
        payoff.at(m, n, k) = sol.objective;
        opt[(static_cast<std::size_t>(m) * sc.N + n) * sc.K + k] = {
            sol.p_up, sol.p_down};
      }

  DualEvaluation eval;
  eval.assignment = iterative_hungarian_3d(
      payoff, identity_assignment(sc.M, sc.N, sc.K), hungarian_iterations);

  eval.g_value = state.lambda_b * sc.P_b;
  for (int m = 0; m < sc.M; ++m) eval.g_value += state.lambda_m[m] * sc.P_m[m];
  for (const Triple& t : eval.assignment.triples()) {
    eval.g_value += payoff.at(t.m, t.n, t.k);
    eval.powers.entries[t] =
        opt[(static_cast<std::size_t>(t.m) * sc.N + t.n) * sc.K + t.k];
  }
  return eval;
}

DualState subgradient_step(const DualState& state,
                           const PowerAllocation& powers, const Scenario& sc) {
  check_state(state, sc);
  const double pi = state.step_size();

  DualState next = state;
  next.lambda_b = std::max(
      kLambdaFloor, state.lambda_b - pi * (sc.P_b - powers.down_total()));
  for (int m = 0; m < sc.M; ++m)
    next.lambda_m[m] =
        std::max(kLambdaFloor, state.lambda_m[m] -
                                   pi * (sc.P_m[m] - powers.up_total_for(m)));
  next.l = state.l + 1;
  return next;
}

namespace {

/// Proportional rescaling onto the budgets: scale each UUE's uplink powers
/// by min(1, P_m/sum) and all downlink powers by min(1, P_b/sum).
PowerAllocation recover_primal(const PowerAllocation& powers,
                               const Scenario& sc) {
  std::vector<double> up_sum(sc.M, 0.0);
  double down_sum = 0.0;
  for (const auto& [t, p] : powers.entries) {
    up_sum[t.m] += p.up;
    down_sum += p.down;
  }
  const double down_scale = down_sum > sc.P_b ? sc.P_b / down_sum : 1.0;

  PowerAllocation out;
  for (const auto& [t, p] : powers.entries) {
    const double up_scale =
        up_sum[t.m] > sc.P_m[t.m] ? sc.P_m[t.m] / up_sum[t.m] : 1.0;
    out.entries[t] = {p.up * up_scale, p.down * down_scale};
  }
  return out;
}

}  // namespace

JointSolution solve_joint(const Scenario& sc, const JointConfig& config) {
  sc.validate();
  if (config.max_iters < 1)
    throw std::invalid_argument("solve_joint: max_iters must be >= 1");

  DualState state = DualState::warm_start(sc);
  if (config.pi0 > 0.0) state.pi0 = config.pi0;

  JointSolution best;
  best.dual_value = std::numeric_limits<double>::infinity();
  best.primal_value = -1.0;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const DualEvaluation eval = evaluate_dual(state, sc,
                                              config.hungarian_iterations);
    best.dual_value = std::min(best.dual_value, eval.g_value);

    const PowerAllocation feasible = recover_primal(eval.powers, sc);
    const double primal = total_throughput(eval.assignment, feasible, sc);
    if (primal > best.primal_value) {
      best.primal_value = primal;
      best.assignment = eval.assignment;
      best.powers = feasible;
    }
    best.iterations_used = iter;
    if (config.record_history)
      best.history.push_back({eval.g_value, primal});

    const double diff = best.dual_value - best.primal_value;
    best.gap = diff <= 0.0 ? 0.0 : diff / std::max(best.primal_value, 1e-12);
    if (best.gap < config.eps_gap) {
      best.converged = true;
      break;
    }
    state = subgradient_step(state, eval.powers, sc);
  }
  return best;
}

}  // namespace fdra
