#pragma once

#include <vector>

#include "fdra/model.hpp"

namespace fdra {

/// Multipliers stay at or above this floor; a zero price would make the
/// per-triple power subproblem unbounded.
inline constexpr double kLambdaFloor = 1e-9;

/// Dual point of the power-budget constraints plus the diminishing-step
/// bookkeeping pi(l) = pi0 / sqrt(l).
struct DualState {
  std::vector<double> lambda_m;  ///< one price per UUE budget
  double lambda_b = 0.0;         ///< price of the BS budget
  int l = 1;                     ///< iteration index, starts at 1
  double pi0 = 0.0;              ///< initial step size

  double step_size() const;

  /// Unit-consistent warm start: lambda = 1/budget per constraint,
  /// pi0 = 0.5 * max(initial lambda).
  static DualState warm_start(const Scenario& sc);
};

/// One dual-function evaluation: the maximizing mapping and virtual powers
/// at this dual point, and the dual value itself.
struct DualEvaluation {
  double g_value = 0.0;
  Assignment3D assignment;
  PowerAllocation powers;
};

/// Evaluates the dual function: solves the per-triple power subproblem for
/// every (m,n,k), picks the mapping that maximizes the resulting payoff
/// tensor with the iterative Hungarian scheme, and adds the constant budget
/// terms sum_m lambda_m P_m + lambda_b P_b.
DualEvaluation evaluate_dual(const DualState& state, const Scenario& sc,
                             int hungarian_iterations = 5);

/// Projected subgradient update of all multipliers from the budget
/// violations of `powers`, using step pi0/sqrt(l); advances l.
DualState subgradient_step(const DualState& state,
                           const PowerAllocation& powers, const Scenario& sc);

struct JointConfig {
  int max_iters = 2000;
  double eps_gap = 1e-3;  ///< stop once the relative duality gap drops below
  double pi0 = 0.0;       ///< step-size base; <= 0 means the warm-start value
  int hungarian_iterations = 5;
  bool record_history = false;
};

/// Per-iteration trace, recorded when JointConfig::record_history is set.
struct IterationRecord {
  double dual_value = 0.0;    ///< g(lambda) at this iteration
  double primal_value = 0.0;  ///< recovered feasible value at this iteration
};

struct JointSolution {
  Assignment3D assignment;
  PowerAllocation powers;     ///< budget-feasible after primal recovery
  double primal_value = 0.0;  ///< total throughput of the recovered solution
  double dual_value = 0.0;    ///< best (lowest) dual value seen
  double gap = 0.0;           ///< relative duality gap
  int iterations_used = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

/// Full joint solver: alternates dual evaluation and subgradient steps,
/// recovers a budget-feasible primal solution each iteration by
/// proportional rescaling, and returns the best feasible solution found.
/// On non-convergence within max_iters the best-so-far solution is
/// returned with converged = false.
JointSolution solve_joint(const Scenario& sc, const JointConfig& config = {});

}  // namespace fdra
