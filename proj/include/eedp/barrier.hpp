#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "eedp/types.hpp"

namespace eedp::nlp {

/**
 * A twice-differentiable scalar function. `evaluate` returns the value and
 * fills the requested derivatives; `hessian` is only requested when
 * `provides_hessian` is set, otherwise the solver differentiates the
 * gradient by forward differences.
 */
struct SmoothFunction {
  std::function<real_t(const Vector& x, Vector* gradient, Matrix* hessian)>
      evaluate;
  bool provides_hessian = false;

  real_t value(const Vector& x) const { return evaluate(x, nullptr, nullptr); }
};

struct Box {
  Vector lower;
  Vector upper;
};

/// minimize objective(x) s.t. g_j(x) <= 0 for every j in `inequalities`.
struct ScalarProblem {
  std::size_t dimension = 0;
  SmoothFunction objective;
  std::vector<SmoothFunction> inequalities;
  std::optional<Box> box;  // seeding hint; bounds must also appear as g_j
};

struct BarrierConfig {
  real_t t0 = 1;              // initial barrier weight
  real_t shrink = 0.2L;       // weight reduction factor
  real_t weight_floor = 1e-9L;
  real_t kkt_tol = 1e-8L;
  int max_newton = 200;       // per barrier weight
  real_t armijo_c = 1e-4L;
  real_t backtrack = 0.5L;
  real_t boundary_fraction = 0.995L;
  bool record_trace = false;

  /// Throws ParameterDomainError.
  void validate() const;
};

enum class SolverStatus { Converged, IterationLimit, Infeasible };

const char* to_string(SolverStatus status);

/// One accepted Newton step (recorded when BarrierConfig::record_trace).
struct StepRecord {
  real_t weight = 0;
  real_t step_length = 0;
  real_t merit_before = 0;
  real_t merit_after = 0;
  real_t directional_derivative = 0;
  real_t armijo_slack = 0;  // rounding allowance used in the Armijo test
  real_t min_slack_after = 0;
};

struct SolverResult {
  Vector x_star;
  real_t objective_value = 0;
  std::vector<real_t> multipliers;       // w / (-g_j(x_star)), one per g_j
  std::vector<real_t> constraint_values; // g_j(x_star)
  real_t kkt_residual = 0;               // |grad f + sum beta_j grad g_j|
  real_t final_weight = 0;
  int newton_iterations = 0;
  SolverStatus status = SolverStatus::IterationLimit;
  std::vector<StepRecord> trace;
};

/**
 * Log-barrier interior-point method.
 *
 * For each weight w in t0, t0*shrink, ..., weight_floor minimizes
 * f(x) - w sum_j ln(-g_j(x)) by modified Newton steps (eigenvalues of the
 * barrier Hessian mirrored and floored to keep a descent direction) with
 * a fraction-to-boundary rule and Armijo backtracking. Every iterate stays
 * strictly feasible.
 *
 * Throws PreconditionError when x0 is not strictly feasible.
 */
SolverResult solve_barrier(const ScalarProblem& problem, const Vector& x0,
                           const BarrierConfig& config = {});

/// min_j (-g_j(x)); +inf without constraints.
real_t min_slack(const ScalarProblem& problem, const Vector& x);

/**
 * A strictly feasible start: the box midpoint when it already is one,
 * otherwise the result of a compass search maximizing min_j(-g_j).
 * std::nullopt when no strictly interior point is found.
 */
std::optional<Vector> interior_point_seed(const ScalarProblem& problem);

/// Largest |central difference - analytic| / max(1, |analytic|) over the
/// gradients of the objective and every inequality.
real_t finite_difference_check(const ScalarProblem& problem, const Vector& x,
                               real_t h);

}  // namespace eedp::nlp
