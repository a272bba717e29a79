#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eedp/barrier.hpp"
#include "eedp/dispatch.hpp"
#include "eedp/smoothing.hpp"
#include "eedp/types.hpp"

namespace eedp::moo {

struct EmissionBounds {
  real_t e_min = 0;
  real_t e_max = 0;
  Vector p_at_min;  // full dispatch vectors
  Vector p_at_max;
};

/// Caps eps_l = e_min + l tau, l = 1..n, tau = (e_max - e_min) / n.
struct EpsilonSchedule {
  real_t e_min = 0;
  real_t e_max = 0;
  int n_points = 0;
  real_t tau = 0;
  std::vector<real_t> values;
};

/**
 * Approximate KKT certificate for the bi-objective problem
 * min {C~(., mu), E} over the reduced box.
 *
 * lambda = (1, beta_E) / (1 + beta_E) from the emission-cap multiplier;
 * the box multipliers are rescaled by the same factor and zeroed where the
 * constraint is inactive (g_j < -1e-6). The valve-point cost is not
 * convex, so this certifies the necessary conditions only.
 */
struct AKKTCertificate {
  std::vector<real_t> lambda;  // objective weights (cost, emission)
  std::vector<real_t> beta;    // box/elimination constraint multipliers
  real_t stationarity_norm = 0;
  real_t complementarity_max = 0;
  real_t mu_at_issue = 0;
  real_t assumption_a_sum = 0;  // sum_j beta_j g_j(x)
};

inline constexpr real_t kInactiveThreshold = 1e-6L;

struct ParetoPoint {
  int l = 0;  // 1-based position in the epsilon schedule
  Vector p;
  real_t cost_exact = 0;
  real_t cost_smoothed = 0;
  real_t emission = 0;
  real_t epsilon = 0;
  real_t mu_final = 0;
  AKKTCertificate akkt;
  nlp::SolverStatus solver_status = nlp::SolverStatus::Infeasible;
  int newton_iterations = 0;
  bool nondominated = false;
  bool monotonicity_violation = false;

  bool solved() const {
    return solver_status != nlp::SolverStatus::Infeasible;
  }
};

struct FrontReport {
  std::vector<ParetoPoint> points;  // sorted by epsilon
  EpsilonSchedule schedule;
  EmissionBounds bounds;
  std::vector<real_t> mu_schedule;
  std::string problem_digest;
};

struct SweepOptions {
  nlp::BarrierConfig barrier;
  int seeds = 8;                // multi-start seeds per subproblem
  real_t warm_weight = 1e-3L;   // first barrier weight after a mu reduction
  Execution execution = Execution::Parallel;
};

EmissionBounds emission_bounds(const dispatch::ReducedProblem& reduced,
                               const nlp::BarrierConfig& config = {});

/// n_points >= 1. Degenerate bounds (e_max <= e_min) give {e_max}.
EpsilonSchedule build_schedule(real_t e_min, real_t e_max, int n_points);

/**
 * The smoothed scalar problem min C~(x, mu) s.t. box, and E(x) <= cap when
 * given. Constraint order: reduced.constraints(), then the cap.
 */
nlp::ScalarProblem make_subproblem(const dispatch::ReducedProblem& reduced,
                                   real_t mu, std::optional<real_t> cap);

/**
 * Solves min C~ s.t. E <= epsilon with mu-continuation from every seed and
 * keeps the best final point. Points whose cap admits no strictly interior
 * dispatch come back with status Infeasible.
 */
ParetoPoint solve_subproblem(const dispatch::ReducedProblem& reduced,
                             real_t epsilon,
                             const smoothing::SmoothParam& mu_schedule,
                             const SweepOptions& options = {});

/// `scalar_multipliers` is ordered as make_subproblem's constraints, with
/// the cap multiplier last.
AKKTCertificate akkt_certificate(const dispatch::ReducedProblem& reduced,
                                 const Vector& x, real_t mu, real_t epsilon,
                                 std::span<const real_t> scalar_multipliers);

struct ObjectivePoint {
  real_t cost = 0;
  real_t emission = 0;
};

/// Indices (ascending) of the points no other point strictly dominates.
/// Equal points are all kept.
std::vector<std::size_t> dominance_filter(std::span<const ObjectivePoint> points);

/**
 * emission_bounds -> build_schedule -> solve_subproblem per epsilon ->
 * dominance_filter. Subproblems are independent; with
 * Execution::Parallel they are distributed over OpenMP threads. The
 * report is identical for both execution modes.
 */
FrontReport build_front(const dispatch::DispatchProblem& problem, int n_points,
                        const smoothing::SmoothParam& mu_schedule,
                        const SweepOptions& options = {});

}  // namespace eedp::moo
