#include "eedp/moo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "eedp/errors.hpp"

namespace eedp::moo {

namespace {

constexpr real_t kInf = std::numeric_limits<real_t>::infinity();

using dispatch::ReducedProblem;
using nlp::ScalarProblem;
using nlp::SmoothFunction;
using nlp::SolverResult;
using nlp::SolverStatus;

SmoothFunction linear_function(const dispatch::LinearInequality& c) {
  return {[c](const Vector& x, Vector* grad, Matrix* hess) {
            if (grad) *grad = c.coefficients;
            if (hess) hess->setZero(x.size(), x.size());
            return c.slack(x);
          },
          true};
}

ScalarProblem box_problem(const ReducedProblem& reduced) {
  ScalarProblem problem;
  problem.dimension = reduced.dimension();
  for (const auto& c : reduced.constraints()) {
    problem.inequalities.push_back(linear_function(c));
  }
  problem.box = nlp::Box{reduced.lower(), reduced.upper()};
  return problem;
}

SmoothFunction emission_function(const ReducedProblem& reduced, real_t sign,
                                 real_t offset) {
  return {[&reduced, sign, offset](const Vector& x, Vector* grad,
                                   Matrix* hess) {
            const auto e = reduced.emission(x);
            if (grad) *grad = sign * e.gradient;
            if (hess) *hess = sign * e.hessian;
            return sign * e.value - offset;
          },
          true};
}

// Largest t with x + t dir strictly feasible, searched on [0, t_max].
real_t feasible_extent(const ScalarProblem& problem, const Vector& x,
                       const Vector& dir, real_t t_max) {
  if (nlp::min_slack(problem, x + t_max * dir) > 0) return t_max;
  real_t lo = 0;
  real_t hi = t_max;
  for (int i = 0; i < 200 && hi - lo > 1e-15L * (1 + hi); ++i) {
    const real_t mid = (lo + hi) / 2;
    (nlp::min_slack(problem, x + mid * dir) > 0 ? lo : hi) = mid;
  }
  return lo;
}

// Equispaced seeds along the diagonal of the feasible extents around
// `center`; infeasible seeds are pulled back toward the center.
std::vector<Vector> multistart_seeds(const ScalarProblem& problem,
                                     const ReducedProblem& reduced,
                                     const Vector& center, int count) {
  const auto n = center.size();
  Vector lo(n);
  Vector hi(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector e = Vector::Zero(n);
    e[k] = 1;
    hi[k] = center[k] + feasible_extent(problem, center, e,
                                        reduced.upper()[k] - center[k]);
    lo[k] = center[k] - feasible_extent(problem, center, -e,
                                        center[k] - reduced.lower()[k]);
  }
  std::vector<Vector> seeds{center};
  for (int s = 0; s < count; ++s) {
    const real_t frac = (s + 0.5L) / count;
    Vector seed = lo + frac * (hi - lo);
    if (!(nlp::min_slack(problem, seed) > 0)) {
      const Vector dir = seed - center;
      const real_t t = feasible_extent(problem, center, dir, 1);
      seed = center + 0.5L * t * dir;
    }
    if (nlp::min_slack(problem, seed) > 0) seeds.push_back(seed);
  }
  return seeds;
}

// Multipliers that zero the stationarity residual at a single-point
// feasible set, where every box constraint is active.
std::vector<real_t> vertex_multipliers(const ReducedProblem& reduced,
                                       const Vector& x, real_t mu) {
  std::vector<real_t> beta(reduced.constraints().size() + 1, 0);
  const Vector grad = reduced.cost_smoothed(x, mu).gradient;
  for (Eigen::Index k = 0; k < grad.size(); ++k) {
    const auto idx = static_cast<std::size_t>(2 * k);
    if (grad[k] > 0) {
      beta[idx] = grad[k];  // lower bound, gradient -e_k
    } else {
      beta[idx + 1] = -grad[k];
    }
  }
  return beta;
}

}  // namespace

ScalarProblem make_subproblem(const ReducedProblem& reduced, real_t mu,
                              std::optional<real_t> cap) {
  ScalarProblem problem = box_problem(reduced);
  problem.objective = {[&reduced, mu](const Vector& x, Vector* grad,
                                      Matrix* hess) {
                         const auto c = reduced.cost_smoothed(x, mu);
                         if (grad) *grad = c.gradient;
                         if (hess) *hess = c.hessian;
                         return c.value;
                       },
                       true};
  if (cap) problem.inequalities.push_back(emission_function(reduced, 1, *cap));
  return problem;
}

EmissionBounds emission_bounds(const ReducedProblem& reduced,
                               const nlp::BarrierConfig& config) {
  EmissionBounds bounds;
  if (reduced.degenerate()) {
    const Vector x = (reduced.lower() + reduced.upper()) / 2;
    bounds.p_at_min = bounds.p_at_max = reduced.lift(x);
    bounds.e_min = bounds.e_max = reduced.emission_value(x);
    return bounds;
  }

  ScalarProblem problem = box_problem(reduced);
  const auto start = nlp::interior_point_seed(problem);
  if (!start) throw ModelError("emission_bounds: feasible set has no interior");

  problem.objective = emission_function(reduced, 1, 0);
  const SolverResult low = nlp::solve_barrier(problem, *start, config);
  bounds.e_min = reduced.emission_value(low.x_star);
  bounds.p_at_min = reduced.lift(low.x_star);

  // A convex quadratic peaks at a vertex: try the feasible box corners
  // (which may also undercut the interior-approaching minimum),
  // then refine with a barrier solve on -E from points toward each corner.
  const auto n = reduced.dimension();
  const std::size_t corners = std::size_t{1} << n;
  problem.objective = emission_function(reduced, -1, 0);
  bounds.e_max = -kInf;
  auto consider = [&](const Vector& x) {
    const real_t e = reduced.emission_value(x);
    if (e > bounds.e_max) {
      bounds.e_max = e;
      bounds.p_at_max = reduced.lift(x);
    }
    if (e < bounds.e_min) {
      bounds.e_min = e;
      bounds.p_at_min = reduced.lift(x);
    }
  };
  for (std::size_t mask = 0; mask < corners; ++mask) {
    Vector corner(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      corner[i] = (mask >> k & 1) ? reduced.upper()[i] : reduced.lower()[i];
    }
    if (nlp::min_slack(problem, corner) >= -1e-9L) consider(corner);
    const Vector seed = *start + 0.9L * (corner - *start);
    if (nlp::min_slack(problem, seed) > 0) {
      consider(nlp::solve_barrier(problem, seed, config).x_star);
    }
  }
  return bounds;
}

EpsilonSchedule build_schedule(real_t e_min, real_t e_max, int n_points) {
  if (n_points < 1) {
    throw ParameterDomainError("build_schedule: n_points must be >= 1");
  }
  EpsilonSchedule schedule{e_min, e_max, n_points, 0, {}};
  if (!(e_max > e_min)) {
    schedule.n_points = 1;
    schedule.values = {e_max};
    return schedule;
  }
  schedule.tau = (e_max - e_min) / n_points;
  for (int l = 1; l <= n_points; ++l) {
    schedule.values.push_back(l == n_points ? e_max : e_min + l * schedule.tau);
  }
  return schedule;
}

AKKTCertificate akkt_certificate(const ReducedProblem& reduced,
                                 const Vector& x, real_t mu, real_t epsilon,
                                 std::span<const real_t> scalar_multipliers) {
  const auto& constraints = reduced.constraints();
  if (scalar_multipliers.size() != constraints.size() + 1) {
    throw DimensionError("akkt_certificate: expected " +
                         std::to_string(constraints.size() + 1) +
                         " multipliers (box constraints and the cap)");
  }
  AKKTCertificate cert;
  cert.mu_at_issue = mu;

  const auto cost = reduced.cost_smoothed(x, mu);
  const auto em = reduced.emission(x);
  const real_t cap_value = em.value - epsilon;
  real_t beta_e = scalar_multipliers.back();
  if (cap_value < -kInactiveThreshold) beta_e = 0;  // inactive cap carries no weight
  const real_t scale = 1 / (1 + beta_e);
  // 1 - a + a rounds to exactly 1 for a in [0, 1].
  const real_t lambda_e = beta_e / (1 + beta_e);
  cert.lambda = {1 - lambda_e, lambda_e};

  Vector stationarity = cert.lambda[0] * cost.gradient +
                        cert.lambda[1] * em.gradient;
  cert.complementarity_max = std::abs(beta_e * cap_value) * scale;
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const real_t g = constraints[j].slack(x);
    const real_t beta = g < -kInactiveThreshold
                            ? 0
                            : std::max<real_t>(0, scalar_multipliers[j]) * scale;
    cert.beta.push_back(beta);
    stationarity += beta * constraints[j].coefficients;
    cert.complementarity_max =
        std::max(cert.complementarity_max, std::abs(beta * g));
    cert.assumption_a_sum += beta * g;
  }
  cert.stationarity_norm = stationarity.norm();
  return cert;
}

ParetoPoint solve_subproblem(const ReducedProblem& reduced, real_t epsilon,
                             const smoothing::SmoothParam& mu_schedule,
                             const SweepOptions& options) {
  mu_schedule.validate();
  const auto stages = mu_schedule.schedule();
  ParetoPoint point;
  point.epsilon = epsilon;
  point.mu_final = stages.back();

  auto finish = [&](const Vector& x, const std::vector<real_t>& multipliers) {
    point.p = reduced.lift(x);
    const auto smoothed = reduced.cost_smoothed(x, point.mu_final);
    point.cost_smoothed = smoothed.value;
    point.cost_exact = reduced.cost_exact(x);
    point.emission = reduced.emission_value(x);
    point.akkt =
        akkt_certificate(reduced, x, point.mu_final, epsilon, multipliers);
  };

  if (reduced.degenerate()) {
    const Vector x = (reduced.lower() + reduced.upper()) / 2;
    if (reduced.emission_value(x) > epsilon + kInactiveThreshold) return point;
    point.solver_status = SolverStatus::Converged;
    finish(x, vertex_multipliers(reduced, x, point.mu_final));
    return point;
  }

  const ScalarProblem first = make_subproblem(reduced, stages.front(), epsilon);
  const auto center = nlp::interior_point_seed(first);
  if (!center) return point;  // Infeasible

  std::optional<SolverResult> best;
  for (const Vector& seed :
       multistart_seeds(first, reduced, *center, options.seeds)) {
    Vector x = seed;
    SolverResult result;
    int iterations = 0;
    for (std::size_t k = 0; k < stages.size(); ++k) {
      nlp::BarrierConfig config = options.barrier;
      if (k > 0) config.t0 = std::min(config.t0, options.warm_weight);
      config.t0 = std::max(config.t0, config.weight_floor);
      result = nlp::solve_barrier(make_subproblem(reduced, stages[k], epsilon),
                                  x, config);
      iterations += result.newton_iterations;
      x = result.x_star;
    }
    result.newton_iterations = iterations;
    const bool converged = result.status == SolverStatus::Converged;
    const bool best_converged =
        best && best->status == SolverStatus::Converged;
    if (!best || (converged && !best_converged) ||
        (converged == best_converged &&
         result.objective_value < best->objective_value)) {
      best = std::move(result);
    }
  }

  point.solver_status = best->status;
  point.newton_iterations = best->newton_iterations;
  finish(best->x_star, best->multipliers);
  return point;
}

std::vector<std::size_t> dominance_filter(
    std::span<const ObjectivePoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].cost != points[b].cost) return points[a].cost < points[b].cost;
    if (points[a].emission != points[b].emission) {
      return points[a].emission < points[b].emission;
    }
    return a < b;
  });

  // A point is dominated iff some lexicographically smaller, distinct point
  // has emission <= its own.
  std::vector<std::size_t> kept;
  real_t best_emission = kInf;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    const auto& head = points[order[i]];
    while (j < order.size() && points[order[j]].cost == head.cost &&
           points[order[j]].emission == head.emission) {
      ++j;
    }
    if (best_emission > head.emission) {
      for (std::size_t k = i; k < j; ++k) kept.push_back(order[k]);
    }
    best_emission = std::min(best_emission, head.emission);
    i = j;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

FrontReport build_front(const dispatch::DispatchProblem& problem, int n_points,
                        const smoothing::SmoothParam& mu_schedule,
                        const SweepOptions& options) {
  mu_schedule.validate();
  const ReducedProblem reduced = dispatch::reduce_equality(problem);

  FrontReport report;
  report.problem_digest = problem.digest();
  report.mu_schedule = mu_schedule.schedule();
  report.bounds = emission_bounds(reduced, options.barrier);
  report.schedule =
      build_schedule(report.bounds.e_min, report.bounds.e_max, n_points);

  const auto& caps = report.schedule.values;
  const auto count = static_cast<std::ptrdiff_t>(caps.size());
  report.points.resize(caps.size());
  std::exception_ptr failure;

  auto solve = [&](std::ptrdiff_t l) {
    auto point = solve_subproblem(reduced, caps[static_cast<std::size_t>(l)],
                                  mu_schedule, options);
    point.l = static_cast<int>(l + 1);
    report.points[static_cast<std::size_t>(l)] = std::move(point);
  };

  if (options.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t l = 0; l < count; ++l) {
      try {
        solve(l);
      } catch (...) {
#pragma omp critical(eedp_front_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    for (std::ptrdiff_t l = 0; l < count; ++l) solve(l);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ObjectivePoint> objectives;
  std::vector<std::size_t> solved;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    if (!report.points[i].solved()) continue;
    objectives.push_back({report.points[i].cost_exact,
                          report.points[i].emission});
    solved.push_back(i);
  }
  for (std::size_t k : dominance_filter(objectives)) {
    report.points[solved[k]].nondominated = true;
  }

  // Nested feasible sets: the optimal smoothed cost cannot rise with eps.
  for (std::size_t k = 1; k < solved.size(); ++k) {
    auto& cur = report.points[solved[k]];
    const auto& prev = report.points[solved[k - 1]];
    cur.monotonicity_violation = cur.cost_smoothed > prev.cost_smoothed + 1e-6L;
  }
  return report;
}

}  // namespace eedp::moo
