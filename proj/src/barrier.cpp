#include "eedp/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "eedp/errors.hpp"

namespace eedp::nlp {

namespace {

constexpr real_t kEps = std::numeric_limits<real_t>::epsilon();
constexpr real_t kInf = std::numeric_limits<real_t>::infinity();

real_t evaluate_with_hessian(const SmoothFunction& fn, const Vector& x,
                             Vector& gradient, Matrix& hessian) {
  const auto n = x.size();
  gradient.resize(n);
  if (fn.provides_hessian) {
    hessian.resize(n, n);
    return fn.evaluate(x, &gradient, &hessian);
  }
  const real_t value = fn.evaluate(x, &gradient, nullptr);
  hessian.resize(n, n);
  Vector shifted = x;
  Vector g_step(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const real_t h = std::sqrt(kEps) * std::max<real_t>(1, std::abs(x[k]));
    shifted[k] = x[k] + h;
    fn.evaluate(shifted, &g_step, nullptr);
    hessian.col(k) = (g_step - gradient) / h;
    shifted[k] = x[k];
  }
  hessian = ((hessian + hessian.transpose()) / 2).eval();
  return value;
}

struct BarrierState {
  real_t merit = 0;
  Vector gradient;
  Matrix hessian;
};

// phi_w = f - w sum ln(s_j), s_j = -g_j. Requires all s_j > 0.
BarrierState barrier_state(const ScalarProblem& problem, const Vector& x,
                           real_t weight) {
  BarrierState state;
  Vector g;
  Matrix h;
  state.merit = evaluate_with_hessian(problem.objective, x, g, h);
  state.gradient = g;
  state.hessian = h;
  for (const auto& constraint : problem.inequalities) {
    const real_t value = evaluate_with_hessian(constraint, x, g, h);
    const real_t slack = -value;
    state.merit -= weight * std::log(slack);
    state.gradient += (weight / slack) * g;
    state.hessian += (weight / slack) * h +
                     (weight / (slack * slack)) * (g * g.transpose());
  }
  return state;
}

real_t barrier_merit(const ScalarProblem& problem, const Vector& x,
                     real_t weight, real_t& smallest_slack) {
  real_t merit = problem.objective.value(x);
  smallest_slack = kInf;
  for (const auto& constraint : problem.inequalities) {
    const real_t slack = -constraint.value(x);
    smallest_slack = std::min(smallest_slack, slack);
    if (!(slack > 0)) return kInf;
    merit -= weight * std::log(slack);
  }
  return merit;
}

// Eigenvalues mirrored to |lambda| and floored, so the step is a descent
// direction even where the valve-point terms are concave.
Vector modified_newton_direction(const Matrix& hessian, const Vector& grad) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hessian);
  Vector lambda = eig.eigenvalues().cwiseAbs();
  const real_t scale = std::max<real_t>(1, lambda.maxCoeff());
  lambda = lambda.cwiseMax(1e-12L * scale);
  const Matrix& q = eig.eigenvectors();
  return -(q * (q.transpose() * grad).cwiseQuotient(lambda));
}

std::vector<real_t> weight_schedule(const BarrierConfig& config) {
  std::vector<real_t> weights;
  const real_t floor = config.weight_floor * (1 + 1e-9L);
  for (real_t w = config.t0; w > floor; w *= config.shrink) {
    weights.push_back(w);
  }
  weights.push_back(config.weight_floor);
  return weights;
}

// Near an active constraint the slack is of order w / beta, and rounding in
// x and in g_j(x) caps the accuracy of w / s_j at roughly 1e-6 relative.
// Re-estimate the multipliers of the near-active constraints by
// nonnegative least squares on the stationarity equation and keep them
// when the residual drops.
constexpr real_t kActiveSlack = 1e-6L;

void refine_active_multipliers(const Vector& objective_gradient,
                               const std::vector<Vector>& gradients,
                               SolverResult& result) {
  std::vector<std::size_t> active;
  Vector base = objective_gradient;
  for (std::size_t j = 0; j < gradients.size(); ++j) {
    if (-result.constraint_values[j] <= kActiveSlack) {
      active.push_back(j);
    } else {
      base += result.multipliers[j] * gradients[j];
    }
  }
  if (active.empty()) return;

  std::vector<real_t> beta(gradients.size(), 0);
  while (!active.empty()) {
    Matrix G(base.size(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) {
      G.col(static_cast<Eigen::Index>(k)) = gradients[active[k]];
    }
    const Vector b = G.completeOrthogonalDecomposition().solve(-base);
    Eigen::Index worst = 0;
    if (b.minCoeff(&worst) >= 0) {
      for (std::size_t k = 0; k < active.size(); ++k) {
        beta[active[k]] = b[static_cast<Eigen::Index>(k)];
      }
      break;
    }
    active.erase(active.begin() + worst);
  }

  Vector stationarity = objective_gradient;
  std::vector<real_t> refined = result.multipliers;
  for (std::size_t j = 0; j < gradients.size(); ++j) {
    if (-result.constraint_values[j] <= kActiveSlack) refined[j] = beta[j];
    stationarity += refined[j] * gradients[j];
  }
  if (stationarity.norm() < result.kkt_residual) {
    result.multipliers = std::move(refined);
    result.kkt_residual = stationarity.norm();
  }
}

}  // namespace

void BarrierConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterDomainError(std::string("BarrierConfig: ") + what);
  };
  require(t0 > 0, "t0 must be positive");
  require(shrink > 0 && shrink < 1, "shrink must lie in (0, 1)");
  require(weight_floor > 0, "weight_floor must be positive");
  require(kkt_tol > 0, "kkt_tol must be positive");
  require(max_newton > 0, "max_newton must be positive");
  require(armijo_c > 0 && armijo_c < 1, "armijo_c must lie in (0, 1)");
  require(backtrack > 0 && backtrack < 1, "backtrack must lie in (0, 1)");
  require(boundary_fraction > 0 && boundary_fraction < 1,
          "boundary_fraction must lie in (0, 1)");
}

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Converged:
      return "Converged";
    case SolverStatus::IterationLimit:
      return "IterationLimit";
    case SolverStatus::Infeasible:
      return "Infeasible";
  }
  return "?";
}

real_t min_slack(const ScalarProblem& problem, const Vector& x) {
  real_t smallest = kInf;
  for (const auto& constraint : problem.inequalities) {
    smallest = std::min(smallest, -constraint.value(x));
  }
  return smallest;
}

SolverResult solve_barrier(const ScalarProblem& problem, const Vector& x0,
                           const BarrierConfig& config) {
  config.validate();
  if (static_cast<std::size_t>(x0.size()) != problem.dimension) {
    throw DimensionError("solve_barrier: start point has " +
                         std::to_string(x0.size()) + " entries, expected " +
                         std::to_string(problem.dimension));
  }
  if (!(min_slack(problem, x0) > 0)) {
    throw PreconditionError("solve_barrier: x0 is not strictly feasible");
  }

  SolverResult result;
  Vector x = x0;
  const auto weights = weight_schedule(config);

  for (std::size_t stage = 0; stage < weights.size(); ++stage) {
    const real_t w = weights[stage];
    const bool last = stage + 1 == weights.size();
    const real_t tol = last ? config.kkt_tol : std::max(config.kkt_tol, w);

    real_t best_norm = kInf;
    int stagnant = 0;
    for (int it = 0; it < config.max_newton; ++it) {
      const BarrierState state = barrier_state(problem, x, w);
      const real_t norm = state.gradient.norm();
      if (norm <= tol) break;
      // Steps at the rounding floor of the merit make no real progress.
      if (norm < 0.5L * best_norm) {
        best_norm = norm;
        stagnant = 0;
      } else if (++stagnant >= 8) {
        break;
      }
      Vector d = modified_newton_direction(state.hessian, state.gradient);
      real_t slope = state.gradient.dot(d);
      if (!(slope < 0)) {
        d = -state.gradient;
        slope = -state.gradient.squaredNorm();
      }

      // Fraction to the boundary on the linearized constraints.
      real_t alpha = 1;
      std::vector<real_t> slacks;
      slacks.reserve(problem.inequalities.size());
      for (const auto& constraint : problem.inequalities) {
        Vector g(x.size());
        const real_t slack = -constraint.evaluate(x, &g, nullptr);
        slacks.push_back(slack);
        const real_t rate = g.dot(d);
        if (rate > 0) {
          alpha = std::min(alpha, config.boundary_fraction * slack / rate);
        }
      }

      // Allow for rounding in the merit once the predicted decrease is
      // below its resolution.
      const real_t rounding = 16 * kEps * std::max<real_t>(1, std::abs(state.merit));
      bool accepted = false;
      Vector trial;
      real_t trial_merit = 0;
      real_t trial_min_slack = 0;
      while (alpha * d.norm() > kEps * (1 + x.norm())) {
        trial = x + alpha * d;
        trial_merit = barrier_merit(problem, trial, w, trial_min_slack);
        bool interior = std::isfinite(trial_merit);
        for (std::size_t j = 0; interior && j < slacks.size(); ++j) {
          interior = -problem.inequalities[j].value(trial) >=
                     (1 - config.boundary_fraction) * slacks[j];
        }
        if (interior && trial_merit <= state.merit +
                                           config.armijo_c * alpha * slope +
                                           rounding) {
          accepted = true;
          break;
        }
        alpha *= config.backtrack;
      }
      if (!accepted) break;  // stalled at the resolution of the merit

      if (config.record_trace) {
        result.trace.push_back({w, alpha, state.merit, trial_merit,
                                slope * alpha, rounding, trial_min_slack});
      }
      x = trial;
      ++result.newton_iterations;
    }
  }

  // Certificate at the final weight: beta_j = w / s_j.
  const real_t w = weights.back();
  Vector grad(x.size());
  result.objective_value = problem.objective.evaluate(x, &grad, nullptr);
  Vector stationarity = grad;
  std::vector<Vector> gradients;
  for (const auto& constraint : problem.inequalities) {
    Vector g(x.size());
    const real_t value = constraint.evaluate(x, &g, nullptr);
    const real_t beta = w / -value;
    result.constraint_values.push_back(value);
    result.multipliers.push_back(beta);
    gradients.push_back(g);
    stationarity += beta * g;
  }
  result.kkt_residual = stationarity.norm();
  if (result.kkt_residual > config.kkt_tol) {
    refine_active_multipliers(grad, gradients, result);
  }
  result.x_star = x;
  result.final_weight = w;
  result.status = result.kkt_residual <= config.kkt_tol
                      ? SolverStatus::Converged
                      : SolverStatus::IterationLimit;
  return result;
}

std::optional<Vector> interior_point_seed(const ScalarProblem& problem) {
  const auto n = static_cast<Eigen::Index>(problem.dimension);
  Vector x = Vector::Zero(n);
  Vector step = Vector::Ones(n);
  if (problem.box) {
    x = (problem.box->lower + problem.box->upper) / 2;
    step = ((problem.box->upper - problem.box->lower) / 4).cwiseMax(1e-12L);
  }
  real_t best = min_slack(problem, x);
  if (best > 0) return x;

  // Compass search on m(x) = min_j(-g_j(x)).
  const real_t scale = std::max<real_t>(1, x.cwiseAbs().maxCoeff());
  for (int iter = 0; iter < 100000; ++iter) {
    if (step.maxCoeff() < 1e-13L * scale) break;
    bool improved = false;
    for (Eigen::Index k = 0; k < n && !improved; ++k) {
      for (real_t sign : {1.0L, -1.0L}) {
        Vector trial = x;
        trial[k] += sign * step[k];
        const real_t m = min_slack(problem, trial);
        if (m > best) {
          best = m;
          x = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step /= 2;
  }
  if (best > 0) return x;
  return std::nullopt;
}

real_t finite_difference_check(const ScalarProblem& problem, const Vector& x,
                               real_t h) {
  real_t worst = 0;
  auto check = [&](const SmoothFunction& fn) {
    Vector analytic(x.size());
    fn.evaluate(x, &analytic, nullptr);
    Vector shifted = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      shifted[k] = x[k] + h;
      const real_t up = fn.value(shifted);
      shifted[k] = x[k] - h;
      const real_t down = fn.value(shifted);
      shifted[k] = x[k];
      const real_t central = (up - down) / (2 * h);
      const real_t err = std::abs(central - analytic[k]) /
                         std::max<real_t>(1, std::abs(analytic[k]));
      worst = std::max(worst, err);
    }
  };
  check(problem.objective);
  for (const auto& constraint : problem.inequalities) check(constraint);
  return worst;
}

}  // namespace eedp::nlp
