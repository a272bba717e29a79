#include "eedp/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "eedp/errors.hpp"
#include "eedp/smoothing.hpp"

namespace eedp::dispatch {

namespace {

std::string unit_field(std::size_t i, const char* field) {
  return "units[" + std::to_string(i) + "]." + field;
}

void check_dimension(const DispatchProblem& problem, const Vector& p) {
  if (static_cast<std::size_t>(p.size()) != problem.size()) {
    throw DimensionError("dispatch vector has " + std::to_string(p.size()) +
                         " entries for " + std::to_string(problem.size()) +
                         " units");
  }
}

std::string format_real(real_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

}  // namespace

DispatchProblem::DispatchProblem(std::vector<GeneratorCoefficients> units,
                                 real_t demand)
    : units_(std::move(units)), demand_(demand) {
  if (units_.empty()) throw ModelError("units: at least one unit is required");
  real_t total_min = 0;
  real_t total_max = 0;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const auto& u = units_[i];
    const std::pair<const char*, real_t> fields[] = {
        {"a", u.a},         {"b", u.b},           {"c", u.c},
        {"g", u.g_valve},   {"h", u.h_valve},     {"alpha", u.alpha_e},
        {"beta", u.beta_e}, {"gamma", u.gamma_e}, {"p_min", u.p_min},
        {"p_max", u.p_max}};
    for (const auto& [name, value] : fields) {
      if (!std::isfinite(value)) {
        throw ModelError(unit_field(i, name) + " must be finite");
      }
    }
    if (!(u.p_min < u.p_max)) {
      throw ModelError(unit_field(i, "p_min") + " must be below p_max");
    }
    if (u.a < 0) throw ModelError(unit_field(i, "a") + " must be >= 0");
    if (u.alpha_e < 0) {
      throw ModelError(unit_field(i, "alpha") + " must be >= 0");
    }
    if (u.g_valve < 0) throw ModelError(unit_field(i, "g") + " must be >= 0");
    total_min += u.p_min;
    total_max += u.p_max;
  }
  if (!std::isfinite(demand_) || demand_ < total_min || demand_ > total_max) {
    throw ModelError("demand: " + format_real(demand_) +
                     " MW lies outside the aggregate capacity [" +
                     format_real(total_min) + ", " + format_real(total_max) +
                     "]");
  }
}

std::string DispatchProblem::digest() const {
  std::string canonical = format_real(demand_);
  for (const auto& u : units_) {
    for (real_t v : {u.a, u.b, u.c, u.g_valve, u.h_valve, u.alpha_e, u.beta_e,
                     u.gamma_e, u.p_min, u.p_max}) {
      canonical += ';';
      canonical += format_real(v);
    }
  }
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

real_t valve_argument(const GeneratorCoefficients& unit, real_t p) {
  return unit.g_valve * std::sin(unit.h_valve * (unit.p_min - p));
}

real_t cost_exact(const DispatchProblem& problem, const Vector& p) {
  check_dimension(problem, p);
  real_t total = 0;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const auto& u = problem.unit(i);
    const real_t x = p[i];
    total += u.a * x * x + u.b * x + u.c + std::abs(valve_argument(u, x));
  }
  return total;
}

SeparableEvaluation cost_smoothed(const DispatchProblem& problem,
                                  const Vector& p, real_t mu) {
  check_dimension(problem, p);
  const auto n = static_cast<Eigen::Index>(problem.size());
  SeparableEvaluation out{0, Vector::Zero(n), Vector::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = problem.unit(static_cast<std::size_t>(i));
    const real_t x = p[i];
    const real_t angle = u.h_valve * (u.p_min - x);
    const real_t s = u.g_valve * std::sin(angle);
    const real_t ds = -u.g_valve * u.h_valve * std::cos(angle);
    const real_t d2s = -u.h_valve * u.h_valve * s;
    out.value += u.a * x * x + u.b * x + u.c + smoothing::theta_abs(s, mu);
    const real_t dtheta = smoothing::theta_abs_grad(s, mu);
    out.gradient[i] = 2 * u.a * x + u.b + dtheta * ds;
    out.hessian_diagonal[i] =
        2 * u.a + smoothing::theta_abs_hess(s, mu) * ds * ds + dtheta * d2s;
  }
  return out;
}

SeparableEvaluation emission(const DispatchProblem& problem, const Vector& p) {
  check_dimension(problem, p);
  const auto n = static_cast<Eigen::Index>(problem.size());
  SeparableEvaluation out{0, Vector::Zero(n), Vector::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& u = problem.unit(static_cast<std::size_t>(i));
    const real_t x = p[i];
    out.value += u.alpha_e * x * x + u.beta_e * x + u.gamma_e;
    out.gradient[i] = 2 * u.alpha_e * x + u.beta_e;
    out.hessian_diagonal[i] = 2 * u.alpha_e;
  }
  return out;
}

// ---------------------------------------------------------------------------

real_t LinearInequality::slack(const Vector& x) const {
  return coefficients.dot(x) - bound;
}

ReducedProblem::ReducedProblem(std::shared_ptr<const DispatchProblem> problem)
    : problem_(std::move(problem)) {
  const auto& units = problem_->units();
  const std::size_t n = units.size();
  eliminated_ = n - 1;
  free_.resize(n - 1);
  std::iota(free_.begin(), free_.end(), std::size_t{0});

  const auto dim = static_cast<Eigen::Index>(free_.size());
  const real_t demand = problem_->demand();
  real_t sum_min = 0;
  real_t sum_max = 0;
  for (std::size_t i : free_) {
    sum_min += units[i].p_min;
    sum_max += units[i].p_max;
  }
  const auto& elim = units[eliminated_];
  lower_.resize(dim);
  upper_.resize(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto& u = units[free_[static_cast<std::size_t>(k)]];
    // Others at their extremes bound what this unit can take.
    lower_[k] = std::max(u.p_min, demand - elim.p_max - (sum_max - u.p_max));
    upper_[k] = std::min(u.p_max, demand - elim.p_min - (sum_min - u.p_min));
    if (lower_[k] > upper_[k]) {
      throw ModelError("demand: infeasible for unit " + std::to_string(k));
    }
  }

  for (Eigen::Index k = 0; k < dim; ++k) {
    const std::string name = units[free_[static_cast<std::size_t>(k)]].name;
    Vector e = Vector::Zero(dim);
    e[k] = -1;
    constraints_.push_back({e, -lower_[k], name + " lower"});
    e[k] = 1;
    constraints_.push_back({e, upper_[k], name + " upper"});
  }
  if (dim >= 2) {
    const Vector ones = Vector::Ones(dim);
    constraints_.push_back({ones, demand - elim.p_min, elim.name + " lower"});
    constraints_.push_back({-ones, elim.p_max - demand, elim.name + " upper"});
  }
}

bool ReducedProblem::degenerate() const {
  if (dimension() == 0) return true;
  for (Eigen::Index k = 0; k < lower_.size(); ++k) {
    const real_t scale = std::max<real_t>(1, std::abs(upper_[k]));
    if (upper_[k] - lower_[k] <= 1e-12L * scale) return true;
  }
  return false;
}

Vector ReducedProblem::lift(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw DimensionError("reduced point has " + std::to_string(x.size()) +
                         " entries, expected " + std::to_string(dimension()));
  }
  Vector p(static_cast<Eigen::Index>(problem_->size()));
  for (std::size_t k = 0; k < free_.size(); ++k) {
    p[static_cast<Eigen::Index>(free_[k])] = x[static_cast<Eigen::Index>(k)];
  }
  p[static_cast<Eigen::Index>(eliminated_)] = problem_->demand() - x.sum();
  return p;
}

Vector ReducedProblem::restrict(const Vector& p) const {
  Vector x(static_cast<Eigen::Index>(free_.size()));
  for (std::size_t k = 0; k < free_.size(); ++k) {
    x[static_cast<Eigen::Index>(k)] = p[static_cast<Eigen::Index>(free_[k])];
  }
  return x;
}

Evaluation ReducedProblem::chain(const SeparableEvaluation& full) const {
  // p = J x + demand e_elim with J = [I; -1^T]; H = J^T diag(D) J.
  const auto dim = static_cast<Eigen::Index>(free_.size());
  const auto e = static_cast<Eigen::Index>(eliminated_);
  Evaluation out{full.value, Vector(dim), Matrix(dim, dim)};
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto i = static_cast<Eigen::Index>(free_[static_cast<std::size_t>(k)]);
    out.gradient[k] = full.gradient[i] - full.gradient[e];
  }
  out.hessian.setConstant(full.hessian_diagonal[e]);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto i = static_cast<Eigen::Index>(free_[static_cast<std::size_t>(k)]);
    out.hessian(k, k) += full.hessian_diagonal[i];
  }
  return out;
}

real_t ReducedProblem::cost_exact(const Vector& x) const {
  return dispatch::cost_exact(*problem_, lift(x));
}

real_t ReducedProblem::emission_value(const Vector& x) const {
  return dispatch::emission(*problem_, lift(x)).value;
}

Evaluation ReducedProblem::cost_smoothed(const Vector& x, real_t mu) const {
  return chain(dispatch::cost_smoothed(*problem_, lift(x), mu));
}

Evaluation ReducedProblem::emission(const Vector& x) const {
  return chain(dispatch::emission(*problem_, lift(x)));
}

real_t ReducedProblem::box_violation(const Vector& x) const {
  const Vector p = lift(x);
  real_t worst = 0;
  for (std::size_t i = 0; i < problem_->size(); ++i) {
    const auto& u = problem_->unit(i);
    const real_t v = p[static_cast<Eigen::Index>(i)];
    worst = std::max({worst, u.p_min - v, v - u.p_max});
  }
  return worst;
}

ReducedProblem reduce_equality(const DispatchProblem& problem) {
  return ReducedProblem(std::make_shared<const DispatchProblem>(problem));
}

}  // namespace eedp::dispatch
