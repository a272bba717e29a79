#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "eedp/types.hpp"

namespace eedp::dispatch {

/**
 * One thermal unit.
 *
 * Fuel cost  C(p) = a p^2 + b p + c + |g_valve sin(h_valve (p_min - p))|  [$]
 * Emission   E(p) = alpha_e p^2 + beta_e p + gamma_e                      [kg/h]
 */
struct GeneratorCoefficients {
  std::string name;
  real_t a = 0;        // $/MW^2
  real_t b = 0;        // $/MW
  real_t c = 0;        // $
  real_t g_valve = 0;  // $
  real_t h_valve = 0;  // rad/MW
  real_t alpha_e = 0;  // kg/h/MW^2
  real_t beta_e = 0;   // kg/h/MW
  real_t gamma_e = 0;  // kg/h
  real_t p_min = 0;    // MW
  real_t p_max = 0;    // MW
};

/// An immutable fleet with a demand balance sum(p) = demand.
class DispatchProblem {
 public:
  /// Throws ModelError naming the offending field on a violated invariant.
  DispatchProblem(std::vector<GeneratorCoefficients> units, real_t demand);

  const std::vector<GeneratorCoefficients>& units() const { return units_; }
  const GeneratorCoefficients& unit(std::size_t i) const { return units_[i]; }
  std::size_t size() const { return units_.size(); }
  real_t demand() const { return demand_; }

  /// FNV-1a hash (hex) of the canonical coefficient listing.
  std::string digest() const;

 private:
  std::vector<GeneratorCoefficients> units_;
  real_t demand_;
};

/// Value with gradient and the diagonal of a separable Hessian.
struct SeparableEvaluation {
  real_t value = 0;
  Vector gradient;
  Vector hessian_diagonal;
};

/// g_i sin(h_i (p_min,i - p)), the quantity inside the absolute value.
real_t valve_argument(const GeneratorCoefficients& unit, real_t p);

real_t cost_exact(const DispatchProblem& problem, const Vector& p);

/// Valve terms replaced by theta_abs(., mu); requires 0 < mu < pi/2.
SeparableEvaluation cost_smoothed(const DispatchProblem& problem,
                                  const Vector& p, real_t mu);

SeparableEvaluation emission(const DispatchProblem& problem, const Vector& p);

// ---------------------------------------------------------------------------
// Equality elimination

/// a . x <= bound over the free variables.
struct LinearInequality {
  Vector coefficients;
  real_t bound = 0;
  std::string label;

  real_t slack(const Vector& x) const;  // a . x - bound (feasible iff <= 0)
};

struct Evaluation {
  real_t value = 0;
  Vector gradient;
  Matrix hessian;
};

/**
 * The demand balance solved for the last unit, p_e = demand - sum(x).
 *
 * `lower`/`upper` are the free units' boxes tightened by the eliminated
 * unit's limits. With two or more free units the eliminated unit's box is
 * also kept as a pair of linear inequalities on sum(x).
 */
class ReducedProblem {
 public:
  explicit ReducedProblem(std::shared_ptr<const DispatchProblem> problem);

  const DispatchProblem& problem() const { return *problem_; }
  const std::vector<std::size_t>& free_indices() const { return free_; }
  std::size_t eliminated_index() const { return eliminated_; }
  std::size_t dimension() const { return free_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  /// True when the feasible set is a single point.
  bool degenerate() const;

  Vector lift(const Vector& x) const;
  Vector restrict(const Vector& p) const;

  real_t cost_exact(const Vector& x) const;
  real_t emission_value(const Vector& x) const;
  Evaluation cost_smoothed(const Vector& x, real_t mu) const;
  Evaluation emission(const Vector& x) const;

  /// Box and elimination constraints in the order box lower/upper per free
  /// unit, then the eliminated unit's lower/upper when dimension() >= 2.
  const std::vector<LinearInequality>& constraints() const {
    return constraints_;
  }

  /// Largest violation of the full-space boxes at the lifted point.
  real_t box_violation(const Vector& x) const;

 private:
  Evaluation chain(const SeparableEvaluation& full) const;

  std::shared_ptr<const DispatchProblem> problem_;
  std::vector<std::size_t> free_;
  std::size_t eliminated_;
  Vector lower_;
  Vector upper_;
  std::vector<LinearInequality> constraints_;
};

/// Throws ModelError when the demand cannot be met.
ReducedProblem reduce_equality(const DispatchProblem& problem);

// ---------------------------------------------------------------------------
// Problem files

/**
 * Reads a problem definition (JSON with // comments allowed):
 *
 *   { "demand": 650,
 *     "units": [ { "name": "G1", "a": ..., "b": ..., "c": ..., "g": ...,
 *                  "h": ..., "alpha": ..., "beta": ..., "gamma": ...,
 *                  "p_min": ..., "p_max": ... }, ... ] }
 *
 * Syntax errors report line and column, schema errors the field path, and
 * invariant violations the field name.
 */
DispatchProblem load_problem(const std::filesystem::path& path);
DispatchProblem parse_problem(std::string_view text,
                              std::string_view source = "<input>");

/// Serializes in the same format parse_problem reads.
std::string to_problem_text(const DispatchProblem& problem);

}  // namespace eedp::dispatch
