#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eedp/dispatch.hpp"
#include "eedp/moo.hpp"
#include "eedp/types.hpp"

namespace eedp::oracle {

/// A tensor grid over the reduced (free-unit) box, at most two dimensions.
struct GridSpec {
  real_t resolution = 0.01L;  // MW
  Vector lower;
  Vector upper;

  /// The reduced box of `problem` at the given resolution.
  static GridSpec for_problem(const dispatch::DispatchProblem& problem,
                              real_t resolution = 0.01L);

  /// Throws ParameterDomainError / UnsupportedOracleError.
  void validate() const;

  /// Nodes per axis: lower + k * resolution, plus `upper` when the width
  /// is not a multiple of the resolution.
  std::vector<real_t> axis(std::size_t k) const;
};

struct GridPoint {
  Vector p;  // full dispatch vector
  real_t cost = 0;
  real_t emission = 0;
};

/// Exact-cost minimizer over grid nodes with E <= cap. Ties resolve to the
/// lowest node index. std::nullopt when no node satisfies the cap.
std::optional<GridPoint> grid_min_cost(const dispatch::DispatchProblem& problem,
                                       std::optional<real_t> cap,
                                       const GridSpec& grid,
                                       Execution execution = Execution::Parallel);

/// Nondominated (cost, emission) nodes, ascending in cost.
std::vector<GridPoint> grid_front(const dispatch::DispatchProblem& problem,
                                  const GridSpec& grid,
                                  Execution execution = Execution::Parallel);

/**
 * For each point of `a`, its Euclidean nearest neighbour in `b`; the
 * per-objective gaps to that neighbour and the Euclidean gap are maximized
 * over `a`. Throws std::invalid_argument on empty input.
 */
struct FrontDistance {
  real_t cost = 0;
  real_t emission = 0;
  real_t combined = 0;
  std::size_t worst_index = 0;  // index into a with the largest combined gap
};

FrontDistance front_distance(std::span<const moo::ObjectivePoint> a,
                             std::span<const moo::ObjectivePoint> b);

}  // namespace eedp::oracle
