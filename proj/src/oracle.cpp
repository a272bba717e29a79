#include "eedp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "eedp/errors.hpp"

namespace eedp::oracle {

namespace {

constexpr real_t kInf = std::numeric_limits<real_t>::infinity();

// All grid nodes, evaluated. Infeasible nodes (eliminated unit out of its
// box) carry an infinite cost.
struct Evaluated {
  std::vector<real_t> cost;
  std::vector<real_t> emission;
  std::vector<Vector> p;
};

Evaluated evaluate_grid(const dispatch::DispatchProblem& problem,
                        const GridSpec& grid, Execution execution) {
  grid.validate();
  const auto reduced = dispatch::reduce_equality(problem);
  if (reduced.dimension() != static_cast<std::size_t>(grid.lower.size())) {
    throw DimensionError("grid dimension does not match the reduced problem");
  }
  const auto dims = reduced.dimension();
  const std::vector<real_t> ax0 = dims > 0 ? grid.axis(0) : std::vector<real_t>{};
  const std::vector<real_t> ax1 = dims > 1 ? grid.axis(1) : std::vector<real_t>{0};
  const auto n0 = std::max<std::size_t>(ax0.size(), 1);
  const auto total = static_cast<std::ptrdiff_t>(n0 * ax1.size());

  Evaluated out;
  out.cost.resize(static_cast<std::size_t>(total));
  out.emission.resize(static_cast<std::size_t>(total));
  out.p.resize(static_cast<std::size_t>(total));

  auto node = [&](std::ptrdiff_t flat) {
    const auto idx = static_cast<std::size_t>(flat);
    Vector x(static_cast<Eigen::Index>(dims));
    if (dims > 0) x[0] = ax0[idx % n0];
    if (dims > 1) x[1] = ax1[idx / n0];
    const Vector p = reduced.lift(x);
    out.p[idx] = p;
    if (reduced.box_violation(x) > 1e-9L) {
      out.cost[idx] = kInf;
      out.emission[idx] = kInf;
      return;
    }
    out.cost[idx] = dispatch::cost_exact(problem, p);
    out.emission[idx] = dispatch::emission(problem, p).value;
  };

  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) node(i);
  } else {
    for (std::ptrdiff_t i = 0; i < total; ++i) node(i);
  }
  return out;
}

}  // namespace

GridSpec GridSpec::for_problem(const dispatch::DispatchProblem& problem,
                               real_t resolution) {
  const auto reduced = dispatch::reduce_equality(problem);
  if (reduced.dimension() > 2) {
    throw UnsupportedOracleError(
        "grid oracle supports at most 2 free dimensions, problem has " +
        std::to_string(reduced.dimension()));
  }
  return GridSpec{resolution, reduced.lower(), reduced.upper()};
}

void GridSpec::validate() const {
  if (!(resolution > 0)) {
    throw ParameterDomainError("grid resolution must be positive");
  }
  if (lower.size() != upper.size()) {
    throw DimensionError("grid bounds differ in dimension");
  }
  if (lower.size() > 2) {
    throw UnsupportedOracleError(
        "grid oracle supports at most 2 free dimensions, got " +
        std::to_string(lower.size()));
  }
  for (Eigen::Index k = 0; k < lower.size(); ++k) {
    if (lower[k] > upper[k]) throw ParameterDomainError("empty grid axis");
  }
}

std::vector<real_t> GridSpec::axis(std::size_t k) const {
  const auto i = static_cast<Eigen::Index>(k);
  const real_t width = upper[i] - lower[i];
  const auto steps =
      static_cast<std::size_t>(std::floor(width / resolution + 1e-9L));
  std::vector<real_t> nodes;
  nodes.reserve(steps + 2);
  for (std::size_t s = 0; s <= steps; ++s) {
    nodes.push_back(std::min(upper[i], lower[i] + s * resolution));
  }
  if (upper[i] - nodes.back() > 1e-9L * std::max<real_t>(1, upper[i])) {
    nodes.push_back(upper[i]);
  }
  return nodes;
}

std::optional<GridPoint> grid_min_cost(const dispatch::DispatchProblem& problem,
                                       std::optional<real_t> cap,
                                       const GridSpec& grid,
                                       Execution execution) {
  const Evaluated ev = evaluate_grid(problem, grid, execution);
  std::size_t best = ev.cost.size();
  for (std::size_t i = 0; i < ev.cost.size(); ++i) {
    if (!std::isfinite(ev.cost[i])) continue;
    if (cap && ev.emission[i] > *cap) continue;
    if (best == ev.cost.size() || ev.cost[i] < ev.cost[best]) best = i;
  }
  if (best == ev.cost.size()) return std::nullopt;
  return GridPoint{ev.p[best], ev.cost[best], ev.emission[best]};
}

std::vector<GridPoint> grid_front(const dispatch::DispatchProblem& problem,
                                  const GridSpec& grid, Execution execution) {
  const Evaluated ev = evaluate_grid(problem, grid, execution);
  std::vector<moo::ObjectivePoint> objectives;
  std::vector<std::size_t> node;
  for (std::size_t i = 0; i < ev.cost.size(); ++i) {
    if (!std::isfinite(ev.cost[i])) continue;
    objectives.push_back({ev.cost[i], ev.emission[i]});
    node.push_back(i);
  }
  std::vector<GridPoint> front;
  for (std::size_t k : moo::dominance_filter(objectives)) {
    const std::size_t i = node[k];
    front.push_back({ev.p[i], ev.cost[i], ev.emission[i]});
  }
  std::stable_sort(front.begin(), front.end(),
                   [](const GridPoint& a, const GridPoint& b) {
                     return a.cost < b.cost;
                   });
  return front;
}

FrontDistance front_distance(std::span<const moo::ObjectivePoint> a,
                             std::span<const moo::ObjectivePoint> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("front_distance: empty point set");
  }
  FrontDistance out;
  out.combined = -1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    real_t nearest = kInf;
    real_t dc = 0;
    real_t de = 0;
    for (const auto& q : b) {
      const real_t c = a[i].cost - q.cost;
      const real_t e = a[i].emission - q.emission;
      const real_t d = std::hypot(c, e);
      if (d < nearest) {
        nearest = d;
        dc = std::abs(c);
        de = std::abs(e);
      }
    }
    out.cost = std::max(out.cost, dc);
    out.emission = std::max(out.emission, de);
    if (nearest > out.combined) {
      out.combined = nearest;
      out.worst_index = i;
    }
  }
  return out;
}

}  // namespace eedp::oracle
