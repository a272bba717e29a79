#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "eedp/moo.hpp"
#include "eedp/types.hpp"

namespace eedp::cli {

struct RunConfig {
  std::filesystem::path problem;
  int n_points = 70;
  real_t mu0 = 0.1L;
  real_t alpha = 0.1L;
  std::vector<real_t> mu_min{1e-6L};  // one front per value
  real_t kkt_tol = 1e-8L;
  std::filesystem::path out_dir = ".";
  bool plot = true;
  int seeds = 8;
  Execution execution = Execution::Parallel;

  // Fault injection for tests.
  real_t inject_cost_offset = 0;  // added to the first solved point (verify)
  std::optional<real_t> inject_uniform_kappa;  // check

  /// Throws ParameterDomainError.
  void validate() const;

  /// mu0 is raised to mu_min when mu_min exceeds it.
  smoothing::SmoothParam smoothing_for(real_t mu_min) const;
  moo::SweepOptions sweep_options() const;
};

/// Exit statuses: 0 success, 1 failure (load/solve error, verify outside
/// tolerance, failed property), 2 unsupported oracle.
int cmd_front(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace eedp::cli
