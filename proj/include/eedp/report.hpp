#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eedp/moo.hpp"
#include "eedp/oracle.hpp"
#include "eedp/smoothing.hpp"

namespace eedp::report {

/// front.csv: one row per schedule entry, ordered by epsilon.
/// Columns: l, epsilon, P1..Pn, cost_exact, cost_smoothed, emission,
/// mu_final, akkt_stationarity, status. Physical quantities use fixed
/// 6-decimal formatting; mu_final and akkt_stationarity use %.6e.
void write_front_csv(std::ostream& out, const moo::FrontReport& report);

/// Self-contained SVG scatter of the solved points, Cost ($) on x and
/// Emission (kg/h) on y. Exactly one <circle class="point"> per point.
void write_front_svg(std::ostream& out, const moo::FrontReport& report,
                     const std::string& title);

/// Human-readable run summary (report.txt).
void write_summary(std::ostream& out, const moo::FrontReport& report);

struct FrontSummary {
  int solved = 0;
  int infeasible = 0;
  int converged = 0;
  int nondominated = 0;
  int monotonicity_violations = 0;
  real_t max_stationarity = 0;
  real_t max_complementarity = 0;
  real_t max_smoothing_gap = 0;  // cost_exact - cost_smoothed
};

FrontSummary summarize(const moo::FrontReport& report);

// ---------------------------------------------------------------------------
// Oracle verification

struct VerifyTolerance {
  real_t cost = 0.5L;      // $
  real_t emission = 0.5L;  // kg/h
};

struct VerifyOutcome {
  bool within_tolerance = false;
  oracle::FrontDistance distance;
  std::size_t oracle_front_size = 0;
  std::size_t worst_point = 0;  // index into the solved points
  moo::ObjectivePoint worst;
};

/// Compares every solved point of `report` against the nondominated set of
/// the exact objectives on `grid`.
VerifyOutcome verify_front(const dispatch::DispatchProblem& problem,
                           const moo::FrontReport& report,
                           const oracle::GridSpec& grid,
                           VerifyTolerance tolerance = {});

// ---------------------------------------------------------------------------
// Smoothing property battery

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  int samples = 10000;
  unsigned seed = 20240601;
  /// Replaces the uniform kernel's kappa; a wrong value must make the
  /// monotonicity-in-mu bound fail.
  std::optional<real_t> uniform_kappa_override;
};

std::vector<PropertyResult> run_property_battery(const CheckOptions& options);

}  // namespace eedp::report
