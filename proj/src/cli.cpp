#include "eedp/cli.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <string>

#include "eedp/dispatch.hpp"
#include "eedp/errors.hpp"
#include "eedp/oracle.hpp"
#include "eedp/report.hpp"

namespace eedp::cli {

namespace {

std::string sci(real_t v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3Le", v);
  return buf;
}

std::string fixed(real_t v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, v);
  return buf;
}

std::string mu_label(real_t mu) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%Lg", mu);
  return buf;
}

void write_file(const std::filesystem::path& path, const auto& writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  writer(file);
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void RunConfig::validate() const {
  if (n_points < 1) throw ParameterDomainError("--points must be >= 1");
  if (seeds < 0) throw ParameterDomainError("--seeds must be >= 0");
  if (mu_min.empty()) throw ParameterDomainError("--mu-min needs a value");
  if (!(kkt_tol > 0)) throw ParameterDomainError("--tol must be positive");
  for (real_t m : mu_min) smoothing_for(m).validate();
}

smoothing::SmoothParam RunConfig::smoothing_for(real_t m) const {
  return smoothing::SmoothParam{std::max(mu0, m), alpha, m};
}

moo::SweepOptions RunConfig::sweep_options() const {
  moo::SweepOptions options;
  options.barrier.kkt_tol = kkt_tol;
  options.seeds = seeds;
  options.execution = execution;
  return options;
}

int cmd_front(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const auto problem = dispatch::load_problem(config.problem);
    const bool many = config.mu_min.size() > 1;
    for (real_t m : config.mu_min) {
      const auto report = moo::build_front(problem, config.n_points,
                                           config.smoothing_for(m),
                                           config.sweep_options());
      const auto dir =
          many ? config.out_dir / ("mu_" + mu_label(m)) : config.out_dir;
      std::filesystem::create_directories(dir);
      write_file(dir / "front.csv",
                 [&](std::ostream& f) { report::write_front_csv(f, report); });
      if (config.plot) {
        write_file(dir / "front.svg", [&](std::ostream& f) {
          report::write_front_svg(f, report,
                                  "Pareto front for mu=" + mu_label(m));
        });
      }
      write_file(dir / "report.txt",
                 [&](std::ostream& f) { report::write_summary(f, report); });

      const auto s = report::summarize(report);
      out << "mu_min " << mu_label(m) << ": " << s.solved << "/"
          << report.points.size() << " points solved, " << s.nondominated
          << " nondominated, max AKKT residual " << sci(s.max_stationarity)
          << " -> " << dir.string() << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    err << "eedp front: " << e.what() << '\n';
    return 1;
  }
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const auto problem = dispatch::load_problem(config.problem);
    const auto grid = oracle::GridSpec::for_problem(problem);
    auto report = moo::build_front(problem, config.n_points,
                                   config.smoothing_for(config.mu_min.front()),
                                   config.sweep_options());
    if (config.inject_cost_offset != 0) {
      for (auto& pt : report.points) {
        if (!pt.solved()) continue;
        pt.cost_exact += config.inject_cost_offset;
        break;
      }
    }
    const auto v = report::verify_front(problem, report, grid);
    out << "oracle front: " << v.oracle_front_size << " grid points at "
        << fixed(grid.resolution, 2) << " MW\n"
        << "max gap: cost " << fixed(v.distance.cost, 6) << " $, emission "
        << fixed(v.distance.emission, 6) << " kg/h\n";
    if (v.within_tolerance) {
      out << "verify: PASS\n";
      return 0;
    }
    out << "verify: FAIL, worst point #" << v.worst_point << " (cost "
        << fixed(v.worst.cost, 6) << ", emission " << fixed(v.worst.emission, 6)
        << ") is " << fixed(v.distance.combined, 6)
        << " from the oracle front\n";
    return 1;
  } catch (const UnsupportedOracleError& e) {
    err << "eedp verify: unsupported oracle: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "eedp verify: " << e.what() << '\n';
    return 1;
  }
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    report::CheckOptions options;
    options.uniform_kappa_override = config.inject_uniform_kappa;
    bool all = true;
    for (const auto& r : report::run_property_battery(options)) {
      out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
          << '\n';
      all = all && r.passed;
    }
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    err << "eedp check: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace eedp::cli
