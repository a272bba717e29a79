#include "eedp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace eedp::report {

namespace {

std::string fixed6(real_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lf", v);
  return buf;
}

std::string sci6(real_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Le", v);
  return buf;
}

std::string compact(real_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4Lg", v);
  return buf;
}

std::vector<moo::ObjectivePoint> solved_objectives(
    const moo::FrontReport& report, std::vector<std::size_t>* index = nullptr) {
  std::vector<moo::ObjectivePoint> out;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& pt = report.points[i];
    if (!pt.solved()) continue;
    out.push_back({pt.cost_exact, pt.emission});
    if (index) index->push_back(i);
  }
  return out;
}

}  // namespace

void write_front_csv(std::ostream& out, const moo::FrontReport& report) {
  std::size_t units = 0;
  for (const auto& pt : report.points) {
    units = std::max(units, static_cast<std::size_t>(pt.p.size()));
  }
  out << "l,epsilon";
  for (std::size_t i = 1; i <= units; ++i) out << ",P" << i;
  out << ",cost_exact,cost_smoothed,emission,mu_final,akkt_stationarity,"
         "status\n";
  for (const auto& pt : report.points) {
    out << pt.l << ',' << fixed6(pt.epsilon);
    for (std::size_t i = 0; i < units; ++i) {
      out << ','
          << (pt.solved() ? fixed6(pt.p[static_cast<Eigen::Index>(i)]) : "nan");
    }
    if (pt.solved()) {
      out << ',' << fixed6(pt.cost_exact) << ',' << fixed6(pt.cost_smoothed)
          << ',' << fixed6(pt.emission) << ',' << sci6(pt.mu_final) << ','
          << sci6(pt.akkt.stationarity_norm);
    } else {
      out << ",nan,nan,nan," << sci6(pt.mu_final) << ",nan";
    }
    out << ',' << nlp::to_string(pt.solver_status) << '\n';
  }
}

void write_front_svg(std::ostream& out, const moo::FrontReport& report,
                     const std::string& title) {
  constexpr real_t width = 640;
  constexpr real_t height = 480;
  constexpr real_t left = 80;
  constexpr real_t right = 20;
  constexpr real_t top = 40;
  constexpr real_t bottom = 60;

  const auto objectives = solved_objectives(report);
  real_t cmin = 0, cmax = 1, emin = 0, emax = 1;
  if (!objectives.empty()) {
    cmin = cmax = objectives.front().cost;
    emin = emax = objectives.front().emission;
    for (const auto& o : objectives) {
      cmin = std::min(cmin, o.cost);
      cmax = std::max(cmax, o.cost);
      emin = std::min(emin, o.emission);
      emax = std::max(emax, o.emission);
    }
  }
  auto pad = [](real_t& lo, real_t& hi) {
    const real_t span = hi - lo;
    const real_t margin = span > 0 ? 0.05L * span : 1;
    lo -= margin;
    hi += margin;
  };
  pad(cmin, cmax);
  pad(emin, emax);
  const real_t plot_w = width - left - right;
  const real_t plot_h = height - top - bottom;
  auto sx = [&](real_t c) { return left + (c - cmin) / (cmax - cmin) * plot_w; };
  auto sy = [&](real_t e) {
    return top + plot_h - (e - emin) / (emax - emin) * plot_h;
  };
  auto num = [](real_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2Lf", v);
    return std::string(buf);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
      << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"14\">" << title << "</text>\n";
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
      << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int ticks = 5;
  for (int k = 0; k <= ticks; ++k) {
    const real_t c = cmin + (cmax - cmin) * k / ticks;
    const real_t e = emin + (emax - emin) * k / ticks;
    const real_t x = sx(c);
    const real_t y = sy(e);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + plot_h)
        << "\" x2=\"" << num(x) << "\" y2=\"" << num(top + plot_h + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(top + plot_h + 18)
        << "\" text-anchor=\"middle\">" << num(c) << "</text>\n";
    out << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(left) << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">" << num(e) << "</text>\n";
  }
  out << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 15)
      << "\" text-anchor=\"middle\">Cost ($)</text>\n";
  out << "<text x=\"18\" y=\"" << num(top + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(top + plot_h / 2) << ")\">Emission (kg/h)</text>\n";

  for (const auto& pt : report.points) {
    if (!pt.solved()) continue;
    out << "<circle class=\"point\" cx=\"" << num(sx(pt.cost_exact))
        << "\" cy=\"" << num(sy(pt.emission)) << "\" r=\"3\" "
        << (pt.nondominated ? "fill=\"#1f5fa8\" stroke=\"#1f5fa8\""
                            : "fill=\"none\" stroke=\"#c0392b\"")
        << "><title>l=" << pt.l << "</title></circle>\n";
  }
  out << "</svg>\n";
}

FrontSummary summarize(const moo::FrontReport& report) {
  FrontSummary s;
  for (const auto& pt : report.points) {
    if (!pt.solved()) {
      ++s.infeasible;
      continue;
    }
    ++s.solved;
    if (pt.solver_status == nlp::SolverStatus::Converged) ++s.converged;
    if (pt.nondominated) ++s.nondominated;
    if (pt.monotonicity_violation) ++s.monotonicity_violations;
    s.max_stationarity = std::max(s.max_stationarity, pt.akkt.stationarity_norm);
    s.max_complementarity =
        std::max(s.max_complementarity, pt.akkt.complementarity_max);
    s.max_smoothing_gap =
        std::max(s.max_smoothing_gap, pt.cost_exact - pt.cost_smoothed);
  }
  return s;
}

void write_summary(std::ostream& out, const moo::FrontReport& report) {
  const FrontSummary s = summarize(report);
  out << "problem digest      " << report.problem_digest << '\n'
      << "emission bounds     [" << fixed6(report.bounds.e_min) << ", "
      << fixed6(report.bounds.e_max) << "] kg/h\n"
      << "epsilon step tau    " << fixed6(report.schedule.tau) << " kg/h\n"
      << "mu schedule        ";
  for (real_t mu : report.mu_schedule) out << ' ' << compact(mu);
  out << '\n'
      << "points solved       " << s.solved << " of " << report.points.size()
      << " (" << s.converged << " converged, " << s.infeasible
      << " infeasible)\n"
      << "nondominated        " << s.nondominated << '\n'
      << "max AKKT residual   " << sci6(s.max_stationarity) << '\n'
      << "max complementarity " << sci6(s.max_complementarity) << '\n'
      << "max smoothing gap   " << sci6(s.max_smoothing_gap) << " $\n"
      << "eps-monotonicity    " << s.monotonicity_violations
      << " violation(s)\n"
      << "note                AKKT certificates check necessary conditions "
         "only; the valve-point cost is not convex.\n";
}

VerifyOutcome verify_front(const dispatch::DispatchProblem& problem,
                           const moo::FrontReport& report,
                           const oracle::GridSpec& grid,
                           VerifyTolerance tolerance) {
  std::vector<std::size_t> index;
  const auto solver = solved_objectives(report, &index);
  const auto front = oracle::grid_front(problem, grid);
  std::vector<moo::ObjectivePoint> reference;
  reference.reserve(front.size());
  for (const auto& g : front) reference.push_back({g.cost, g.emission});

  VerifyOutcome outcome;
  outcome.oracle_front_size = reference.size();
  if (solver.empty()) return outcome;
  outcome.distance = oracle::front_distance(solver, reference);
  outcome.worst_point = index[outcome.distance.worst_index];
  outcome.worst = solver[outcome.distance.worst_index];
  outcome.within_tolerance = outcome.distance.cost <= tolerance.cost &&
                             outcome.distance.emission <= tolerance.emission;
  return outcome;
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> run_property_battery(const CheckOptions& options) {
  using namespace smoothing;
  constexpr real_t kHalfPi = std::numbers::pi_v<real_t> / 2;
  constexpr real_t kLn2 = std::numbers::ln2_v<real_t>;

  std::mt19937_64 rng(options.seed);
  auto uniform = [&](real_t lo, real_t hi) {
    return std::uniform_real_distribution<long double>(lo, hi)(rng);
  };
  // mu drawn away from the open endpoints of (0, pi/2).
  auto draw_mu = [&] { return uniform(1e-9L, kHalfPi * (1 - 1e-9L)); };

  const SmoothingKernel uniform_k =
      options.uniform_kappa_override
          ? SmoothingKernel(KernelKind::UniformConvolution,
                            *options.uniform_kappa_override)
          : uniform_kernel();
  const SmoothingKernel sigmoid_k = sigmoid_kernel();
  const SmoothingKernel* kernels[] = {&uniform_k, &sigmoid_k};
  auto kernel_name = [](const SmoothingKernel& k) {
    return k.kind() == KernelKind::UniformConvolution ? "uniform" : "sigmoid";
  };

  std::vector<PropertyResult> results;
  auto record = [&](std::string name, bool ok, std::string detail) {
    results.push_back({std::move(name), ok, std::move(detail)});
  };

  {  // error band of theta_mu
    real_t worst_low = std::numeric_limits<real_t>::infinity();
    real_t worst_high = -std::numeric_limits<real_t>::infinity();
    for (int i = 0; i < options.samples; ++i) {
      const real_t t = uniform(-1000, 1000);
      const real_t mu = draw_mu();
      const real_t gap = std::abs(t) - theta_abs(t, mu);
      worst_low = std::min(worst_low, gap);
      worst_high = std::max(worst_high, gap - std::sin(mu) * kLn2);
    }
    record("theta error band 0 <= |t| - theta <= sin(mu) ln 2",
           worst_low >= -1e-12L && worst_high <= 1e-12L,
           "min gap " + sci6(worst_low) + ", max excess " + sci6(worst_high));
  }

  {  // derivative bound; tanh rounds to exactly 1 once |t/sin mu| > ~22
    real_t worst = 0;
    bool strict = true;
    for (int i = 0; i < options.samples; ++i) {
      const real_t t = uniform(-1000, 1000);
      const real_t mu = draw_mu();
      const real_t d = std::abs(theta_abs_grad(t, mu));
      worst = std::max(worst, d);
      if (std::abs(t) / std::sin(mu) < 20 && !(d < 1)) strict = false;
    }
    record("theta derivative bound |theta'| < 1", worst <= 1 && strict,
           "max |theta'| " + sci6(worst));
  }

  {  // convexity by second divided differences
    real_t worst = 0;
    for (int i = 0; i < options.samples; ++i) {
      real_t ts[3] = {uniform(-5, 5), uniform(-5, 5), uniform(-5, 5)};
      std::sort(ts, ts + 3);
      if (ts[1] - ts[0] < 1e-3L || ts[2] - ts[1] < 1e-3L) continue;
      const real_t mu = uniform(0.01L, 1.5L);
      auto dd2 = [&](auto&& f) {
        const real_t d01 = (f(ts[1]) - f(ts[0])) / (ts[1] - ts[0]);
        const real_t d12 = (f(ts[2]) - f(ts[1])) / (ts[2] - ts[1]);
        return (d12 - d01) / (ts[2] - ts[0]);
      };
      worst = std::min(worst, dd2([&](real_t t) { return theta_abs(t, mu); }));
      for (const auto* k : kernels) {
        worst = std::min(worst,
                         dd2([&](real_t t) { return phi_plus(t, mu, *k); }));
      }
    }
    record("convexity of theta and phi", worst >= -1e-10L,
           "min second divided difference " + sci6(worst));
  }

  for (const auto* k : kernels) {  // monotone in mu, bounded by kappa
    real_t worst_low = 0;
    real_t worst_high = 0;
    for (int i = 0; i < options.samples; ++i) {
      const real_t t = uniform(-2, 2);
      real_t mu1 = uniform(1e-4L, 1.5L);
      real_t mu2 = uniform(1e-4L, 1.5L);
      if (mu1 == mu2) continue;
      if (mu1 > mu2) std::swap(mu1, mu2);
      const real_t diff = phi_plus(t, mu2, *k) - phi_plus(t, mu1, *k);
      worst_low = std::min(worst_low, diff);
      worst_high = std::max(worst_high, diff - k->kappa() * (mu2 - mu1));
    }
    record(std::string("monotone in mu, ") + kernel_name(*k) +
               ": 0 <= phi(mu2) - phi(mu1) <= kappa (mu2 - mu1)",
           worst_low >= -1e-12L && worst_high <= 1e-12L,
           "kappa " + sci6(k->kappa()) + ", min diff " + sci6(worst_low) +
               ", max excess " + sci6(worst_high));
  }

  for (const auto* k : kernels) {  // closed form vs quadrature of the density
    real_t worst = 0;
    bool band = true;
    for (int i = 0; i < 50; ++i) {
      const real_t t = -2 + 4 * static_cast<real_t>(i) / 49;
      for (int j = 0; j < 20; ++j) {
        const real_t mu = 0.05L + 1.45L * static_cast<real_t>(j) / 19;
        const real_t closed = phi_plus(t, mu, *k);
        worst = std::max(worst,
                         std::abs(closed - phi_plus_by_quadrature(t, mu, *k)));
        const real_t gap = closed - std::max<real_t>(t, 0);
        const bool covered = k->kind() == KernelKind::SigmoidConvolution ||
                             std::abs(t) < mu / 2;
        band = band && gap >= 0 && gap <= k->kappa() * mu + 1e-15L &&
               (!covered || gap > 0);
      }
    }
    record(std::string("closed form matches quadrature, ") + kernel_name(*k),
           worst <= 1e-6L && band,
           "max |closed - quadrature| " + sci6(worst) +
               (band ? ", band ok" : ", band violated"));
  }

  {  // gradient consistency
    const auto at0 = gradient_consistency_probe(ProbeTarget::AbsLogCosh, 0, 40);
    const auto at2 = gradient_consistency_probe(ProbeTarget::AbsLogCosh, 2, 40);
    const auto atm2 =
        gradient_consistency_probe(ProbeTarget::AbsLogCosh, -2, 40);
    const auto plus_u =
        gradient_consistency_probe(ProbeTarget::PlusUniform, 0, 40);
    const auto plus_s =
        gradient_consistency_probe(ProbeTarget::PlusSigmoid, 0, 40);
    std::string limits;
    for (const auto& s : at0.sequences) limits += ' ' + compact(s.limit);
    record("gradient consistency probes",
           at0.success && at2.success && atm2.success && plus_u.success &&
               plus_s.success,
           "limits at 0:" + limits);
  }

  {  // finite differences of the smoothed derivatives
    real_t worst = 0;
    for (int i = 0; i < 1000; ++i) {
      const real_t t = uniform(-5, 5);
      const real_t mu = uniform(0.01L, 1.5L);
      const real_t h = 1e-6L;
      auto rel = [](real_t fd, real_t an) {
        return std::abs(fd - an) / std::max<real_t>(1, std::abs(an));
      };
      worst = std::max(worst, rel((theta_abs(t + h, mu) - theta_abs(t - h, mu)) / (2 * h),
                                  theta_abs_grad(t, mu)));
      for (const auto* k : kernels) {
        if (k->kind() == KernelKind::UniformConvolution &&
            std::abs(std::abs(t) - mu / 2) < 4 * h) {
          continue;
        }
        worst = std::max(
            worst, rel((phi_plus(t + h, mu, *k) - phi_plus(t - h, mu, *k)) / (2 * h),
                       phi_plus_grad(t, mu, *k)));
      }
    }
    record("derivatives match central differences", worst <= 1e-6L,
           "max relative error " + sci6(worst));
  }
  return results;
}

}  // namespace eedp::report
