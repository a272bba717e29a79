#include <doctest.h>

#include <regex>
#include <sstream>
#include <string>

#include "eedp/report.hpp"
#include "helpers.hpp"

using namespace eedp;
using testing::two_gen;

namespace {

const moo::FrontReport& front() {
  static const auto f =
      moo::build_front(two_gen(), 70, smoothing::SmoothParam{0.1L, 0.1L, 1e-6L});
  return f;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("front.csv layout") {
  std::ostringstream out;
  report::write_front_csv(out, front());
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 71);
  CHECK(rows[0] ==
        "l,epsilon,P1,P2,cost_exact,cost_smoothed,emission,mu_final,"
        "akkt_stationarity,status");
  const std::regex row(
      R"(\d+,-?\d+\.\d{6},(-?\d+\.\d{6},){2}(-?\d+\.\d{6},){3})"
      R"(\d\.\d{6}e[+-]\d+,\d\.\d{6}e[+-]\d+,(Converged|IterationLimit|Infeasible))");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK_MESSAGE(std::regex_match(rows[i], row), rows[i]);
    CHECK(rows[i].rfind(std::to_string(i) + ",", 0) == 0);
  }
}

TEST_CASE("front.csv is deterministic") {
  std::ostringstream a, b;
  report::write_front_csv(a, front());
  const auto again =
      moo::build_front(two_gen(), 70, smoothing::SmoothParam{0.1L, 0.1L, 1e-6L});
  report::write_front_csv(b, again);
  CHECK(a.str() == b.str());
}

TEST_CASE("infeasible rows") {
  moo::FrontReport r;
  moo::ParetoPoint pt;
  pt.l = 1;
  pt.epsilon = 10;
  pt.mu_final = 1e-6L;
  r.points.push_back(pt);
  std::ostringstream out;
  report::write_front_csv(out, r);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == "1,10.000000,nan,nan,nan,1.000000e-06,nan,Infeasible");

  std::ostringstream svg;
  report::write_front_svg(svg, r, "empty");
  CHECK(count(svg.str(), "class=\"point\"") == 0);
}

TEST_CASE("front.svg") {
  std::ostringstream out;
  report::write_front_svg(out, front(), "Pareto front for mu=1e-06");
  const std::string svg = out.str();
  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  int solved = 0;
  for (const auto& p : front().points) solved += p.solved();
  CHECK(count(svg, "<circle class=\"point\"") == static_cast<std::size_t>(solved));
  CHECK(svg.find(">Cost ($)</text>") != std::string::npos);
  CHECK(svg.find(">Emission (kg/h)</text>") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);  // self-contained
}

TEST_CASE("summary") {
  const auto s = report::summarize(front());
  CHECK(s.solved == 70);
  CHECK(s.infeasible == 0);
  CHECK(s.converged == 70);
  CHECK(s.nondominated > 0);
  CHECK(s.max_stationarity <= 1e-8L);
  CHECK(s.max_smoothing_gap >= 0);
  std::ostringstream out;
  report::write_summary(out, front());
  CHECK(out.str().find("points solved       70 of 70") != std::string::npos);
  CHECK(out.str().find(two_gen().digest()) != std::string::npos);
}

TEST_CASE("verify against the grid oracle") {
  const auto grid = oracle::GridSpec::for_problem(two_gen());
  const auto ok = report::verify_front(two_gen(), front(), grid);
  CHECK(ok.within_tolerance);
  CHECK(ok.distance.cost <= 0.5L);
  CHECK(ok.distance.emission <= 0.5L);
  CHECK(ok.oracle_front_size > 0);

  auto broken = front();
  broken.points[10].cost_exact += 25;
  const auto bad = report::verify_front(two_gen(), broken, grid);
  CHECK(!bad.within_tolerance);
  CHECK(bad.worst_point == 10);
}

TEST_CASE("property battery") {
  report::CheckOptions options;
  options.samples = 2000;
  for (const auto& r : report::run_property_battery(options)) {
    CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
  }

  // A wrong kappa breaks exactly the kappa-dependent uniform checks.
  options.uniform_kappa_override = 0.05L;
  bool monotone_failed = false;
  for (const auto& r : report::run_property_battery(options)) {
    if (r.name.find("monotone in mu, uniform") != std::string::npos) {
      monotone_failed = !r.passed;
    } else if (r.name.find("uniform") == std::string::npos) {
      CHECK_MESSAGE(r.passed, r.name);
    }
  }
  CHECK(monotone_failed);
}
