#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eedp/cli.hpp"
#include "eedp/dispatch.hpp"
#include "helpers.hpp"

using namespace eedp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("eedp_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

cli::RunConfig base(const fs::path& out) {
  cli::RunConfig c;
  c.problem = testing::bundled_path();
  c.out_dir = out;
  return c;
}

}  // namespace

TEST_CASE("front writes csv, svg and report") {
  const auto dir = scratch("front");
  std::ostringstream out, err;
  REQUIRE(cli::cmd_front(base(dir), out, err) == 0);
  CHECK(line_count(slurp(dir / "front.csv")) == 71);
  CHECK(fs::exists(dir / "front.svg"));
  CHECK(fs::exists(dir / "report.txt"));
  CHECK(out.str().find("70/70 points solved") != std::string::npos);
  CHECK(out.str().find("nondominated") != std::string::npos);
  CHECK(out.str().find("max AKKT residual") != std::string::npos);

  const auto again = scratch("front_again");
  REQUIRE(cli::cmd_front(base(again), out, err) == 0);
  CHECK(slurp(dir / "front.csv") == slurp(again / "front.csv"));
}

TEST_CASE("front with one point and no plot") {
  const auto dir = scratch("single");
  auto c = base(dir);
  c.n_points = 1;
  c.plot = false;
  std::ostringstream out, err;
  REQUIRE(cli::cmd_front(c, out, err) == 0);
  CHECK(line_count(slurp(dir / "front.csv")) == 2);
  CHECK(!fs::exists(dir / "front.svg"));
}

TEST_CASE("front for several mu_min values") {
  const auto dir = scratch("mu_set");
  auto c = base(dir);
  c.n_points = 10;
  c.mu_min = {1e-6L, 1e-4L, 0.01L, 0.1L, 0.5L, 1};
  std::ostringstream out, err;
  REQUIRE(cli::cmd_front(c, out, err) == 0);
  for (const char* sub : {"mu_1e-06", "mu_0.0001", "mu_0.01", "mu_0.1", "mu_0.5", "mu_1"}) {
    CHECK_MESSAGE(fs::exists(dir / sub / "front.svg"), sub);
    CHECK(line_count(slurp(dir / sub / "front.csv")) == 11);
  }
}

TEST_CASE("front reports load and config errors") {
  const auto dir = scratch("errors");
  auto c = base(dir);
  c.problem = dir / "missing.json";
  std::ostringstream out, err;
  CHECK(cli::cmd_front(c, out, err) == 1);
  CHECK(!err.str().empty());

  c = base(dir);
  c.alpha = 1.5L;
  CHECK(cli::cmd_front(c, out, err) == 1);
  c = base(dir);
  c.n_points = 0;
  CHECK(cli::cmd_front(c, out, err) == 1);
  c = base(dir);
  c.mu_min = {2};
  CHECK(cli::cmd_front(c, out, err) == 1);
}

TEST_CASE("verify") {
  auto c = base(scratch("verify"));
  std::ostringstream out, err;
  CHECK(cli::cmd_verify(c, out, err) == 0);
  CHECK(out.str().find("verify: PASS") != std::string::npos);

  // Below the front: no dispatch is that cheap at this emission.
  c.inject_cost_offset = -50;
  std::ostringstream out2;
  CHECK(cli::cmd_verify(c, out2, err) == 1);
  CHECK(out2.str().find("worst point #0") != std::string::npos);
}

TEST_CASE("verify refuses problems beyond the oracle") {
  const auto dir = scratch("verify3");
  using testing::unit;
  const dispatch::DispatchProblem p(
      {unit("A", 50, 300), unit("B", 50, 300), unit("C", 50, 300), unit("D", 50, 300)},
      600);
  std::ofstream(dir / "four.json") << dispatch::to_problem_text(p);
  auto c = base(dir);
  c.problem = dir / "four.json";
  std::ostringstream out, err;
  CHECK(cli::cmd_verify(c, out, err) == 2);
  CHECK(err.str().find("unsupported oracle") != std::string::npos);
}

TEST_CASE("check") {
  cli::RunConfig c;
  std::ostringstream out, err;
  CHECK(cli::cmd_check(c, out, err) == 0);
  CHECK(out.str().find("[FAIL]") == std::string::npos);
  CHECK(out.str().find("[PASS] gradient consistency probes") != std::string::npos);

  c.inject_uniform_kappa = 0.05L;
  std::ostringstream out2;
  CHECK(cli::cmd_check(c, out2, err) == 1);
  CHECK(out2.str().find("[FAIL] monotone in mu, uniform") != std::string::npos);
}
