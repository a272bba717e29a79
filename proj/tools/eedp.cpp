// eedp: economic/emission dispatch Pareto fronts from the command line.
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "eedp/cli.hpp"

#ifndef EEDP_DEFAULT_PROBLEM
#define EEDP_DEFAULT_PROBLEM "data/two_gen_650.json"
#endif

int main(int argc, char** argv) {
  CLI::App app{"Economic and emission dispatch: smoothed epsilon-constraint "
               "Pareto fronts"};
  app.require_subcommand(1);

  eedp::cli::RunConfig config;
  config.problem = EEDP_DEFAULT_PROBLEM;
  std::string problem = config.problem.string();
  std::string out_dir = ".";
  long double mu0 = config.mu0;
  long double alpha = config.alpha;
  long double tol = config.kkt_tol;
  std::vector<long double> mu_min{1e-6L};

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--problem", problem, "Problem definition (JSON)")
        ->capture_default_str();
    cmd->add_option("--points", config.n_points, "Number of epsilon levels")
        ->capture_default_str();
    cmd->add_option("--mu0", mu0, "Initial smoothing parameter")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "mu reduction factor in (0,1)")
        ->capture_default_str();
    cmd->add_option("--mu-min", mu_min,
                    "Final smoothing parameter; several values give one "
                    "front each")
        ->capture_default_str();
    cmd->add_option("--tol", tol, "KKT residual tolerance")
        ->capture_default_str();
    cmd->add_option("--seeds", config.seeds, "Multi-start seeds per subproblem")
        ->capture_default_str();
  };

  auto* front = app.add_subcommand("front", "Trace the Pareto front");
  add_run_options(front);
  front->add_option("--out", out_dir, "Output directory")->capture_default_str();
  front->add_flag("--plot,!--no-plot", config.plot, "Write front.svg")
      ->capture_default_str();

  auto* verify =
      app.add_subcommand("verify", "Compare the front with a grid oracle");
  add_run_options(verify);

  auto* check = app.add_subcommand("check", "Run the smoothing property battery");

  CLI11_PARSE(app, argc, argv);

  config.problem = problem;
  config.out_dir = out_dir;
  config.mu0 = mu0;
  config.alpha = alpha;
  config.kkt_tol = tol;
  config.mu_min.assign(mu_min.begin(), mu_min.end());

  if (front->parsed()) return eedp::cli::cmd_front(config, std::cout, std::cerr);
  if (verify->parsed()) return eedp::cli::cmd_verify(config, std::cout, std::cerr);
  if (check->parsed()) return eedp::cli::cmd_check(config, std::cout, std::cerr);
  return 1;
}
