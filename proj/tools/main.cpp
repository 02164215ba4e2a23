#include <CLI11.hpp>
#include <iostream>

#include "radhess/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"radhess: radial (k1,k2)-Hessian system solver and asymptotics classifier"};
  app.require_subcommand(1);

  std::string config_path;
  radhess::cli::RunOptions opt;
  double rmax = 0, tol = 0, limit_budget = 0;
  int grid_n = 0, max_iter = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "configuration file")->required();
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
    cmd->add_option("--rmax", rmax, "radial domain bound");
    cmd->add_option("--grid-n", grid_n, "grid intervals");
    cmd->add_option("--tol", tol, "convergence tolerance");
    cmd->add_option("--max-iter", max_iter, "iteration budget");
    cmd->add_option("--limit-budget", limit_budget, "radius budget for limit estimation");
  };

  CLI::App* solve = app.add_subcommand("solve", "build the radial solution profile");
  add_common(solve);
  CLI::App* classify = app.add_subcommand("classify", "bounded/large theorem classification");
  add_common(classify);
  CLI::App* verify = app.add_subcommand("verify", "residuals of a closed-form candidate");
  add_common(verify);
  verify->add_option("--u1", opt.u1, "closed-form u1(t)")->required();
  verify->add_option("--u2", opt.u2, "closed-form u2(t)")->required();
  verify->add_option("--du1", opt.du1, "analytic u1'(t)");
  verify->add_option("--ddu1", opt.ddu1, "analytic u1''(t)");
  verify->add_option("--du2", opt.du2, "analytic u2'(t)");
  verify->add_option("--ddu2", opt.ddu2, "analytic u2''(t)");
  CLI::App* hypotheses = app.add_subcommand("hypotheses", "sample-based hypothesis check");
  add_common(hypotheses);

  CLI11_PARSE(app, argc, argv);

  auto fill = [&](CLI::App* cmd) {
    if (cmd->count("--rmax")) opt.rmax = rmax;
    if (cmd->count("--grid-n")) opt.grid_n = grid_n;
    if (cmd->count("--tol")) opt.tol = tol;
    if (cmd->count("--max-iter")) opt.max_iter = max_iter;
    if (cmd->count("--limit-budget")) opt.limit_budget = limit_budget;
  };

  try {
    radhess::ConfigDocument config = radhess::load_config(config_path);
    if (solve->parsed()) {
      fill(solve);
      return radhess::cli::run_solve(config, opt, std::cout);
    }
    if (classify->parsed()) {
      fill(classify);
      return radhess::cli::run_classify(config, opt, std::cout);
    }
    if (verify->parsed()) {
      fill(verify);
      return radhess::cli::run_verify(config, opt, std::cout);
    }
    fill(hypotheses);
    return radhess::cli::run_hypotheses(config, opt, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return radhess::cli::kFault;
  }
}
