#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gsmt/commands.hpp"
#include "gsmt/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

void add_common_flags(CLI::App* sub, gsmt::CommandOptions& opt, int& threads) {
  sub->add_option("--config", opt.config_path, "Path to the JSON run configuration")->required();
  sub->add_option("--format", opt.format, "Output format: table, csv, or json");
  sub->add_option("--method", opt.method, "Override method: bonferroni or wpgsd");
  sub->add_option("--alpha", opt.alpha, "Override family-wise error rate");
  sub->add_option("--mvn-tol", opt.mvn_tol, "Override integration tolerance");
  sub->add_option("--threads", threads, "Worker threads (default: all available)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(gsmt::kToolName) +
               " - sequential and adjusted-sequential p-values for group sequential designs"};
  app.set_version_flag("--version", gsmt::kToolVersion);
  app.require_subcommand(1);

  gsmt::CommandOptions opt;
  int threads = 0;

  CLI::App* weights = app.add_subcommand("weights", "Intersection weight table");
  add_common_flags(weights, opt, threads);

  CLI::App* corr = app.add_subcommand("corr", "Complete correlation structure");
  add_common_flags(corr, opt, threads);

  CLI::App* bounds = app.add_subcommand("bounds", "Group-sequential Z bounds at a probe level");
  add_common_flags(bounds, opt, threads);
  bounds->add_option("--mu", opt.mu, "Probe level (default: alpha)");
  bounds->add_option("--subset", opt.subset, "Comma-separated 1-based hypothesis indices");

  CLI::App* analyze = app.add_subcommand("analyze", "Closed-test report through an analysis");
  add_common_flags(analyze, opt, threads);
  analyze->add_option("--analysis", opt.analysis, "Analysis number (default: last with data)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo error/power estimation");
  add_common_flags(simulate, opt, threads);
  simulate->add_option("--reps", opt.reps, "Replications");
  simulate->add_option("--seed", opt.seed, "Simulation seed");

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  if (weights->parsed()) return gsmt::cmd_weights(opt, std::cout, std::cerr);
  if (corr->parsed()) return gsmt::cmd_corr(opt, std::cout, std::cerr);
  if (bounds->parsed()) return gsmt::cmd_bounds(opt, std::cout, std::cerr);
  if (analyze->parsed()) return gsmt::cmd_analyze(opt, std::cout, std::cerr);
  if (simulate->parsed()) return gsmt::cmd_simulate(opt, std::cout, std::cerr);
  return 1;
}
