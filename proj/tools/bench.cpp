// Compares the OpenMP kernels against their serial reference paths on the
// workloads that dominate real runs: MVN rectangle probabilities, the
// closed-test closure pass, and Monte Carlo replications.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "gsmt/config.hpp"
#include "gsmt/inference.hpp"
#include "gsmt/simulate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

gsmt::RunConfig example_config() {
  nlohmann::json doc = {
      {"alpha", 0.025},
      {"method", "wpgsd"},
      {"hypotheses", {"H1", "H2", "H3"}},
      {"weighting",
       {{"initial_weights", {0.3, 0.3, 0.4}},
        {"transition",
         {{0.0, 3.0 / 7.0, 4.0 / 7.0}, {3.0 / 7.0, 0.0, 4.0 / 7.0}, {0.5, 0.5, 0.0}}}}},
      {"spending", {{"family", "hsd"}, {"gamma", -4.0}}},
      {"events",
       {{"counts", {{100, 200}, {110, 220}, {225, 450}}},
        {"overlap",
         {{{"pair", {1, 2}}, {"counts", {80, 160}}},
          {{"pair", {1, 3}}, {"counts", {100, 200}}},
          {{"pair", {2, 3}}, {"counts", {110, 220}}}}}}},
      {"observed", {{"p", {{0.015, 0.015}, {0.010, 0.012}, {0.010, 0.010}}}}}};
  return gsmt::parse_config(doc);
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("kernel benchmark, %d thread(s)\n", threads);
  std::printf("%-28s %10s %10s %8s %10s\n", "kernel", "serial ms", "parallel", "speedup",
              "max |diff|");

  const gsmt::RunConfig cfg = example_config();
  const gsmt::Design design = gsmt::to_design(cfg);

  {  // MVN rectangle probabilities at the full 6-statistic dimension,
     // at the tolerance the boundary root-finders actually request
    std::vector<double> bounds(6, 2.0);
    gsmt::MvnSettings serial = design.mvn;
    serial.tol = 3e-5;
    serial.parallel = false;
    gsmt::MvnSettings parallel = serial;
    parallel.parallel = true;

    const int n = 40;
    auto t0 = Clock::now();
    double acc_s = 0.0;
    for (int i = 0; i < n; ++i) {
      bounds[0] = 2.0 + 0.01 * i;
      acc_s += gsmt::union_crossing_probability(bounds, design.ccs, serial).value;
    }
    const double ms_serial = ms_since(t0);

    t0 = Clock::now();
    double acc_p = 0.0;
    for (int i = 0; i < n; ++i) {
      bounds[0] = 2.0 + 0.01 * i;
      acc_p += gsmt::union_crossing_probability(bounds, design.ccs, parallel).value;
    }
    const double ms_parallel = ms_since(t0);
    std::printf("%-28s %10.1f %10.1f %8.2f %10.2e\n", "mvn union (dim 6, 3e-5)", ms_serial,
                ms_parallel, ms_serial / ms_parallel, std::fabs(acc_s - acc_p));
  }

  {  // closed test at the final analysis (subset loop is the parallel axis)
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    auto t0 = Clock::now();
    const gsmt::InferenceReport serial =
        gsmt::closed_test_report(design, gsmt::Method::wpgsd, 2, cfg.alpha, *cfg.observed);
    const double ms_serial = ms_since(t0);
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
    t0 = Clock::now();
    const gsmt::InferenceReport parallel =
        gsmt::closed_test_report(design, gsmt::Method::wpgsd, 2, cfg.alpha, *cfg.observed);
    const double ms_parallel = ms_since(t0);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < serial.intersections.size(); ++i)
      max_diff = std::max(max_diff,
                          std::fabs(serial.intersections[i].p - parallel.intersections[i].p));
    std::printf("%-28s %10.1f %10.1f %8.2f %10.2e\n", "closed test (wpgsd, k=2)", ms_serial,
                ms_parallel, ms_serial / ms_parallel, max_diff);
  }

  {  // Monte Carlo replications
    gsmt::SimulationPlan plan;
    plan.n_reps = 200000;
    plan.seed = 7;
    plan.method = gsmt::Method::bonferroni;
    plan.alpha = cfg.alpha;

    auto t0 = Clock::now();
    const gsmt::SimulationResult serial = gsmt::simulate_serial(design, plan);
    const double ms_serial = ms_since(t0);
    t0 = Clock::now();
    const gsmt::SimulationResult parallel = gsmt::simulate(design, plan);
    const double ms_parallel = ms_since(t0);
    std::printf("%-28s %10.1f %10.1f %8.2f %10.2e\n", "simulate (2e5 reps)", ms_serial,
                ms_parallel, ms_serial / ms_parallel,
                std::fabs(serial.any_rejection_rate - parallel.any_rejection_rate));
  }

  return 0;
}
