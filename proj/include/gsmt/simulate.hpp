#pragma once

#include <cstdint>
#include <vector>

#include "gsmt/inference.hpp"

namespace gsmt {

/// Monte Carlo plan: draw Z vectors from the design's complete correlation
/// structure (plus an optional mean shift per statistic), run the closed
/// test at each analysis at level alpha, and count rejections.
struct SimulationPlan {
  long n_reps = 100000;
  std::uint64_t seed = 1;
  Method method = Method::bonferroni;
  double alpha = 0.025;
  Matrix means;  // m x K mean shifts; empty means global null
};

struct SimulationResult {
  long n_reps = 0;
  std::uint64_t seed = 0;
  Method method = Method::bonferroni;
  double alpha = 0.025;
  double any_rejection_rate = 0.0;  // FWER estimate under the global null
  double any_rejection_se = 0.0;
  std::vector<double> rejection_rate;  // per hypothesis
  std::vector<double> rejection_se;
};

/// OpenMP kernel; replication counts are integers so the result is
/// identical for any worker count.
SimulationResult simulate(const Design& design, const SimulationPlan& plan);

/// Plain serial loop kept as the reference implementation; must match
/// simulate() exactly for the same plan.
SimulationResult simulate_serial(const Design& design, const SimulationPlan& plan);

}  // namespace gsmt
