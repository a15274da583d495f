#include "doctest.h"

#include <cmath>

#include "gsmt/simulate.hpp"
#include "fixtures.hpp"

using namespace gsmt;

TEST_SUITE_BEGIN("simulate");

TEST_CASE("deterministic for a fixed seed") {
  const Design d = fixtures::design3();
  SimulationPlan plan;
  plan.n_reps = 1;
  plan.seed = 31337;
  plan.method = Method::bonferroni;
  plan.alpha = 0.025;
  const SimulationResult a = simulate(d, plan);
  const SimulationResult b = simulate(d, plan);
  CHECK(a.any_rejection_rate == b.any_rejection_rate);
  CHECK(a.rejection_rate == b.rejection_rate);

  plan.n_reps = 5000;
  const SimulationResult c = simulate(d, plan);
  const SimulationResult e = simulate(d, plan);
  CHECK(c.any_rejection_rate == e.any_rejection_rate);
}

TEST_CASE("serial reference matches the parallel kernel") {
  const Design d = fixtures::design3();
  SimulationPlan plan;
  plan.n_reps = 20000;
  plan.seed = 777;
  plan.method = Method::bonferroni;
  plan.alpha = 0.025;
  const SimulationResult par = simulate(d, plan);
  const SimulationResult ser = simulate_serial(d, plan);
  CHECK(par.any_rejection_rate == ser.any_rejection_rate);
  CHECK(par.rejection_rate == ser.rejection_rate);
  CHECK(par.any_rejection_se == ser.any_rejection_se);
}

TEST_CASE("null error rate stays below alpha") {
  const Design d = fixtures::design3();
  SimulationPlan plan;
  plan.n_reps = 20000;
  plan.seed = 20240801;
  plan.alpha = 0.025;

  plan.method = Method::bonferroni;
  const SimulationResult bonf = simulate(d, plan);
  CHECK(bonf.any_rejection_rate <= 0.025 + 3.0 * bonf.any_rejection_se);
  CHECK(bonf.any_rejection_rate > 0.0);

  plan.method = Method::wpgsd;
  const SimulationResult wp = simulate(d, plan);
  CHECK(wp.any_rejection_rate <= 0.025 + 3.0 * wp.any_rejection_se);
  // same draws: the parametric bounds are uniformly lower
  CHECK(bonf.any_rejection_rate <= wp.any_rejection_rate);
}

TEST_CASE("power grows with the mean shift under common random numbers") {
  const Design d = fixtures::design3();
  SimulationPlan plan;
  plan.n_reps = 4000;
  plan.seed = 99;
  plan.method = Method::bonferroni;
  plan.alpha = 0.025;

  double prev = -1.0;
  for (double shift : {0.0, 1.5, 3.0}) {
    plan.means = Matrix(3, 2, 0.0);
    plan.means(0, 0) = shift * 0.7;
    plan.means(0, 1) = shift;
    const SimulationResult r = simulate(d, plan);
    CHECK(r.rejection_rate[0] >= prev);
    prev = r.rejection_rate[0];
  }
  CHECK(prev > 0.0);
}

TEST_CASE("plan validation") {
  const Design d = fixtures::design3();
  SimulationPlan plan;
  plan.n_reps = 0;
  CHECK_THROWS_AS(simulate(d, plan), std::invalid_argument);
  plan.n_reps = 10;
  plan.alpha = 1.5;
  CHECK_THROWS_AS(simulate(d, plan), std::invalid_argument);
  plan.alpha = 0.025;
  plan.means = Matrix(2, 2, 0.0);
  CHECK_THROWS_AS(simulate(d, plan), std::invalid_argument);
}

TEST_SUITE_END();
