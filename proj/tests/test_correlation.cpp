#include "doctest.h"

#include <cmath>
#include <vector>

#include "gsmt/correlation.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace gsmt;

TEST_SUITE_BEGIN("correlation");

namespace {
// The fixture counts scaled by 4/5 (all integers, describing the same
// trial measured in a different unit).
EventTable scaled_events3() {
  Matrix counts{{80, 160}, {88, 176}, {180, 360}};
  std::vector<std::vector<std::vector<double>>> overlap(3, std::vector<std::vector<double>>(3));
  const auto set = [&](int a, int b, std::vector<double> v) {
    overlap[a][b] = v;
    overlap[b][a] = std::move(v);
  };
  set(0, 1, {64, 128});
  set(0, 2, {80, 160});
  set(1, 2, {88, 176});
  return EventTable(std::move(counts), std::move(overlap));
}
}  // namespace

TEST_CASE("event table validation") {
  CHECK_NOTHROW(fixtures::events3());

  Matrix bad_counts{{100, 100}, {110, 220}};
  std::vector<std::vector<std::vector<double>>> ov(2, std::vector<std::vector<double>>(2));
  ov[0][1] = {50, 60};
  ov[1][0] = {50, 60};
  CHECK_THROWS_AS(EventTable(bad_counts, ov), std::invalid_argument);

  Matrix zero_counts{{0, 100}, {110, 220}};
  CHECK_THROWS_AS(EventTable(zero_counts, ov), std::invalid_argument);

  Matrix counts{{100, 200}, {110, 220}};
  std::vector<std::vector<std::vector<double>>> big(2, std::vector<std::vector<double>>(2));
  big[0][1] = {105, 160};  // exceeds the smaller marginal at the interim
  big[1][0] = {105, 160};
  CHECK_THROWS_AS(EventTable(counts, big), std::invalid_argument);
}

TEST_CASE("ccs entries for the three-population fixture") {
  const CorrelationMatrix ccs = build_ccs(fixtures::events3());
  REQUIRE(ccs.dim() == 6);
  const int m = 3;

  const auto entry = [&](int j1, int k1, int j2, int k2) {
    return ccs(ccs_index(m, j1, k1), ccs_index(m, j2, k2));
  };

  CHECK(std::fabs(entry(0, 0, 1, 0) - 80.0 / std::sqrt(100.0 * 110.0)) <= 1e-12);
  CHECK(entry(0, 0, 1, 0) == doctest::Approx(0.76).epsilon(5e-3));
  CHECK(std::fabs(entry(0, 0, 2, 0) - 100.0 / std::sqrt(100.0 * 225.0)) <= 1e-12);
  CHECK(std::fabs(entry(1, 0, 2, 0) - 110.0 / std::sqrt(110.0 * 225.0)) <= 1e-12);
  CHECK(std::fabs(entry(0, 0, 0, 1) - std::sqrt(0.5)) <= 1e-12);
  CHECK(entry(0, 0, 0, 1) == doctest::Approx(0.71).epsilon(5e-3));
  CHECK(std::fabs(entry(0, 0, 1, 1) - 80.0 / std::sqrt(100.0 * 220.0)) <= 1e-12);
  CHECK(std::fabs(entry(0, 0, 2, 1) - 100.0 / std::sqrt(100.0 * 450.0)) <= 1e-12);
  CHECK(entry(2, 0, 2, 0) == 1.0);
}

TEST_CASE("scaled counts give a bit-identical matrix") {
  const CorrelationMatrix a = build_ccs(fixtures::events3());
  const CorrelationMatrix b = build_ccs(scaled_events3());
  REQUIRE(a.dim() == b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) CHECK(a(i, j) == b(i, j));
}

TEST_CASE("scale invariance for random tables") {
  gen::Rng rng(31u);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = rng.range(1, 4);
    const int kk = rng.range(1, 3);
    const EventTable ev = gen::random_events(rng, m, kk);
    const CorrelationMatrix base = build_ccs(ev);

    // integer doubling preserves exact rationals
    Matrix counts2(m, kk, 0.0);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < kk; ++k) counts2(j, k) = 2.0 * ev.count(j, k);
    std::vector<std::vector<std::vector<double>>> ov2(m, std::vector<std::vector<double>>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (a == b) continue;
        ov2[a][b].resize(kk);
        for (int k = 0; k < kk; ++k) ov2[a][b][k] = 2.0 * ev.overlap(a, k, b, k);
      }
    const CorrelationMatrix doubled = build_ccs(EventTable(counts2, ov2));
    for (int i = 0; i < base.dim(); ++i)
      for (int j = 0; j < base.dim(); ++j) CHECK(base(i, j) == doubled(i, j));

    // arbitrary positive scaling agrees to rounding
    const double c = rng.uniform(0.1, 9.0);
    Matrix counts_c(m, kk, 0.0);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < kk; ++k) counts_c(j, k) = c * ev.count(j, k);
    std::vector<std::vector<std::vector<double>>> ov_c(m, std::vector<std::vector<double>>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (a == b) continue;
        ov_c[a][b].resize(kk);
        for (int k = 0; k < kk; ++k) ov_c[a][b][k] = c * ev.overlap(a, k, b, k);
      }
    const CorrelationMatrix scaled = build_ccs(EventTable(counts_c, ov_c));
    for (int i = 0; i < base.dim(); ++i)
      for (int j = 0; j < base.dim(); ++j)
        CHECK(std::fabs(base(i, j) - scaled(i, j)) <= 1e-12);
  }
}

TEST_CASE("within-hypothesis entries equal the root of the fraction ratio") {
  gen::Rng rng(77u);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = rng.range(1, 3);
    const int kk = rng.range(2, 3);
    const EventTable ev = gen::random_events(rng, m, kk);
    const CorrelationMatrix ccs = build_ccs(ev);
    const DesignSchedule sched = info_fractions(ev);
    for (int j = 0; j < m; ++j)
      for (int k1 = 0; k1 < kk; ++k1)
        for (int k2 = k1 + 1; k2 < kk; ++k2) {
          const double expected = std::sqrt(sched.t(j, k1) / sched.t(j, k2));
          CHECK(std::fabs(ccs(ccs_index(m, j, k1), ccs_index(m, j, k2)) - expected) <= 1e-12);
        }
  }
}

TEST_CASE("subset extraction") {
  const CorrelationMatrix ccs = build_ccs(fixtures::events3());
  const int m = 3;

  const CorrelationMatrix top = subset_ccs(ccs, m, SubsetIndex({0, 1, 2}), 1);
  REQUIRE(top.dim() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(top(i, j) == ccs(i, j));

  const CorrelationMatrix h2 = subset_ccs(ccs, m, SubsetIndex({1}), 2);
  REQUIRE(h2.dim() == 2);
  CHECK(std::fabs(h2(0, 1) - std::sqrt(0.5)) <= 1e-12);

  const CorrelationMatrix h1 = subset_ccs(ccs, m, SubsetIndex({0}), 1);
  REQUIRE(h1.dim() == 1);
  CHECK(h1(0, 0) == 1.0);

  CHECK_THROWS_AS(subset_ccs(ccs, m, SubsetIndex({0}), 3), std::invalid_argument);
  CHECK_THROWS_AS(subset_ccs(ccs, m, SubsetIndex({3}), 1), std::invalid_argument);
}

TEST_CASE("information fractions") {
  const DesignSchedule sched = info_fractions(fixtures::events3());
  REQUIRE(sched.analyses() == 2);
  for (int j = 0; j < 3; ++j) {
    CHECK(sched.t(j, 0) == 0.5);
    CHECK(sched.t(j, 1) == 1.0);
  }

  Matrix one_col{{80.0}, {120.0}};
  std::vector<std::vector<std::vector<double>>> ov(2, std::vector<std::vector<double>>(2));
  ov[0][1] = {60.0};
  ov[1][0] = {60.0};
  const DesignSchedule single = info_fractions(EventTable(one_col, ov));
  CHECK(single.t(0, 0) == 1.0);

  Matrix pair{{80, 160}};
  const DesignSchedule ratio =
      info_fractions(EventTable(pair, std::vector<std::vector<std::vector<double>>>(
                                          1, std::vector<std::vector<double>>(1))));
  CHECK(ratio.t(0, 0) == 0.5);
  CHECK(ratio.t(0, 1) == 1.0);
}

TEST_CASE("schedule recovered from an explicit ccs") {
  const CorrelationMatrix ccs = build_ccs(fixtures::events3());
  const DesignSchedule sched = schedule_from_ccs(ccs, 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::fabs(sched.t(j, 0) - 0.5) <= 1e-12);
    CHECK(sched.t(j, 1) == 1.0);
  }
}

TEST_SUITE_END();
