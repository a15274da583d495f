#pragma once

// Shared trial fixture used across the test suites: three overlapping
// populations, one interim at information fraction 0.5, HSD(-4) spending,
// initial weights (0.3, 0.3, 0.4) with full reallocation on rejection.

#include <cstdint>
#include <vector>

#include "gsmt/config.hpp"
#include "gsmt/inference.hpp"

namespace fixtures {

inline gsmt::HypothesisSet hypotheses3() {
  return gsmt::HypothesisSet({"H1", "H2", "H3"});
}

inline gsmt::WeightingStrategy strategy3() {
  gsmt::WeightingStrategy s;
  s.initial_weights = {0.3, 0.3, 0.4};
  s.transition = gsmt::Matrix{{0.0, 3.0 / 7.0, 4.0 / 7.0},
                              {3.0 / 7.0, 0.0, 4.0 / 7.0},
                              {0.5, 0.5, 0.0}};
  return gsmt::validate_strategy(std::move(s), hypotheses3());
}

inline gsmt::EventTable events3() {
  gsmt::Matrix counts{{100, 200}, {110, 220}, {225, 450}};
  std::vector<std::vector<std::vector<double>>> overlap(
      3, std::vector<std::vector<double>>(3));
  const auto set = [&](int a, int b, std::vector<double> v) {
    overlap[a][b] = v;
    overlap[b][a] = std::move(v);
  };
  set(0, 1, {80, 160});
  set(0, 2, {100, 200});
  set(1, 2, {110, 220});
  return gsmt::EventTable(std::move(counts), std::move(overlap));
}

inline gsmt::SpendingSpec hsd4() { return gsmt::SpendingSpec{gsmt::SpendingFamily::hsd, -4.0}; }

inline gsmt::Design design3(std::uint64_t mvn_seed = 12345) {
  gsmt::MvnSettings mvn;
  mvn.seed = mvn_seed;
  const gsmt::EventTable ev = events3();
  return gsmt::make_design(hypotheses3(), strategy3(), gsmt::info_fractions(ev), hsd4(),
                           gsmt::build_ccs(ev), mvn);
}

/// Interim nominal p-values consistent with the published interim
/// sequential-p column, and the stated final-analysis values.
inline gsmt::ObservedStatistics observed3() {
  return gsmt::ObservedStatistics::from_p(
      gsmt::Matrix{{0.015, 0.015}, {0.010, 0.012}, {0.010, 0.010}});
}

/// Golden sequential p-values, canonical subset order
/// {1,2,3},{1,2},{1,3},{2,3},{1},{2},{3}.
inline std::vector<double> bonferroni_interim_golden() {
  return {0.2097, 0.1678, 0.1468, 0.1468, 0.1258, 0.0839, 0.0839};
}
inline std::vector<double> bonferroni_final_golden() {
  return {0.0266, 0.0255, 0.0186, 0.0186, 0.0159, 0.0127, 0.0106};
}
inline std::vector<double> wpgsd_interim_golden() {
  return {0.1636, 0.1400, 0.1302, 0.1282, 0.1258, 0.0839, 0.0839};
}
inline std::vector<double> wpgsd_final_golden() {
  return {0.0206, 0.0210, 0.0165, 0.0162, 0.0159, 0.0127, 0.0106};
}

inline nlohmann::json config3_json() {
  return nlohmann::json{
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
}

}  // namespace fixtures
