#pragma once

#include <optional>
#include <string>

#include "gsmt/inference.hpp"
#include "gsmt/simulate.hpp"

#include "json.hpp"

namespace gsmt {

/// Parsed and validated run configuration. Exactly one of {events,
/// correlation} supplies the correlation structure; observed statistics are
/// exactly one of {p, z} and may be absent for commands that do not need
/// data (weights, corr, bounds, simulate).
struct RunConfig {
  double alpha = 0.025;
  Method method = Method::bonferroni;
  HypothesisSet hypotheses{std::vector<std::string>{"H1"}};
  WeightingStrategy weighting;
  SpendingSpec spending;
  std::optional<EventTable> events;
  CorrelationMatrix ccs = CorrelationMatrix::validated(Matrix{{1.0}});
  DesignSchedule schedule;
  std::optional<ObservedStatistics> observed;
  MvnSettings mvn;
  Matrix sim_means;  // empty unless configured
  std::string config_digest;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

Design to_design(const RunConfig& config);

/// FNV-1a 64-bit digest of the raw config bytes, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace gsmt
