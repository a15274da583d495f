#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gsmt/boundary.hpp"
#include "gsmt/config.hpp"
#include "gsmt/inference.hpp"
#include "gsmt/simulate.hpp"

#include "json.hpp"

namespace gsmt {

/// Subset rendered in the hypothesis-index style used throughout the
/// human tables, e.g. "H_{1,2,3}".
std::string subset_label(const SubsetIndex& J);

/// Machine envelope shared by all subcommands: tool, version, digest, seed.
nlohmann::json machine_envelope(const RunConfig& config, const std::string& command);

nlohmann::json report_to_json(const InferenceReport& report, const HypothesisSet& hyps);
nlohmann::json weights_to_json(const WeightingStrategy& strategy, const HypothesisSet& hyps);
nlohmann::json bounds_to_json(const BoundarySet& bounds, const HypothesisSet& hyps);
nlohmann::json simulation_to_json(const SimulationResult& result, const HypothesisSet& hyps);
nlohmann::json correlation_to_json(const CorrelationMatrix& ccs, const HypothesisSet& hyps);

void print_report_table(std::ostream& out, const std::vector<InferenceReport>& reports,
                        const HypothesisSet& hyps);
void print_report_csv(std::ostream& out, const std::vector<InferenceReport>& reports,
                      const HypothesisSet& hyps);
void print_weights_table(std::ostream& out, const WeightingStrategy& strategy,
                         const HypothesisSet& hyps);
void print_weights_csv(std::ostream& out, const WeightingStrategy& strategy,
                       const HypothesisSet& hyps);
void print_correlation_table(std::ostream& out, const CorrelationMatrix& ccs,
                             const HypothesisSet& hyps);
void print_correlation_csv(std::ostream& out, const CorrelationMatrix& ccs,
                           const HypothesisSet& hyps);
void print_bounds_table(std::ostream& out, const BoundarySet& bounds, const HypothesisSet& hyps);
void print_bounds_csv(std::ostream& out, const BoundarySet& bounds, const HypothesisSet& hyps);
void print_simulation_table(std::ostream& out, const SimulationResult& result,
                            const HypothesisSet& hyps);
void print_simulation_csv(std::ostream& out, const SimulationResult& result,
                          const HypothesisSet& hyps);

}  // namespace gsmt
