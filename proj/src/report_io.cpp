#include "gsmt/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "gsmt/version.hpp"

namespace gsmt {

namespace {

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

std::string full_precision(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json subset_labels_json(const SubsetIndex& J, const HypothesisSet& hyps) {
  nlohmann::json arr = nlohmann::json::array();
  for (int j : J.members()) arr.push_back(hyps.label(j));
  return arr;
}

}  // namespace

std::string subset_label(const SubsetIndex& J) {
  std::string s = "H_{";
  for (std::size_t i = 0; i < J.members().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(J.members()[i] + 1);
  }
  s += "}";
  return s;
}

nlohmann::json machine_envelope(const RunConfig& config, const std::string& command) {
  return nlohmann::json{{"tool", kToolName},
                        {"version", kToolVersion},
                        {"command", command},
                        {"config_digest", config.config_digest},
                        {"mvn", {{"seed", config.mvn.seed},
                                 {"tol", config.mvn.tol},
                                 {"max_dim", config.mvn.max_dim}}}};
}

nlohmann::json report_to_json(const InferenceReport& report, const HypothesisSet& hyps) {
  nlohmann::json intersections = nlohmann::json::array();
  for (const auto& ip : report.intersections) {
    intersections.push_back({{"hypotheses", subset_labels_json(ip.subset, hyps)},
                             {"sequential_p", ip.p}});
  }
  nlohmann::json elementary = nlohmann::json::array();
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& e : report.elementary) {
    elementary.push_back({{"hypothesis", hyps.label(e.hypothesis)},
                          {"sequential_p", e.sequential_p},
                          {"adjusted_sequential_p", e.adjusted_p},
                          {"argmax", subset_labels_json(e.argmax, hyps)},
                          {"repeated_p", e.repeated_p},
                          {"rejected", e.rejected},
                          {"carried_forward", e.carried_forward}});
  }
  for (int j : report.rejected) rejected.push_back(hyps.label(j));
  return nlohmann::json{{"analysis", report.analysis},
                        {"method", method_name(report.method)},
                        {"alpha", report.alpha},
                        {"intersections", intersections},
                        {"elementary", elementary},
                        {"rejected", rejected},
                        {"diagnostics",
                         {{"bisection_iterations", report.diagnostics.bisection_iterations},
                          {"mvn_error_ceiling", report.diagnostics.mvn_error_ceiling}}}};
}

nlohmann::json weights_to_json(const WeightingStrategy& strategy, const HypothesisSet& hyps) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& J : enumerate_closure(hyps)) {
    const std::vector<double> w = subset_weights(strategy, J);
    nlohmann::json weights = nlohmann::json::object();
    for (int a = 0; a < J.size(); ++a) weights[hyps.label(J.members()[a])] = w[a];
    rows.push_back({{"hypotheses", subset_labels_json(J, hyps)}, {"weights", weights}});
  }
  return nlohmann::json{{"consonant", strategy.consonant}, {"subsets", rows}};
}

nlohmann::json bounds_to_json(const BoundarySet& bounds, const HypothesisSet& hyps) {
  nlohmann::json rows = nlohmann::json::array();
  for (int a = 0; a < bounds.subset.size(); ++a) {
    nlohmann::json per_analysis = nlohmann::json::array();
    for (int k = 0; k < bounds.z_bounds.cols(); ++k) {
      const double b = bounds.bound(a, k);
      if (std::isinf(b)) {
        per_analysis.push_back(nullptr);
      } else {
        per_analysis.push_back(b);
      }
    }
    rows.push_back({{"hypothesis", hyps.label(bounds.subset.members()[a])},
                    {"z_bounds", per_analysis}});
  }
  nlohmann::json out{{"method", method_name(bounds.method)},
                     {"subset", subset_labels_json(bounds.subset, hyps)},
                     {"mu", bounds.mu},
                     {"bounds", rows}};
  if (!bounds.inflation.empty()) out["inflation"] = bounds.inflation;
  return out;
}

nlohmann::json simulation_to_json(const SimulationResult& result, const HypothesisSet& hyps) {
  nlohmann::json per_hyp = nlohmann::json::object();
  for (int j = 0; j < static_cast<int>(result.rejection_rate.size()); ++j) {
    per_hyp[hyps.label(j)] = {{"rate", result.rejection_rate[j]},
                              {"se", result.rejection_se[j]}};
  }
  return nlohmann::json{{"method", method_name(result.method)},
                        {"alpha", result.alpha},
                        {"reps", result.n_reps},
                        {"seed", result.seed},
                        {"fwer_estimate", result.any_rejection_rate},
                        {"fwer_se", result.any_rejection_se},
                        {"rejection_rates", per_hyp}};
}

nlohmann::json correlation_to_json(const CorrelationMatrix& ccs, const HypothesisSet& hyps) {
  const int m = hyps.size();
  const int kk = ccs.dim() / m;
  nlohmann::json labels = nlohmann::json::array();
  for (int k = 0; k < kk; ++k)
    for (int j = 0; j < m; ++j)
      labels.push_back(hyps.label(j) + "@" + std::to_string(k + 1));
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < ccs.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < ccs.dim(); ++j) row.push_back(ccs(i, j));
    rows.push_back(row);
  }
  return nlohmann::json{{"labels", labels}, {"matrix", rows}};
}

void print_report_table(std::ostream& out, const std::vector<InferenceReport>& reports,
                        const HypothesisSet& hyps) {
  for (const auto& report : reports) {
    out << "=== Analysis " << report.analysis << " (" << method_name(report.method)
        << ", alpha=" << fixed4(report.alpha) << ") ===\n";
    out << "hypothesis        seq p    adj seq p   rep p    decision\n";
    for (const auto& ip : report.intersections) {
      if (ip.subset.size() == 1) continue;
      out << "  " << subset_label(ip.subset);
      for (std::size_t pad = subset_label(ip.subset).size(); pad < 14; ++pad) out << ' ';
      out << "  " << fixed4(ip.p) << "   -        -        -\n";
    }
    for (const auto& e : report.elementary) {
      const std::string lab = subset_label(SubsetIndex::singleton(e.hypothesis));
      out << "  " << lab;
      for (std::size_t pad = lab.size(); pad < 14; ++pad) out << ' ';
      out << "  " << fixed4(e.sequential_p) << "   " << fixed4(e.adjusted_p) << "   "
          << fixed4(e.repeated_p) << "   "
          << (e.rejected ? (e.carried_forward ? "reject (carried)" : "reject") : "accept")
          << "\n";
    }
    out << "rejected:";
    if (report.rejected.empty()) {
      out << " none";
    } else {
      for (int j : report.rejected) out << " " << hyps.label(j);
    }
    out << "\n";
  }
}

void print_report_csv(std::ostream& out, const std::vector<InferenceReport>& reports,
                      const HypothesisSet& hyps) {
  out << "analysis,method,type,subset,sequential_p,adjusted_sequential_p,repeated_p,rejected\n";
  for (const auto& report : reports) {
    for (const auto& ip : report.intersections) {
      out << report.analysis << "," << method_name(report.method) << ",intersection,"
          << subset_label(ip.subset) << "," << full_precision(ip.p) << ",,,\n";
    }
    for (const auto& e : report.elementary) {
      out << report.analysis << "," << method_name(report.method) << ",elementary,"
          << hyps.label(e.hypothesis) << "," << full_precision(e.sequential_p) << ","
          << full_precision(e.adjusted_p) << "," << full_precision(e.repeated_p) << ","
          << (e.rejected ? "true" : "false") << "\n";
    }
  }
}

void print_weights_table(std::ostream& out, const WeightingStrategy& strategy,
                         const HypothesisSet& hyps) {
  const int m = hyps.size();
  out << "subset";
  for (int j = 0; j < m; ++j) out << "  w(" << hyps.label(j) << ")";
  out << "\n";
  for (const auto& J : enumerate_closure(hyps)) {
    const std::vector<double> w = subset_weights(strategy, J);
    out << subset_label(J);
    for (std::size_t pad = subset_label(J).size(); pad < 12; ++pad) out << ' ';
    int pos = 0;
    for (int j = 0; j < m; ++j) {
      if (J.contains(j)) {
        out << "  " << fixed4(w[pos++]);
      } else {
        out << "  -     ";
      }
    }
    out << "\n";
  }
  out << "consonant: " << (strategy.consonant ? "yes" : "no") << "\n";
}

void print_weights_csv(std::ostream& out, const WeightingStrategy& strategy,
                       const HypothesisSet& hyps) {
  const int m = hyps.size();
  out << "subset";
  for (int j = 0; j < m; ++j) out << "," << hyps.label(j);
  out << "\n";
  for (const auto& J : enumerate_closure(hyps)) {
    const std::vector<double> w = subset_weights(strategy, J);
    out << subset_label(J);
    int pos = 0;
    for (int j = 0; j < m; ++j) {
      out << ",";
      if (J.contains(j)) out << full_precision(w[pos++]);
    }
    out << "\n";
  }
}

void print_correlation_table(std::ostream& out, const CorrelationMatrix& ccs,
                             const HypothesisSet& hyps) {
  const int m = hyps.size();
  const int kk = ccs.dim() / m;
  std::vector<std::string> labels;
  for (int k = 0; k < kk; ++k)
    for (int j = 0; j < m; ++j)
      labels.push_back("Z(" + hyps.label(j) + "," + std::to_string(k + 1) + ")");
  out << "          ";
  for (const auto& l : labels) out << " " << l;
  out << "\n";
  for (int i = 0; i < ccs.dim(); ++i) {
    out << labels[i];
    for (std::size_t pad = labels[i].size(); pad < 10; ++pad) out << ' ';
    for (int j = 0; j < ccs.dim(); ++j) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), " %*.2f", static_cast<int>(labels[j].size()), ccs(i, j));
      out << buf;
    }
    out << "\n";
  }
}

void print_correlation_csv(std::ostream& out, const CorrelationMatrix& ccs,
                           const HypothesisSet& hyps) {
  const int m = hyps.size();
  const int kk = ccs.dim() / m;
  out << "statistic";
  for (int k = 0; k < kk; ++k)
    for (int j = 0; j < m; ++j) out << ",Z(" << hyps.label(j) << "." << (k + 1) << ")";
  out << "\n";
  for (int i = 0; i < ccs.dim(); ++i) {
    out << "Z(" << hyps.label(i % m) << "." << (i / m + 1) << ")";
    for (int j = 0; j < ccs.dim(); ++j) out << "," << full_precision(ccs(i, j));
    out << "\n";
  }
}

void print_bounds_table(std::ostream& out, const BoundarySet& bounds, const HypothesisSet& hyps) {
  out << "method: " << method_name(bounds.method) << "  subset: " << subset_label(bounds.subset)
      << "  mu: " << fixed4(bounds.mu) << "\n";
  out << "hypothesis";
  for (int k = 0; k < bounds.z_bounds.cols(); ++k) out << "   analysis " << (k + 1);
  out << "\n";
  for (int a = 0; a < bounds.subset.size(); ++a) {
    const std::string lab = hyps.label(bounds.subset.members()[a]);
    out << lab;
    for (std::size_t pad = lab.size(); pad < 10; ++pad) out << ' ';
    for (int k = 0; k < bounds.z_bounds.cols(); ++k) {
      const double b = bounds.bound(a, k);
      if (std::isinf(b)) {
        out << "   inf       ";
      } else {
        out << "   " << fixed4(b) << "    ";
      }
    }
    out << "\n";
  }
  if (!bounds.inflation.empty()) {
    out << "inflation ";
    for (double xi : bounds.inflation) out << "   " << fixed4(xi) << "    ";
    out << "\n";
  }
}

void print_bounds_csv(std::ostream& out, const BoundarySet& bounds, const HypothesisSet& hyps) {
  out << "hypothesis,analysis,z_bound,inflation\n";
  for (int a = 0; a < bounds.subset.size(); ++a) {
    for (int k = 0; k < bounds.z_bounds.cols(); ++k) {
      out << hyps.label(bounds.subset.members()[a]) << "," << (k + 1) << ",";
      const double b = bounds.bound(a, k);
      if (std::isfinite(b)) out << full_precision(b);
      out << ",";
      if (!bounds.inflation.empty()) out << full_precision(bounds.inflation[k]);
      out << "\n";
    }
  }
}

void print_simulation_csv(std::ostream& out, const SimulationResult& result,
                          const HypothesisSet& hyps) {
  out << "quantity,rate,se,reps,seed,method\n";
  out << "any_rejection," << full_precision(result.any_rejection_rate) << ","
      << full_precision(result.any_rejection_se) << "," << result.n_reps << "," << result.seed
      << "," << method_name(result.method) << "\n";
  for (int j = 0; j < static_cast<int>(result.rejection_rate.size()); ++j) {
    out << hyps.label(j) << "," << full_precision(result.rejection_rate[j]) << ","
        << full_precision(result.rejection_se[j]) << "," << result.n_reps << "," << result.seed
        << "," << method_name(result.method) << "\n";
  }
}

void print_simulation_table(std::ostream& out, const SimulationResult& result,
                            const HypothesisSet& hyps) {
  out << "method: " << method_name(result.method) << "  alpha: " << fixed4(result.alpha)
      << "  reps: " << result.n_reps << "  seed: " << result.seed << "\n";
  out << "any rejection: " << fixed4(result.any_rejection_rate) << " (se "
      << fixed4(result.any_rejection_se) << ")\n";
  for (int j = 0; j < static_cast<int>(result.rejection_rate.size()); ++j) {
    out << hyps.label(j) << ": " << fixed4(result.rejection_rate[j]) << " (se "
        << fixed4(result.rejection_se[j]) << ")\n";
  }
}

}  // namespace gsmt
