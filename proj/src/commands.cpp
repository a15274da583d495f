#include "gsmt/commands.hpp"

#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gsmt/config.hpp"
#include "gsmt/errors.hpp"
#include "gsmt/report_io.hpp"

namespace gsmt {

namespace {

RunConfig load_with_overrides(const CommandOptions& opt) {
  RunConfig cfg = load_config(opt.config_path);
  if (opt.method) cfg.method = method_from_name(*opt.method);
  if (opt.alpha) {
    if (!(*opt.alpha > 0.0) || !(*opt.alpha < 1.0))
      throw std::invalid_argument("alpha: must be in (0,1)");
    cfg.alpha = *opt.alpha;
  }
  if (opt.mvn_tol) {
    if (!(*opt.mvn_tol > 0.0)) throw std::invalid_argument("mvn.tol: must be positive");
    cfg.mvn.tol = *opt.mvn_tol;
  }
  if (opt.format != "table" && opt.format != "csv" && opt.format != "json")
    throw std::invalid_argument("format: must be table, csv, or json");
  return cfg;
}

int run_guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// Last analysis for which every hypothesis has a statistic.
int last_complete_analysis(const RunConfig& cfg) {
  if (!cfg.observed) return 0;
  const int m = cfg.hypotheses.size();
  int last = 0;
  for (int k = 0; k < cfg.observed->analyses(); ++k) {
    bool all = true;
    for (int j = 0; j < m; ++j) all = all && cfg.observed->has(j, k);
    if (!all) break;
    last = k + 1;
  }
  return last;
}

SubsetIndex parse_subset_flag(const std::string& text, int m) {
  std::vector<int> members;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      const int v = std::stoi(tok);
      if (v < 1 || v > m) throw std::invalid_argument("");
      members.push_back(v - 1);
    } catch (...) {
      throw std::invalid_argument("subset: expected comma-separated 1-based indices up to " +
                                  std::to_string(m));
    }
  }
  return SubsetIndex(members);
}

}  // namespace

int cmd_weights(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(opt);
    if (opt.format == "json") {
      nlohmann::json doc = machine_envelope(cfg, "weights");
      doc.update(weights_to_json(cfg.weighting, cfg.hypotheses));
      out << doc.dump(2) << "\n";
    } else if (opt.format == "csv") {
      print_weights_csv(out, cfg.weighting, cfg.hypotheses);
    } else {
      print_weights_table(out, cfg.weighting, cfg.hypotheses);
    }
  });
}

int cmd_corr(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(opt);
    if (opt.format == "json") {
      nlohmann::json doc = machine_envelope(cfg, "corr");
      doc.update(correlation_to_json(cfg.ccs, cfg.hypotheses));
      out << doc.dump(2) << "\n";
    } else if (opt.format == "csv") {
      print_correlation_csv(out, cfg.ccs, cfg.hypotheses);
    } else {
      print_correlation_table(out, cfg.ccs, cfg.hypotheses);
    }
  });
}

int cmd_bounds(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(opt);
    const Design design = to_design(cfg);
    const SubsetIndex J = opt.subset ? parse_subset_flag(*opt.subset, cfg.hypotheses.size())
                                     : SubsetIndex::full(cfg.hypotheses.size());
    const double mu = opt.mu ? *opt.mu : cfg.alpha;
    const std::vector<double> w = subset_weights(design.weighting, J);
    const BoundarySet bounds =
        cfg.method == Method::bonferroni
            ? bonferroni_bounds(J, mu, w, design.schedule, design.spending, design.mvn)
            : wpgsd_bounds(J, mu, w, design.schedule, design.spending, design.ccs, design.mvn);
    if (opt.format == "json") {
      nlohmann::json doc = machine_envelope(cfg, "bounds");
      doc.update(bounds_to_json(bounds, cfg.hypotheses));
      out << doc.dump(2) << "\n";
    } else if (opt.format == "csv") {
      print_bounds_csv(out, bounds, cfg.hypotheses);
    } else {
      print_bounds_table(out, bounds, cfg.hypotheses);
    }
  });
}

int cmd_analyze(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(opt);
    if (!cfg.observed) throw std::invalid_argument("observed: required for analyze");
    const Design design = to_design(cfg);
    const int k_last = last_complete_analysis(cfg);
    const int k = opt.analysis > 0 ? opt.analysis : k_last;
    if (k < 1 || k > design.schedule.analyses())
      throw std::invalid_argument("analysis: out of range");
    if (k > k_last)
      throw std::invalid_argument("analysis: statistics incomplete through analysis " +
                                  std::to_string(k));

    // Analyses run in order with rejections carried forward.
    std::vector<InferenceReport> reports;
    std::vector<int> carried;
    for (int kk = 1; kk <= k; ++kk) {
      reports.push_back(
          closed_test_report(design, cfg.method, kk, cfg.alpha, *cfg.observed, &carried));
      carried = reports.back().rejected;
    }

    if (opt.format == "json") {
      nlohmann::json doc = machine_envelope(cfg, "analyze");
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r, cfg.hypotheses));
      doc["analyses"] = arr;
      out << doc.dump(2) << "\n";
    } else if (opt.format == "csv") {
      print_report_csv(out, reports, cfg.hypotheses);
    } else {
      print_report_table(out, reports, cfg.hypotheses);
    }
  });
}

int cmd_simulate(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(opt);
    const Design design = to_design(cfg);
    SimulationPlan plan;
    plan.n_reps = opt.reps;
    plan.seed = opt.seed;
    plan.method = cfg.method;
    plan.alpha = cfg.alpha;
    plan.means = cfg.sim_means;
    const SimulationResult result = simulate(design, plan);
    if (opt.format == "json") {
      nlohmann::json doc = machine_envelope(cfg, "simulate");
      doc.update(simulation_to_json(result, cfg.hypotheses));
      out << doc.dump(2) << "\n";
    } else if (opt.format == "csv") {
      print_simulation_csv(out, result, cfg.hypotheses);
    } else {
      print_simulation_table(out, result, cfg.hypotheses);
    }
  });
}

}  // namespace gsmt
