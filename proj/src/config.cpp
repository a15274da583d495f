#include "gsmt/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsmt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument(path + ": " + what);
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Matrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty()) fail(path, "expected rows of numbers");
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      fail(path + "[" + std::to_string(r) + "]", "ragged row");
    for (int c = 0; c < cols; ++c)
      m(r, c) = require_number(j[r][c], path + "[" + std::to_string(r) + "][" +
                                            std::to_string(c) + "]");
  }
  return m;
}

// Matrix with nulls allowed; mask marks present entries.
Matrix parse_masked_matrix(const json& j, const std::string& path,
                           std::vector<std::vector<char>>* mask) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols, 0.0);
  mask->assign(rows, std::vector<char>(cols, 1));
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      fail(path + "[" + std::to_string(r) + "]", "ragged row");
    for (int c = 0; c < cols; ++c) {
      if (j[r][c].is_null()) {
        (*mask)[r][c] = 0;
        m(r, c) = 0.5;  // placeholder, never read
      } else {
        m(r, c) = require_number(j[r][c], path + "[" + std::to_string(r) + "][" +
                                              std::to_string(c) + "]");
      }
    }
  }
  return m;
}

int parse_hypothesis_ref(const json& j, int m, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected a 1-based hypothesis index");
  const int v = j.get<int>();
  if (v < 1 || v > m) fail(path, "hypothesis index out of range");
  return v - 1;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");

  if (!doc.contains("hypotheses") || !doc["hypotheses"].is_array() || doc["hypotheses"].empty())
    throw std::invalid_argument("hypotheses: required non-empty array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < doc["hypotheses"].size(); ++i) {
    const auto& l = doc["hypotheses"][i];
    if (!l.is_string()) fail("hypotheses[" + std::to_string(i) + "]", "expected a string label");
    labels.push_back(l.get<std::string>());
  }
  HypothesisSet hyps(labels);
  const int m = hyps.size();

  RunConfig cfg{.alpha = 0.025,
                .method = Method::bonferroni,
                .hypotheses = hyps,
                .weighting = {},
                .spending = {},
                .events = {},
                .ccs = CorrelationMatrix::validated(Matrix{{1.0}}),
                .schedule = {},
                .observed = {},
                .mvn = {},
                .sim_means = {},
                .config_digest = {}};

  if (doc.contains("alpha")) cfg.alpha = require_number(doc["alpha"], "alpha");
  if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0))
    throw std::invalid_argument("alpha: must be in (0,1)");
  if (doc.contains("method")) {
    if (!doc["method"].is_string()) throw std::invalid_argument("method: expected a string");
    cfg.method = method_from_name(doc["method"].get<std::string>());
  }

  // weighting
  if (!doc.contains("weighting") || !doc["weighting"].is_object())
    throw std::invalid_argument("weighting: required object");
  const json& w = doc["weighting"];
  WeightingStrategy strategy;
  const bool has_table = w.contains("subset_weights");
  if (w.contains("initial_weights")) {
    if (!w["initial_weights"].is_array() ||
        static_cast<int>(w["initial_weights"].size()) != m)
      throw std::invalid_argument("weighting.initial_weights: expected one weight per hypothesis");
    for (int j = 0; j < m; ++j)
      strategy.initial_weights.push_back(
          require_number(w["initial_weights"][j], "weighting.initial_weights[" +
                                                      std::to_string(j) + "]"));
  }
  if (w.contains("transition")) {
    strategy.transition = parse_matrix(w["transition"], "weighting.transition");
  } else if (!has_table) {
    throw std::invalid_argument(
        "weighting.transition: required unless a full subset_weights table is given");
  } else {
    strategy.transition = Matrix(m, m, 0.0);
  }
  if (has_table) {
    const json& table = w["subset_weights"];
    if (!table.is_array()) throw std::invalid_argument("weighting.subset_weights: expected array");
    for (std::size_t i = 0; i < table.size(); ++i) {
      const std::string path = "weighting.subset_weights[" + std::to_string(i) + "]";
      const json& entry = table[i];
      if (!entry.is_object() || !entry.contains("subset") || !entry.contains("weights"))
        fail(path, "expected {subset, weights}");
      std::vector<int> members;
      for (std::size_t a = 0; a < entry["subset"].size(); ++a)
        members.push_back(parse_hypothesis_ref(entry["subset"][a], m,
                                               path + ".subset[" + std::to_string(a) + "]"));
      SubsetIndex J(members);
      std::vector<double> weights;
      for (std::size_t a = 0; a < entry["weights"].size(); ++a)
        weights.push_back(
            require_number(entry["weights"][a], path + ".weights[" + std::to_string(a) + "]"));
      if (!strategy.subset_table.emplace(J.mask(), std::move(weights)).second)
        fail(path, "duplicate subset");
    }
    if (strategy.initial_weights.empty()) {
      const auto it = strategy.subset_table.find((1u << m) - 1u);
      if (it == strategy.subset_table.end())
        throw std::invalid_argument(
            "weighting.subset_weights: full-family entry required when initial_weights absent");
      strategy.initial_weights = it->second;
    }
  }
  if (strategy.initial_weights.empty())
    throw std::invalid_argument("weighting.initial_weights: required");
  cfg.weighting = validate_strategy(std::move(strategy), hyps);

  // spending
  if (!doc.contains("spending") || !doc["spending"].is_object())
    throw std::invalid_argument("spending: required object");
  const json& sp = doc["spending"];
  if (!sp.contains("family") || !sp["family"].is_string() ||
      sp["family"].get<std::string>() != "hsd")
    throw std::invalid_argument("spending.family: must be \"hsd\"");
  if (!sp.contains("gamma")) throw std::invalid_argument("spending.gamma: required");
  cfg.spending.family = SpendingFamily::hsd;
  cfg.spending.gamma = require_number(sp["gamma"], "spending.gamma");
  validate_spending(cfg.spending);

  // mvn settings
  if (doc.contains("mvn")) {
    const json& mv = doc["mvn"];
    if (!mv.is_object()) throw std::invalid_argument("mvn: expected object");
    if (mv.contains("tol")) cfg.mvn.tol = require_number(mv["tol"], "mvn.tol");
    if (mv.contains("seed")) {
      if (!mv["seed"].is_number_integer()) throw std::invalid_argument("mvn.seed: expected integer");
      cfg.mvn.seed = mv["seed"].get<std::uint64_t>();
    }
    if (mv.contains("max_dim")) {
      if (!mv["max_dim"].is_number_integer())
        throw std::invalid_argument("mvn.max_dim: expected integer");
      cfg.mvn.max_dim = mv["max_dim"].get<int>();
    }
    if (!(cfg.mvn.tol > 0.0)) throw std::invalid_argument("mvn.tol: must be positive");
    if (cfg.mvn.max_dim < 1) throw std::invalid_argument("mvn.max_dim: must be positive");
  }

  // correlation structure: exactly one of events / correlation
  const bool has_events = doc.contains("events");
  const bool has_corr = doc.contains("correlation");
  if (has_events == has_corr)
    throw std::invalid_argument("config: exactly one of {events, correlation} must be present");
  if (has_events) {
    const json& ev = doc["events"];
    if (!ev.is_object() || !ev.contains("counts"))
      throw std::invalid_argument("events.counts: required");
    Matrix counts = parse_matrix(ev["counts"], "events.counts");
    if (counts.rows() != m)
      throw std::invalid_argument("events.counts: one row per hypothesis required");
    const int kk = counts.cols();
    std::vector<std::vector<std::vector<double>>> overlap(
        m, std::vector<std::vector<double>>(m));
    std::vector<std::vector<char>> seen(m, std::vector<char>(m, 0));
    if (m > 1) {
      if (!ev.contains("overlap") || !ev["overlap"].is_array())
        throw std::invalid_argument("events.overlap: required for more than one hypothesis");
      for (std::size_t i = 0; i < ev["overlap"].size(); ++i) {
        const std::string path = "events.overlap[" + std::to_string(i) + "]";
        const json& o = ev["overlap"][i];
        if (!o.is_object() || !o.contains("pair") || !o.contains("counts") ||
            !o["pair"].is_array() || o["pair"].size() != 2)
          fail(path, "expected {pair: [i,j], counts: [...]}");
        const int a = parse_hypothesis_ref(o["pair"][0], m, path + ".pair[0]");
        const int b = parse_hypothesis_ref(o["pair"][1], m, path + ".pair[1]");
        if (a == b) fail(path + ".pair", "pair members must differ");
        if (static_cast<int>(o["counts"].size()) != kk)
          fail(path + ".counts", "one overlap count per analysis required");
        std::vector<double> counts_ab(kk);
        for (int k = 0; k < kk; ++k)
          counts_ab[k] =
              require_number(o["counts"][k], path + ".counts[" + std::to_string(k) + "]");
        if (seen[a][b]) fail(path, "duplicate pair");
        seen[a][b] = seen[b][a] = 1;
        overlap[a][b] = counts_ab;
        overlap[b][a] = std::move(counts_ab);
      }
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
          if (!seen[a][b])
            throw std::invalid_argument("events.overlap: missing pair [" + std::to_string(a + 1) +
                                        "," + std::to_string(b + 1) + "]");
    }
    cfg.events = EventTable(std::move(counts), std::move(overlap));
    cfg.ccs = build_ccs(*cfg.events);
    cfg.schedule = info_fractions(*cfg.events);
  } else {
    const json& co = doc["correlation"];
    if (!co.is_object() || !co.contains("matrix"))
      throw std::invalid_argument("correlation.matrix: required");
    Matrix corr = parse_matrix(co["matrix"], "correlation.matrix");
    if (corr.rows() % m != 0)
      throw std::invalid_argument(
          "correlation.matrix: dimension must be hypotheses x analyses");
    cfg.ccs = CorrelationMatrix::validated(std::move(corr));
    cfg.schedule = schedule_from_ccs(cfg.ccs, m);
  }
  const int kk = cfg.schedule.analyses();

  // observed statistics: exactly one of p / z when present
  if (doc.contains("observed")) {
    const json& ob = doc["observed"];
    if (!ob.is_object()) throw std::invalid_argument("observed: expected object");
    const bool has_p = ob.contains("p");
    const bool has_z = ob.contains("z");
    if (has_p == has_z)
      throw std::invalid_argument("observed: exactly one of {p, z} must be present");
    std::vector<std::vector<char>> mask;
    if (has_p) {
      Matrix p = parse_masked_matrix(ob["p"], "observed.p", &mask);
      if (p.rows() != m || p.cols() != kk)
        throw std::invalid_argument("observed.p: must be hypotheses x analyses");
      cfg.observed = ObservedStatistics::from_p(p, std::move(mask));
    } else {
      Matrix z = parse_masked_matrix(ob["z"], "observed.z", &mask);
      if (z.rows() != m || z.cols() != kk)
        throw std::invalid_argument("observed.z: must be hypotheses x analyses");
      cfg.observed = ObservedStatistics::from_z(std::move(z), std::move(mask));
    }
  }

  // simulation block
  if (doc.contains("simulation")) {
    const json& sim = doc["simulation"];
    if (!sim.is_object()) throw std::invalid_argument("simulation: expected object");
    if (sim.contains("means")) {
      cfg.sim_means = parse_matrix(sim["means"], "simulation.means");
      if (cfg.sim_means.rows() != m || cfg.sim_means.cols() != kk)
        throw std::invalid_argument("simulation.means: must be hypotheses x analyses");
    }
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  RunConfig cfg = parse_config(doc);
  cfg.config_digest = fnv1a_hex(bytes);
  return cfg;
}

Design to_design(const RunConfig& config) {
  return make_design(config.hypotheses, config.weighting, config.schedule, config.spending,
                     config.ccs, config.mvn);
}

}  // namespace gsmt
