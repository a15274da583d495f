#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gsmt/commands.hpp"
#include "gsmt/config.hpp"
#include "gsmt/report_io.hpp"
#include "fixtures.hpp"

using namespace gsmt;

namespace {

std::string write_temp_config(const nlohmann::json& doc, const std::string& name) {
  const std::string path = "/tmp/gsmt_test_" + name + ".json";
  std::ofstream out(path);
  out << doc.dump(2);
  return path;
}

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("fixture config parses into the expected design") {
  const RunConfig cfg = parse_config(fixtures::config3_json());
  CHECK(cfg.alpha == 0.025);
  CHECK(cfg.method == Method::wpgsd);
  CHECK(cfg.hypotheses.size() == 3);
  CHECK(cfg.weighting.consonant);
  CHECK(cfg.schedule.t(0, 0) == 0.5);
  CHECK(cfg.ccs.dim() == 6);
  REQUIRE(cfg.observed.has_value());
  CHECK(std::fabs(cfg.observed->nominal_p(1, 0) - 0.010) <= 1e-12);
  CHECK_NOTHROW(to_design(cfg));
}

TEST_CASE("config validation failures carry field paths") {
  nlohmann::json doc = fixtures::config3_json();
  doc["correlation"] = {{"matrix", {{1.0}}}};
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("exactly one of"),
                       std::invalid_argument);

  doc = fixtures::config3_json();
  doc["observed"]["z"] = doc["observed"]["p"];
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("observed"), std::invalid_argument);

  doc = fixtures::config3_json();
  doc["events"]["overlap"].erase(2);
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("overlap"), std::invalid_argument);

  doc = fixtures::config3_json();
  doc["events"]["overlap"][0]["counts"][0] = 150;  // exceeds the marginal
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("events.overlap"),
                       std::invalid_argument);

  doc = fixtures::config3_json();
  doc["alpha"] = 1.2;
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("alpha"), std::invalid_argument);

  doc = fixtures::config3_json();
  doc["spending"]["gamma"] = 0.0;
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("gamma"), std::invalid_argument);

  doc = fixtures::config3_json();
  doc["weighting"]["initial_weights"] = {0.5, 0.5};
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("initial_weights"),
                       std::invalid_argument);
}

TEST_CASE("explicit subset-weight tables pass through verbatim") {
  nlohmann::json doc = fixtures::config3_json();
  doc["weighting"]["subset_weights"] = nlohmann::json::array(
      {{{"subset", {1, 2, 3}}, {"weights", {0.3, 0.3, 0.4}}},
       {{"subset", {1, 2}}, {"weights", {0.5, 0.5}}},
       {{"subset", {1, 3}}, {"weights", {0.3, 0.7}}},
       {{"subset", {2, 3}}, {"weights", {0.3, 0.7}}},
       {{"subset", {1}}, {"weights", {1.0}}},
       {{"subset", {2}}, {"weights", {1.0}}},
       {{"subset", {3}}, {"weights", {1.0}}}});
  const RunConfig cfg = parse_config(doc);
  const auto w13 = subset_weights(cfg.weighting, SubsetIndex({0, 2}));
  CHECK(w13 == std::vector<double>{0.3, 0.7});

  CommandOptions opt;
  opt.config_path = write_temp_config(doc, "tableweights");
  std::ostringstream out, err;
  REQUIRE(cmd_weights(opt, out, err) == 0);
  CHECK(out.str().find("0.3000  -       0.7000") != std::string::npos);
}

TEST_CASE("explicit correlation input recovers the schedule") {
  nlohmann::json doc = fixtures::config3_json();
  const RunConfig ev_cfg = parse_config(doc);
  nlohmann::json matrix = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 6; ++j) row.push_back(ev_cfg.ccs(i, j));
    matrix.push_back(row);
  }
  doc.erase("events");
  doc["correlation"] = {{"matrix", matrix}};
  const RunConfig cfg = parse_config(doc);
  CHECK(std::fabs(cfg.schedule.t(0, 0) - 0.5) <= 1e-12);
  CHECK(cfg.schedule.t(0, 1) == 1.0);
}

TEST_CASE("masked observations") {
  nlohmann::json doc = fixtures::config3_json();
  doc["observed"]["p"][1][1] = nullptr;
  const RunConfig cfg = parse_config(doc);
  CHECK(cfg.observed->has(0, 1));
  CHECK_FALSE(cfg.observed->has(1, 1));
}

TEST_CASE("digest is stable across identical bytes") {
  const std::string path = write_temp_config(fixtures::config3_json(), "digest");
  const RunConfig a = load_config(path);
  const RunConfig b = load_config(path);
  CHECK(a.config_digest == b.config_digest);
  CHECK(a.config_digest.size() == 16);

  nlohmann::json doc = fixtures::config3_json();
  doc["alpha"] = 0.05;
  const RunConfig c = load_config(write_temp_config(doc, "digest2"));
  CHECK(a.config_digest != c.config_digest);
}

TEST_CASE("cmd_weights emits the closure table") {
  CommandOptions opt;
  opt.config_path = write_temp_config(fixtures::config3_json(), "weights");
  std::ostringstream out, err;
  CHECK(cmd_weights(opt, out, err) == 0);
  const std::string table = out.str();
  CHECK(table.find("H_{1,2,3}") != std::string::npos);
  CHECK(table.find("0.3000  0.3000  0.4000") != std::string::npos);
  CHECK(table.find("0.5000  0.5000") != std::string::npos);
  CHECK(table.find("0.4286") != std::string::npos);
  CHECK(table.find("0.5714") != std::string::npos);
  CHECK(table.find("consonant: yes") != std::string::npos);

  opt.format = "json";
  std::ostringstream jout;
  CHECK(cmd_weights(opt, jout, err) == 0);
  const nlohmann::json doc = nlohmann::json::parse(jout.str());
  CHECK(doc["tool"] == "gsmt");
  CHECK(doc["subsets"].size() == 7);
  CHECK(doc["consonant"] == true);
  CHECK(std::fabs(doc["subsets"][1]["weights"]["H1"].get<double>() - 0.5) <= 1e-12);
}

TEST_CASE("cmd_corr human view rounds to two decimals") {
  CommandOptions opt;
  opt.config_path = write_temp_config(fixtures::config3_json(), "corr");
  std::ostringstream out, err;
  CHECK(cmd_corr(opt, out, err) == 0);
  const std::string table = out.str();
  CHECK(table.find("0.76") != std::string::npos);
  CHECK(table.find("0.67") != std::string::npos);
  CHECK(table.find("0.71") != std::string::npos);

  opt.format = "json";
  std::ostringstream jout;
  CHECK(cmd_corr(opt, jout, err) == 0);
  const nlohmann::json doc = nlohmann::json::parse(jout.str());
  CHECK(std::fabs(doc["matrix"][0][1].get<double>() - 80.0 / std::sqrt(100.0 * 110.0)) <= 1e-15);
}

TEST_CASE("cmd_analyze json output round-trips the report") {
  CommandOptions opt;
  opt.config_path = write_temp_config(fixtures::config3_json(), "analyze");
  opt.format = "json";
  opt.analysis = 1;
  opt.method = "bonferroni";
  std::ostringstream out, err;
  REQUIRE(cmd_analyze(opt, out, err) == 0);
  const nlohmann::json doc = nlohmann::json::parse(out.str());

  const RunConfig cfg = load_config(opt.config_path);
  const Design design = to_design(cfg);
  const InferenceReport expect =
      closed_test_report(design, Method::bonferroni, 1, cfg.alpha, *cfg.observed);

  const nlohmann::json& got = doc["analyses"][0];
  REQUIRE(got["intersections"].size() == expect.intersections.size());
  for (std::size_t i = 0; i < expect.intersections.size(); ++i) {
    CHECK(got["intersections"][i]["sequential_p"].get<double>() == expect.intersections[i].p);
  }
  for (std::size_t j = 0; j < expect.elementary.size(); ++j) {
    CHECK(got["elementary"][j]["adjusted_sequential_p"].get<double>() ==
          expect.elementary[j].adjusted_p);
    CHECK(got["elementary"][j]["repeated_p"].get<double>() == expect.elementary[j].repeated_p);
  }
  CHECK(doc["config_digest"] == cfg.config_digest);

  // identical bytes on a second run
  std::ostringstream out2;
  REQUIRE(cmd_analyze(opt, out2, err) == 0);
  CHECK(out.str() == out2.str());
}

TEST_CASE("cmd_analyze csv layout") {
  CommandOptions opt;
  opt.config_path = write_temp_config(fixtures::config3_json(), "csv");
  opt.format = "csv";
  opt.analysis = 1;
  opt.method = "bonferroni";
  std::ostringstream out, err;
  REQUIRE(cmd_analyze(opt, out, err) == 0);
  std::istringstream lines(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 1 + 7 + 3);  // header + intersections + elementary
}

TEST_CASE("command error handling and exit codes") {
  CommandOptions opt;
  opt.config_path = "/tmp/gsmt_does_not_exist.json";
  std::ostringstream out, err;
  CHECK(cmd_weights(opt, out, err) == 1);
  CHECK(err.str().find("error") != std::string::npos);

  opt.config_path = write_temp_config(fixtures::config3_json(), "badformat");
  opt.format = "yaml";
  std::ostringstream out2, err2;
  CHECK(cmd_weights(opt, out2, err2) == 1);

  // analyze without observed data
  nlohmann::json doc = fixtures::config3_json();
  doc.erase("observed");
  CommandOptions opt3;
  opt3.config_path = write_temp_config(doc, "noobs");
  std::ostringstream out3, err3;
  CHECK(cmd_analyze(opt3, out3, err3) == 1);
  CHECK(err3.str().find("observed") != std::string::npos);

  // simulate with nonpositive replications
  CommandOptions opt4;
  opt4.config_path = opt3.config_path;
  opt4.reps = 0;
  std::ostringstream out4, err4;
  CHECK(cmd_simulate(opt4, out4, err4) == 1);
}

TEST_CASE("cmd_simulate summary record") {
  CommandOptions opt;
  opt.config_path = write_temp_config(fixtures::config3_json(), "sim");
  opt.method = "bonferroni";
  opt.reps = 2000;
  opt.seed = 5;
  opt.format = "json";
  std::ostringstream out, err;
  REQUIRE(cmd_simulate(opt, out, err) == 0);
  const nlohmann::json doc = nlohmann::json::parse(out.str());
  CHECK(doc["reps"] == 2000);
  CHECK(doc["seed"] == 5);
  CHECK(doc["method"] == "bonferroni");
  CHECK(doc["fwer_estimate"].get<double>() <= 0.025 + 4.0 * doc["fwer_se"].get<double>());

  std::ostringstream out2;
  REQUIRE(cmd_simulate(opt, out2, err) == 0);
  CHECK(out.str() == out2.str());
}

TEST_CASE("cmd_bounds") {
  CommandOptions opt;
  opt.config_path = write_temp_config(fixtures::config3_json(), "bounds");
  opt.method = "bonferroni";
  opt.subset = "2";
  opt.mu = 0.0839;
  std::ostringstream out, err;
  REQUIRE(cmd_bounds(opt, out, err) == 0);
  CHECK(out.str().find("2.32") != std::string::npos);  // first-look bound near Q(0.99)

  opt.format = "json";
  opt.method = "wpgsd";
  opt.subset.reset();
  std::ostringstream jout;
  REQUIRE(cmd_bounds(opt, jout, err) == 0);
  const nlohmann::json doc = nlohmann::json::parse(jout.str());
  CHECK(doc["inflation"].size() == 2);
  CHECK(doc["inflation"][0].get<double>() > 1.0);

  opt.format = "csv";
  std::ostringstream cout2;
  REQUIRE(cmd_bounds(opt, cout2, err) == 0);
  CHECK(cout2.str().find("hypothesis,analysis,z_bound") != std::string::npos);
}

TEST_CASE("numerical failures map to exit code 2") {
  // a subset whose explicit weights are all zero cannot spend anything,
  // so the parametric bounds are infeasible
  nlohmann::json doc = {
      {"alpha", 0.025},
      {"method", "wpgsd"},
      {"hypotheses", {"A", "B"}},
      {"weighting",
       {{"subset_weights",
         {{{"subset", {1, 2}}, {"weights", {1.0, 0.0}}},
          {{"subset", {1}}, {"weights", {1.0}}},
          {{"subset", {2}}, {"weights", {0.0}}}}}}},
      {"spending", {{"family", "hsd"}, {"gamma", -4.0}}},
      {"events",
       {{"counts", {{100, 200}, {110, 220}}},
        {"overlap", {{{"pair", {1, 2}}, {"counts", {80, 160}}}}}}}};
  CommandOptions opt;
  opt.config_path = write_temp_config(doc, "infeasible");
  opt.subset = "2";
  std::ostringstream out, err;
  CHECK(cmd_bounds(opt, out, err) == 2);
  CHECK(err.str().find("numerical error") != std::string::npos);
}

TEST_SUITE_END();
