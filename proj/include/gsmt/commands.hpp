#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gsmt {

/// Options shared by the CLI subcommands; flags override config values.
struct CommandOptions {
  std::string config_path;
  std::string format = "table";  // table | csv | json
  int analysis = 0;              // 1-based; 0 = last analysis with data
  std::optional<std::string> method;
  std::optional<double> alpha;
  long reps = 100000;
  std::uint64_t seed = 1;
  std::optional<double> mvn_tol;
  std::optional<std::string> subset;  // bounds: comma-separated 1-based indices
  std::optional<double> mu;           // bounds: probe level
};

/// Exit codes: 0 success, 1 configuration/validation error, 2 numerical
/// failure. Data goes to `out`, diagnostics to `err`.
int cmd_weights(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_corr(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bounds(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_analyze(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace gsmt
