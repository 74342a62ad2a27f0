#pragma once

// Experiment runner shared by the command-line tool and the tests. A run takes
// a command name plus a flat string-keyed parameter map, dispatches to the
// owning module and returns a report with summary statistics, pass/fail flags
// and per-trial rows.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qrand {

/// Invalid configuration. `key()` names the offending parameter.
class UsageError : public std::invalid_argument {
 public:
  UsageError(std::string key, const std::string& message)
      : std::invalid_argument(message), key_(std::move(key))
  {
  }
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> params;
  /// Report prefix; writes <prefix>.json and <prefix>.csv. Empty = no files.
  std::string output_path;
};

/// Commands understood by run().
const std::vector<std::string>& experiment_commands();

/// Parameter names accepted by a command (throws UsageError for unknown ones).
const std::vector<std::string>& command_parameters(const std::string& command);

struct ExperimentReport {
  std::string command;
  std::map<std::string, std::string> config;
  std::string version;
  double wall_seconds = 0.0;
  /// Ordered as inserted; the deterministic part of the report.
  std::vector<std::pair<std::string, double>> statistics;
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Set when a numeric guard or internal contract tripped during the run.
  std::optional<std::string> error;

  bool all_passed() const;
  double statistic(const std::string& name) const;
  bool flag(const std::string& name) const;

  /// Summary document: command, config, version, wall time, statistics, flags, error.
  std::string to_json() const;
  /// Header row of `columns`, then one line per row, numbers as %.17g.
  std::string to_csv() const;
  /// Only the statistics and flags, for determinism comparisons.
  std::string statistics_json() const;
};

/// Validates the configuration (UsageError on failure), runs the experiment
/// and writes the report files atomically when output_path is set. Guard trips
/// inside the modules are caught and stored in `error`.
ExperimentReport run(const ExperimentConfig& config);

}  // namespace qrand
