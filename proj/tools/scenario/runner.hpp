#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenario.hpp"

namespace meqlab::scenario {

inline constexpr const char* kCsvHeader = "scenario,pair_id,window_len,translate,kind,value";

struct CsvRow {
  std::string pair_id;
  std::int64_t window_len = 0;
  std::optional<std::int64_t> translate;
  std::string kind;
  double value = 0.0;
};

struct ScenarioResult {
  std::string name;
  std::string output;
  std::vector<CsvRow> rows;
  nlohmann::ordered_json verdict;
  /// Expectations (or the built-in verified check) that did not hold.
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Executes one scenario. `seed_override` replaces the scenario seed.
ScenarioResult run_scenario(const Scenario& scenario, std::optional<std::uint64_t> seed_override = {});

std::string format_csv(const ScenarioResult& result);

/// Writes <dir>/<output>.csv and <dir>/<output>.json.
void write_artifacts(const ScenarioResult& result, const std::string& dir);

struct RunOptions {
  std::string out_dir = "meqlab-out";
  std::optional<std::uint64_t> seed;
};

/// Runs scenarios in order and writes their artifacts. Returns 0 when every
/// verdict holds, 2 otherwise. Progress lines go to `log`.
int run_all(const std::vector<Scenario>& scenarios, const RunOptions& options, std::ostream& log);

/// Sorted listing of systems, factor maps and bundled scenarios.
void print_registry(std::ostream& os);

}  // namespace meqlab::scenario
