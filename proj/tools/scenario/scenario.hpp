#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meqlab/estimators.hpp"
#include "meqlab/group.hpp"
#include "meqlab/relations.hpp"

namespace meqlab::scenario {

enum class Operation { estimate, classify, test_M, test_meq, verify_decomposition, language_check };

std::string to_string(Operation op);

struct PairSpec {
  std::string id;
  std::string x;  // point literals in the scenario's system
  std::string y;
};

struct ScheduleSpec {
  int max_exponent = 12;
  int min_exponent = 0;
  WindowFamily family = WindowFamily::symmetric;

  FolnerSchedule build() const;
};

struct Scenario {
  std::string name;
  Operation operation = Operation::estimate;

  std::string system;      // estimate
  std::string factor_map;  // classify, test-M, test-meq, estimate with sampled pairs
  std::string phi;         // verify-decomposition
  std::string psi;
  std::string point;       // language-check (toeplitz literal)
  std::size_t max_length = 16;

  std::vector<PairSpec> pairs;
  std::size_t samples = 0;
  std::vector<EstimateKind> kinds;
  double density_eps = 0.1;

  ScheduleSpec schedule;
  Tolerances tolerances;
  std::optional<std::uint64_t> seed;
  std::string output;  // artifact base name, defaults to name

  /// Verdict flags the result must reproduce; a mismatch is a verdict failure.
  std::map<std::string, bool> expect;

  /// Sampled operations cannot run without a seed.
  bool needs_seed() const;
};

/// Parses a YAML document holding either one scenario or `scenarios: [...]`.
/// Errors carry "line L, column C" of the offending node. `origin` names the
/// source in messages.
std::vector<Scenario> parse_scenarios(const std::string& text, const std::string& origin);
std::vector<Scenario> load_scenario_file(const std::string& path);

/// A scenario file path, or else the name of a bundled scenario.
std::vector<Scenario> load_scenarios(const std::string& file_or_name);

/// Scenario files compiled into the binary, keyed by name.
const std::map<std::string, std::string>& bundled_scenarios();

}  // namespace meqlab::scenario
