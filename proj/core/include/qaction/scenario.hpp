#pragma once

#include <nlohmann/json.hpp>

#include "qaction/io.hpp"
#include "qaction/signal.hpp"

// Batch scenario surface: a JSON file describes one computation (or an array
// of them); running a scenario yields named scalar metrics, a structured
// JSON artifact, optional CSV tables, and the pass/fail state of any
// tolerance checks declared in the file.
//
// Scenario kinds and their parameter blocks are documented in
// docs/scenarios.md; every computational module is reachable from at least
// one kind.

namespace qaction {

enum class ScenarioKind {
  oscillator,
  keldysh,
  oracle_compare,
  path_integral,
  scatter,
  bound_states,
  algebra,
  classical,
};

ScenarioKind scenario_kind_from_string(const std::string& s);
std::string to_string(ScenarioKind kind);

struct CheckSpec {
  std::string name;
  std::string metric;  // key into the result metrics
  double expect = 0.0;
  double tol = 0.0;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::oscillator;
  nlohmann::json params;  // validated kind-specific block
  std::vector<CheckSpec> checks;
  std::string output_format = "json";  // "json", "csv" or "both"
};

// Parses and validates a scenario file (object or array of objects); throws
// std::invalid_argument with a descriptive message on schema violations.
std::vector<Scenario> parse_scenarios(const nlohmann::json& doc);
std::vector<Scenario> load_scenarios(const std::filesystem::path& file);

struct CheckOutcome {
  CheckSpec spec;
  double observed = 0.0;
  bool passed = false;
};

struct ScenarioResult {
  std::string name;
  ScenarioKind kind = ScenarioKind::oscillator;
  std::vector<std::pair<std::string, double>> metrics;  // insertion-ordered
  nlohmann::json artifact;                              // structured record
  std::vector<CsvTable> tables;
  std::vector<CheckOutcome> checks;
  bool all_checks_passed = true;

  double metric(const std::string& key) const;
};

// Executes one scenario; tolerance_scale > 1 loosens every declared check
// (test-only escape hatch, reported by the CLI when used).
ScenarioResult run_scenario(const Scenario& scenario, double tolerance_scale = 1.0);

// Writes <name>.json / <name>_<table>.csv under out_dir per output_format.
std::vector<std::filesystem::path> write_artifacts(const ScenarioResult& result,
                                                   const std::filesystem::path& out_dir,
                                                   const std::string& format);

// One-line human summary per scenario.
std::string summarize(const ScenarioResult& result);

// Three-way comparison table (closed form / oracle / lattice) for
// oracle-compare and path-integral scenarios; throws for other kinds.
std::string comparison_table(const ScenarioResult& result);

// Shared helper: build a ComplexSignal from the scenario "signal" block.
ComplexSignal signal_from_json(const nlohmann::json& spec);

}  // namespace qaction
