#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "paramp/model.hpp"
#include "paramp/output.hpp"

namespace paramp::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kResourceGuard = 3,
  kNumericalFailure = 4,
};

/// Raised for anything wrong with the scenario before computation starts.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InitialState {
  std::string kind = "vacuum";  // vacuum | squeezed
  std::vector<double> r = {0.0};

  bool operator==(const InitialState&) const = default;
};

struct TimeGrid {
  double t_max = 10.0;
  double t_step = 0.05;

  bool operator==(const TimeGrid&) const = default;
};

struct GridConfig {
  double delta_t = 40.0;
  int k_max = 256;
  std::vector<double> delta_ts = {20.0, 40.0, 80.0};
  int k_start = 64;
  double cauchy_tol = 1e-3;
  int k_max_cap = kDefaultKMaxCap;
  std::string method = "structured";  // structured | dense

  bool operator==(const GridConfig&) const = default;
};

struct OutputConfig {
  std::string path;      // empty: stdout
  std::string format;    // csv | json; empty picks the command default

  bool operator==(const OutputConfig&) const = default;
};

struct ScenarioConfig {
  std::string command;  // paramp-entropy | output-entropy | fluxes | fock-demo | sweep | preset
  std::string preset;   // fig1 | fig2 when command == preset
  ParampParams params{1.0, 0.3, 0.0, 1.0};
  InitialState initial;
  TimeGrid time;
  GridConfig grid;
  OutputConfig output;

  bool operator==(const ScenarioConfig& o) const;
};

nlohmann::json to_json(const ScenarioConfig& c);
/// Throws ConfigError naming the offending field.
ScenarioConfig config_from_json(const nlohmann::json& j);

/// Checks every field against the library preconditions. Throws ConfigError
/// or RegimeError with the violated inequality.
void validate(const ScenarioConfig& c);

/// Fills the preset's parameters into `c` (command stays "preset").
void apply_preset(ScenarioConfig& c);

}  // namespace paramp::cli
