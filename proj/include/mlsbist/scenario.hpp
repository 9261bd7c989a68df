// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlsbist/mls.hpp"
#include "mlsbist/sensor.hpp"
#include "mlsbist/signalchain.hpp"

namespace mlsbist::config {

struct RunConfig {
  int sequences = 1;
  std::uint64_t seed = 1;
  double noise_rms_g = 0.0;
  bool adaptive = true;
  int max_order = 10;
};

/// Full scenario description: sensor overrides and fault multipliers, code
/// generator, chain parameters, perturbation and measurand sine components,
/// and run controls. Parsed from JSON with strict unknown-key rejection.
struct ScenarioConfig {
  sensor::SensorModel sensor_model = sensor::default_model();
  sensor::FaultScenario fault;
  mls::LfsrSpec lfsr = mls::LfsrSpec::standard(6);
  double chip_rate_hz = 100.0;
  chain::ChainConfig chain_config;
  std::vector<chain::SineComponent> perturbation;
  std::vector<chain::SineComponent> measurand;
  RunConfig run;

  mls::CodeSequence make_code() const { return mls::generate_mls(lfsr, chip_rate_hz); }
  chain::Scenario make_scenario() const;
};

/// Parses and validates a config document. Unknown keys are rejected with
/// their JSON path; type errors carry the offending key.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Reads a config file; JSON syntax errors are reported with line/column
/// context by the parser.
ScenarioConfig load_config_file(const std::filesystem::path& path);

/// Applies a dotted-path override "section.key=value" onto a JSON document.
/// The value is parsed as JSON when possible, else taken as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// The built-in defaults as a JSON document (the documented schema).
nlohmann::json default_config_json();

}  // namespace mlsbist::config
