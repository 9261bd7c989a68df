// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>

namespace mlsbist::config {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config error at '" + path + "': " + what);
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
}

void reject_unknown_keys(const json& node, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  require_object(node, path);
  for (const auto& [key, value] : node.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& node, const std::string& path, const char* key, double fallback) {
  if (!node.contains(key)) return fallback;
  const json& v = node.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& node, const std::string& path, const char* key, int fallback) {
  if (!node.contains(key)) return fallback;
  const json& v = node.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& node, const std::string& path, const char* key, bool fallback) {
  if (!node.contains(key)) return fallback;
  const json& v = node.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

chain::FilterSpec get_filter(const json& node, const std::string& path, const char* key,
                             chain::FilterSpec fallback) {
  if (!node.contains(key)) return fallback;
  const std::string sub = path + "." + key;
  const json& v = node.at(key);
  reject_unknown_keys(v, sub, {"order", "cutoff_hz"});
  chain::FilterSpec out = fallback;
  out.order = get_int(v, sub, "order", fallback.order);
  out.cutoff_hz = get_number(v, sub, "cutoff_hz", fallback.cutoff_hz);
  return out;
}

std::vector<chain::SineComponent> get_components(const json& doc, const char* key) {
  std::vector<chain::SineComponent> out;
  if (!doc.contains(key)) return out;
  const json& list = doc.at(key);
  if (!list.is_array()) fail(key, "expected an array of sine components");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
    const json& c = list[i];
    reject_unknown_keys(c, path, {"amplitude_g", "freq_hz", "phase_rad"});
    chain::SineComponent comp;
    comp.amplitude_g = get_number(c, path, "amplitude_g", 0.0);
    comp.freq_hz = get_number(c, path, "freq_hz", 0.0);
    comp.phase_rad = get_number(c, path, "phase_rad", 0.0);
    if (comp.amplitude_g < 0.0) fail(path + ".amplitude_g", "must be nonnegative");
    if (comp.freq_hz < 0.0) fail(path + ".freq_hz", "must be nonnegative");
    out.push_back(comp);
  }
  return out;
}

void parse_sensor(const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("sensor")) return;
  const json& s = doc.at("sensor");
  reject_unknown_keys(s, "sensor",
                      {"mass_kg", "damping", "stiffness", "amp_gain", "cap_coeff", "fault"});
  auto& m = cfg.sensor_model;
  m.mass_kg = get_number(s, "sensor", "mass_kg", m.mass_kg);
  m.damping = get_number(s, "sensor", "damping", m.damping);
  m.stiffness = get_number(s, "sensor", "stiffness", m.stiffness);
  m.amp_gain = get_number(s, "sensor", "amp_gain", m.amp_gain);
  m.cap_coeff = get_number(s, "sensor", "cap_coeff", m.cap_coeff);
  m.validate();
  if (s.contains("fault")) {
    const json& f = s.at("fault");
    reject_unknown_keys(f, "sensor.fault", {"mass", "damping", "stiffness", "gain", "cap"});
    cfg.fault.mass = get_number(f, "sensor.fault", "mass", 1.0);
    cfg.fault.damping = get_number(f, "sensor.fault", "damping", 1.0);
    cfg.fault.stiffness = get_number(f, "sensor.fault", "stiffness", 1.0);
    cfg.fault.gain = get_number(f, "sensor.fault", "gain", 1.0);
    cfg.fault.cap = get_number(f, "sensor.fault", "cap", 1.0);
    cfg.fault.validate();
  }
}

void parse_code(const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("code")) return;
  const json& c = doc.at("code");
  reject_unknown_keys(c, "code", {"order", "taps", "seed", "chip_rate_hz"});
  const int order = get_int(c, "code", "order", cfg.lfsr.order);
  if (c.contains("taps")) {
    const json& t = c.at("taps");
    if (!t.is_array()) fail("code.taps", "expected an array of integers");
    std::vector<int> taps;
    for (const auto& v : t) {
      if (!v.is_number_integer()) fail("code.taps", "expected an array of integers");
      taps.push_back(v.get<int>());
    }
    cfg.lfsr.order = order;
    cfg.lfsr.taps = taps;
  } else {
    cfg.lfsr = mls::LfsrSpec::standard(order, cfg.lfsr.seed);
  }
  const int seed = get_int(c, "code", "seed", static_cast<int>(cfg.lfsr.seed));
  if (seed <= 0) fail("code.seed", "must be a positive integer");
  cfg.lfsr.seed = static_cast<std::uint32_t>(seed);
  cfg.lfsr.validate();
  cfg.chip_rate_hz = get_number(c, "code", "chip_rate_hz", cfg.chip_rate_hz);
  if (!(cfg.chip_rate_hz > 0.0)) fail("code.chip_rate_hz", "must be positive");
}

void parse_chain(const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("chain")) return;
  const json& c = doc.at("chain");
  reject_unknown_keys(c, "chain",
                      {"carrier_freq_hz", "carrier_shape", "lp2_cutoff_hz", "operational_filter",
                       "test_filter", "demod_filter", "demod_phase_error_rad", "internal_rate_hz",
                       "output_rate_hz", "stimulus_amplitude_g", "physical_bandwidth_hz",
                       "lead_in_sequences"});
  auto& ch = cfg.chain_config;
  ch.carrier_freq_hz = get_number(c, "chain", "carrier_freq_hz", ch.carrier_freq_hz);
  if (c.contains("carrier_shape")) {
    const json& v = c.at("carrier_shape");
    if (!v.is_string()) fail("chain.carrier_shape", "expected \"sine\" or \"square\"");
    const std::string s = v.get<std::string>();
    if (s == "sine") {
      ch.carrier_shape = chain::CarrierShape::kSine;
    } else if (s == "square") {
      ch.carrier_shape = chain::CarrierShape::kSquare;
    } else {
      fail("chain.carrier_shape", "expected \"sine\" or \"square\"");
    }
  }
  ch.lp2_cutoff_hz = get_number(c, "chain", "lp2_cutoff_hz", ch.lp2_cutoff_hz);
  ch.operational_filter = get_filter(c, "chain", "operational_filter", ch.operational_filter);
  ch.test_filter = get_filter(c, "chain", "test_filter", ch.test_filter);
  ch.demod_filter = get_filter(c, "chain", "demod_filter", ch.demod_filter);
  ch.demod_phase_error_rad = get_number(c, "chain", "demod_phase_error_rad", ch.demod_phase_error_rad);
  ch.internal_rate_hz = get_number(c, "chain", "internal_rate_hz", ch.internal_rate_hz);
  ch.output_rate_hz = get_number(c, "chain", "output_rate_hz", ch.output_rate_hz);
  ch.stimulus_amplitude_g = get_number(c, "chain", "stimulus_amplitude_g", ch.stimulus_amplitude_g);
  ch.physical_bandwidth_hz = get_number(c, "chain", "physical_bandwidth_hz", ch.physical_bandwidth_hz);
  ch.lead_in_sequences = get_int(c, "chain", "lead_in_sequences", ch.lead_in_sequences);
}

void parse_run(const json& doc, ScenarioConfig& cfg) {
  if (!doc.contains("run")) return;
  const json& r = doc.at("run");
  reject_unknown_keys(r, "run", {"sequences", "seed", "noise_rms_g", "adaptive", "max_order"});
  cfg.run.sequences = get_int(r, "run", "sequences", cfg.run.sequences);
  if (cfg.run.sequences < 1) fail("run.sequences", "must be >= 1");
  const int seed = get_int(r, "run", "seed", static_cast<int>(cfg.run.seed));
  if (seed < 0) fail("run.seed", "must be nonnegative");
  cfg.run.seed = static_cast<std::uint64_t>(seed);
  cfg.run.noise_rms_g = get_number(r, "run", "noise_rms_g", cfg.run.noise_rms_g);
  if (cfg.run.noise_rms_g < 0.0) fail("run.noise_rms_g", "must be nonnegative");
  cfg.run.adaptive = get_bool(r, "run", "adaptive", cfg.run.adaptive);
  cfg.run.max_order = get_int(r, "run", "max_order", cfg.run.max_order);
  if (cfg.run.max_order < cfg.lfsr.order) fail("run.max_order", "must be >= code.order");
}

}  // namespace

chain::Scenario ScenarioConfig::make_scenario() const {
  chain::Scenario s;
  s.code = make_code();
  s.measurand = measurand;
  s.perturbation = perturbation;
  s.fault = fault;
  s.noise_rms_g = run.noise_rms_g;
  s.noise_seed = run.seed;
  return s;
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
  reject_unknown_keys(doc, "<root>",
                      {"sensor", "code", "chain", "perturbation", "measurand", "run"});
  ScenarioConfig cfg;
  parse_sensor(doc, cfg);
  parse_code(doc, cfg);
  parse_chain(doc, cfg);
  cfg.perturbation = get_components(doc, "perturbation");
  cfg.measurand = get_components(doc, "measurand");
  parse_run(doc, cfg);
  return cfg;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config parse error in " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must have the form KEY=VALUE: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(value);
  } catch (const nlohmann::json::parse_error&) {
    parsed = value;  // bare strings ("sine") are taken verbatim
  }

  nlohmann::json* node = &doc;
  std::size_t begin = 0;
  while (true) {
    const auto dot = key.find('.', begin);
    const std::string part = key.substr(begin, dot == std::string::npos ? dot : dot - begin);
    if (part.empty()) throw std::invalid_argument("bad override key: " + key);
    if (dot == std::string::npos) {
      (*node)[part] = parsed;
      return;
    }
    node = &(*node)[part];
    begin = dot + 1;
  }
}

nlohmann::json default_config_json() {
  return nlohmann::json{
      {"sensor",
       {{"fault",
         {{"mass", 1.0}, {"damping", 1.0}, {"stiffness", 1.0}, {"gain", 1.0}, {"cap", 1.0}}}}},
      {"code", {{"order", 6}, {"seed", 1}, {"chip_rate_hz", 100.0}}},
      {"chain",
       {{"carrier_freq_hz", 1000.0},
        {"carrier_shape", "sine"},
        {"lp2_cutoff_hz", 0.0},
        {"operational_filter", {{"order", 4}, {"cutoff_hz", 100.0}}},
        {"test_filter", {{"order", 2}, {"cutoff_hz", 300.0}}},
        {"demod_filter", {{"order", 5}, {"cutoff_hz", 150.0}}},
        {"demod_phase_error_rad", 0.0},
        {"internal_rate_hz", 64000.0},
        {"output_rate_hz", 800.0},
        {"stimulus_amplitude_g", 0.05},
        {"physical_bandwidth_hz", 1300.0},
        {"lead_in_sequences", 1}}},
      {"perturbation", nlohmann::json::array()},
      {"measurand", nlohmann::json::array()},
      {"run",
       {{"sequences", 1}, {"seed", 1}, {"noise_rms_g", 0.0}, {"adaptive", true}, {"max_order", 10}}},
  };
}

}  // namespace mlsbist::config
