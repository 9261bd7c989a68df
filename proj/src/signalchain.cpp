// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/signalchain.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mlsbist/testengine.hpp"

namespace mlsbist::chain {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOpAttenuationDb = -40.0;
constexpr double kAliasGuardDb = -40.0;
constexpr int kMaxAlignmentLag = 16;

bool near_integer(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) < tol; }

}  // namespace

SignalChain::SignalChain(sensor::SensorModel model, ChainConfig config)
    : model_(model), config_(config) {
  model_.validate();
  const double fs = config_.internal_rate_hz;
  if (!(fs > 0.0) || !(config_.output_rate_hz > 0.0)) {
    throw std::invalid_argument("rates must be positive");
  }
  if (!near_integer(fs / config_.output_rate_hz)) {
    throw std::invalid_argument("internal rate must be an integer multiple of the output rate");
  }
  decimation_ = static_cast<std::size_t>(std::llround(fs / config_.output_rate_hz));
  if (!(config_.carrier_freq_hz > 0.0) || config_.carrier_freq_hz >= fs / 2.0) {
    throw std::invalid_argument("carrier frequency must lie in (0, internal_rate/2)");
  }
  if (!(config_.stimulus_amplitude_g > 0.0)) {
    throw std::invalid_argument("stimulus amplitude must be positive");
  }
  if (config_.lead_in_sequences < 1) {
    throw std::invalid_argument("lead_in_sequences must be >= 1");
  }

  op_filter_ = dsp::butterworth_lowpass(config_.operational_filter.order,
                                        config_.operational_filter.cutoff_hz, fs);
  test_filter_ = dsp::butterworth_highpass(config_.test_filter.order,
                                           config_.test_filter.cutoff_hz, fs);
  demod_filter_ = dsp::butterworth_lowpass(config_.demod_filter.order,
                                           config_.demod_filter.cutoff_hz, fs);

  if (op_filter_.magnitude_db(config_.carrier_freq_hz, fs) > kOpAttenuationDb) {
    throw std::invalid_argument("operational filter must attenuate >= 40 dB at the carrier");
  }
  if (demod_filter_.magnitude_db(config_.output_rate_hz / 2.0, fs) > kAliasGuardDb) {
    throw std::invalid_argument("demod filter must attenuate >= 40 dB at output_rate/2");
  }

  sensor_nominal_ = sensor::discretize(model_, fs);
  const auto h = sensor_nominal_.response(config_.carrier_freq_hz, fs) *
                 test_filter_.response(config_.carrier_freq_hz, fs);
  demod_phase_rad_ = std::arg(h);
}

void SignalChain::check_code_rates(const mls::CodeSequence& code) const {
  const double f_c = code.chip_rate_hz;
  if (!(f_c > 0.0)) throw std::invalid_argument("chip rate must be positive");
  if (!near_integer(config_.internal_rate_hz / f_c) ||
      !near_integer(config_.output_rate_hz / f_c)) {
    throw std::invalid_argument("internal and output rates must be integer multiples of the chip rate");
  }
  if (config_.carrier_freq_hz + f_c > config_.physical_bandwidth_hz) {
    throw std::invalid_argument("carrier + chip rate exceeds the sensor physical bandwidth");
  }
}

dsp::BiquadCascade SignalChain::make_lp2(double chip_rate_hz) const {
  double cutoff = config_.lp2_cutoff_hz > 0.0 ? config_.lp2_cutoff_hz : 3.0 * chip_rate_hz;
  if (!(cutoff > 0.0) || cutoff >= config_.internal_rate_hz / 2.0) {
    throw std::invalid_argument("LP2 cutoff must lie in (0, internal_rate/2)");
  }
  return dsp::butterworth_lowpass(2, cutoff, config_.internal_rate_hz);
}

std::vector<double> SignalChain::render_code(const mls::CodeSequence& code,
                                             std::size_t n_samples) const {
  const auto spc = static_cast<std::size_t>(
      std::llround(config_.internal_rate_hz / code.chip_rate_hz));
  const std::size_t n_bits = code.chips.size();
  std::vector<double> w(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    w[i] = static_cast<double>(code.chips[(i / spc) % n_bits]);
  }
  return w;
}

std::vector<double> SignalChain::shape_code(std::span<const double> code_waveform,
                                            double chip_rate_hz) const {
  dsp::BiquadCascade lp2 = make_lp2(chip_rate_hz);
  return lp2.process(code_waveform);
}

std::vector<double> SignalChain::modulate(std::span<const double> shaped_baseband) const {
  const double fs = config_.internal_rate_hz;
  const double w = 2.0 * kPi * config_.carrier_freq_hz / fs;
  std::vector<double> out(shaped_baseband.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double car = std::cos(w * static_cast<double>(i));
    if (config_.carrier_shape == CarrierShape::kSquare) car = car >= 0.0 ? 1.0 : -1.0;
    out[i] = config_.stimulus_amplitude_g * shaped_baseband[i] * car;
  }
  return out;
}

std::vector<double> SignalChain::operational_path(std::span<const double> v_sensor) const {
  dsp::BiquadCascade lp = op_filter_;
  return lp.process(v_sensor);
}

std::vector<double> SignalChain::demodulate(std::span<const double> v_sensor) const {
  const double fs = config_.internal_rate_hz;
  const double w = 2.0 * kPi * config_.carrier_freq_hz / fs;
  const double phase = demod_phase_rad_ + config_.demod_phase_error_rad;

  dsp::BiquadCascade hp = test_filter_;
  dsp::BiquadCascade lp = demod_filter_;
  std::vector<double> out;
  out.reserve(v_sensor.size() / decimation_ + 1);
  for (std::size_t i = 0; i < v_sensor.size(); ++i) {
    const double mixed =
        hp.step(v_sensor[i]) * 2.0 * std::cos(w * static_cast<double>(i) + phase);
    const double filtered = lp.step(mixed);
    if (i % decimation_ == 0) out.push_back(filtered);
  }
  return out;
}

ChainOutputs SignalChain::run(const Scenario& scenario) const {
  check_code_rates(scenario.code);
  scenario.fault.validate();

  const double fs = config_.internal_rate_hz;
  const double f_c = scenario.code.chip_rate_hz;
  const std::size_t n_bits = scenario.code.chips.size();
  const auto spc_out = static_cast<std::size_t>(std::llround(config_.output_rate_hz / f_c));
  const std::size_t seq_out = n_bits * spc_out;  // output samples per sequence

  const double seq_duration = scenario.code.duration_s();
  int lead = config_.lead_in_sequences;
  while (lead * seq_duration < config_.min_lead_in_s) ++lead;

  const std::size_t n_out = static_cast<std::size_t>(lead + 1) * seq_out;
  const std::size_t n_int = n_out * decimation_;

  // Stimulus: shaped code times carrier.
  std::vector<double> accel(n_int, 0.0);
  if (scenario.stimulus_enabled) {
    const std::vector<double> code_zoh = render_code(scenario.code, n_int);
    dsp::BiquadCascade lp2 = make_lp2(f_c);
    const std::vector<double> shaped = lp2.process(code_zoh);
    accel = modulate(shaped);
  }

  for (const auto& group : {scenario.measurand, scenario.perturbation}) {
    for (const auto& c : group) {
      const double w = 2.0 * kPi * c.freq_hz / fs;
      for (std::size_t i = 0; i < n_int; ++i) {
        accel[i] += c.amplitude_g * std::cos(w * static_cast<double>(i) + c.phase_rad);
      }
    }
  }
  if (scenario.noise_rms_g > 0.0) {
    std::mt19937_64 rng(scenario.noise_seed);
    std::normal_distribution<double> dist(0.0, scenario.noise_rms_g);
    for (std::size_t i = 0; i < n_int; ++i) accel[i] += dist(rng);
  }

  const std::vector<double> v_sensor = sensor::simulate(model_, accel, fs, scenario.fault);

  ChainOutputs outputs;
  outputs.v_out = operational_path(v_sensor);
  outputs.v_demod = demodulate(v_sensor);
  outputs.internal_rate_hz = fs;
  outputs.output_rate_hz = config_.output_rate_hz;
  outputs.capture_begin = static_cast<std::size_t>(lead) * seq_out;
  outputs.capture_length = seq_out;
  return outputs;
}

ChainCalibration SignalChain::calibrate(const mls::CodeSequence& code) const {
  Scenario healthy;
  healthy.code = code;
  const ChainOutputs outputs = run(healthy);
  const auto window = outputs.capture();

  // Reference path: the shaped code through a copy of the demod low-pass, so
  // that both paths share the dominant group delays.
  const std::size_t n_int = outputs.v_demod.size() * decimation_;
  const std::vector<double> code_zoh = render_code(code, n_int);
  dsp::BiquadCascade lp2 = make_lp2(code.chip_rate_hz);
  dsp::BiquadCascade lp = demod_filter_;
  const std::vector<double> shaped = lp.process(lp2.process(code_zoh));
  std::vector<double> ref_full;
  ref_full.reserve(outputs.v_demod.size());
  for (std::size_t i = 0; i < shaped.size(); i += decimation_) ref_full.push_back(shaped[i]);

  // Residual latency (sensor and test-filter envelope delay) by integer-lag
  // cross-correlation over the capture window.
  ChainCalibration cal;
  double best = -2.0;
  const std::size_t begin = outputs.capture_begin;
  const int max_lag = std::min<int>(kMaxAlignmentLag, static_cast<int>(begin));
  for (int lag = 0; lag <= max_lag; ++lag) {
    std::span<const double> candidate{ref_full.data() + begin - lag, window.size()};
    const double cor = engine::correlation(window, candidate);
    if (cor > best) {
      best = cor;
      cal.lag = lag;
    }
  }
  cal.reference.assign(ref_full.begin() + (begin - cal.lag),
                       ref_full.begin() + (begin - cal.lag) + window.size());
  cal.cov_ref = engine::covariance(window, cal.reference);
  cal.cor_ref = best;
  cal.demod_rms = std::sqrt(engine::variance(window));
  if (!(cal.cov_ref > 0.0)) throw std::runtime_error("chain calibration failed: cov_ref <= 0");
  return cal;
}

ChainOutputs run_chain(const sensor::SensorModel& model, const ChainConfig& config,
                       const Scenario& scenario) {
  return SignalChain(model, config).run(scenario);
}

}  // namespace mlsbist::chain
