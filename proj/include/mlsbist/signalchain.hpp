// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mlsbist/filters.hpp"
#include "mlsbist/mls.hpp"
#include "mlsbist/sensor.hpp"

namespace mlsbist::chain {

/// Drive level behind the default 50 mg stimulus on the case-study device.
/// The electrostatic injection path is not modeled; the stimulus enters the
/// simulation directly as acceleration.
inline constexpr double kStimulusCombDriveVolts = 0.9;

enum class CarrierShape { kSine, kSquare };

struct FilterSpec {
  int order = 2;
  double cutoff_hz = 100.0;
};

/// Parameters of the test signal path. The operational low-pass bounds the
/// measurand band; the test high-pass isolates the carrier band; the demod
/// low-pass recovers the baseband code before decimation to the output rate.
struct ChainConfig {
  double carrier_freq_hz = 1000.0;
  CarrierShape carrier_shape = CarrierShape::kSine;
  double lp2_cutoff_hz = 0.0;  // 0 = automatic, 3x the chip rate
  FilterSpec operational_filter{4, 100.0};
  FilterSpec test_filter{2, 300.0};   // high-pass
  FilterSpec demod_filter{5, 150.0};  // alias guard needs >= 40 dB at output_rate/2
  double demod_phase_error_rad = 0.0;
  double internal_rate_hz = 64000.0;
  double output_rate_hz = 800.0;
  double stimulus_amplitude_g = 0.05;
  double physical_bandwidth_hz = 1300.0;
  int lead_in_sequences = 1;     // settle time before the measurement window
  double min_lead_in_s = 0.2;    // lead-in is extended to cover at least this
};

struct SineComponent {
  double amplitude_g = 0.0;
  double freq_hz = 0.0;
  double phase_rad = 0.0;
};

struct Scenario {
  mls::CodeSequence code;
  std::vector<SineComponent> measurand;
  std::vector<SineComponent> perturbation;
  sensor::FaultScenario fault;
  bool stimulus_enabled = true;
  double noise_rms_g = 0.0;
  std::uint64_t noise_seed = 0;
};

struct ChainOutputs {
  std::vector<double> v_out;    // operational output, internal rate
  std::vector<double> v_demod;  // demodulated test output, output rate
  double internal_rate_hz = 0.0;
  double output_rate_hz = 0.0;
  std::size_t capture_begin = 0;   // demod index of the measurement window
  std::size_t capture_length = 0;  // one full code sequence

  std::span<const double> capture() const {
    return {v_demod.data() + capture_begin, capture_length};
  }
};

/// Healthy-sensor references measured on a perturbation-free run.
struct ChainCalibration {
  std::vector<double> reference;  // delay-aligned shaped code, capture window
  double cov_ref = 0.0;
  double cor_ref = 0.0;
  int lag = 0;            // measured chain latency, output samples
  double demod_rms = 0.0; // RMS of the mean-removed healthy demod window
};

/// The full test path: code shaping, carrier modulation, sensor excitation,
/// operational and test filtering, phase-coherent demodulation, decimation.
class SignalChain {
 public:
  SignalChain(sensor::SensorModel model, ChainConfig config);

  const ChainConfig& config() const { return config_; }
  const sensor::SensorModel& model() const { return model_; }

  /// LP2 code shaping at the internal rate (unity passband gain).
  std::vector<double> shape_code(std::span<const double> code_waveform, double chip_rate_hz) const;

  /// Stimulus acceleration in g: amplitude * baseband * carrier, t from 0.
  std::vector<double> modulate(std::span<const double> shaped_baseband) const;

  /// Operational output: low-pass that suppresses the test band.
  std::vector<double> operational_path(std::span<const double> v_sensor) const;

  /// Test filter, in-phase mixing and low-pass, then decimation to the
  /// output rate. The demod carrier is phase-aligned to the net carrier
  /// phase through the nominal sensor and test filter, offset by the
  /// configured phase error.
  std::vector<double> demodulate(std::span<const double> v_sensor) const;

  /// Full deterministic run of a scenario.
  ChainOutputs run(const Scenario& scenario) const;

  /// Reference waveform, cov_ref and cor_ref from a healthy calibration run.
  ChainCalibration calibrate(const mls::CodeSequence& code) const;

  /// Net carrier phase at the demodulator (sensor + test filter at f_t).
  double demod_carrier_phase_rad() const { return demod_phase_rad_; }

  std::size_t decimation() const { return decimation_; }

 private:
  dsp::BiquadCascade make_lp2(double chip_rate_hz) const;
  std::vector<double> render_code(const mls::CodeSequence& code, std::size_t n_samples) const;
  void check_code_rates(const mls::CodeSequence& code) const;

  sensor::SensorModel model_;
  ChainConfig config_;
  dsp::BiquadCascade op_filter_;
  dsp::BiquadCascade test_filter_;
  dsp::BiquadCascade demod_filter_;
  dsp::Biquad sensor_nominal_;
  double demod_phase_rad_ = 0.0;
  std::size_t decimation_ = 1;
};

/// One-shot convenience wrapper.
ChainOutputs run_chain(const sensor::SensorModel& model, const ChainConfig& config,
                       const Scenario& scenario);

}  // namespace mlsbist::chain
