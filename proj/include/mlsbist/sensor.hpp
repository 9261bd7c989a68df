// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mlsbist/filters.hpp"

namespace mlsbist::sensor {

/// Acceleration unit used at the model boundary: 1 g = 9.81 m/s^2.
inline constexpr double kGravityMs2 = 9.81;

/// -3 dB physical bandwidth the default model is calibrated to.
inline constexpr double kDefaultBandwidthHz = 1300.0;

/// Linearized second-order capacitive accelerometer:
///
///   V_out(s) = G * k_c * M / (M s^2 + D s + K) * A(s)
///
/// with A in m/s^2. All parameters strictly positive.
struct SensorModel {
  double mass_kg = 1.0;        // M
  double damping = 1.0;        // D, N*s/m
  double stiffness = 1.0;      // K, N/m
  double amp_gain = 1.0;       // G
  double cap_coeff = 1.0;      // k_c, F/m

  void validate() const;
  double natural_frequency_hz() const;
  /// DC sensitivity G*k_c*M/K in V per m/s^2.
  double dc_sensitivity() const { return amp_gain * cap_coeff * mass_kg / stiffness; }
  double dc_sensitivity_per_g() const { return dc_sensitivity() * kGravityMs2; }
  bool is_critically_damped(double rel_tol = 1e-9) const;
};

/// Multiplicative parameter deviations; 1.0 everywhere is a healthy sensor.
struct FaultScenario {
  double mass = 1.0;
  double damping = 1.0;
  double stiffness = 1.0;
  double gain = 1.0;
  double cap = 1.0;

  void validate() const;
  SensorModel apply(const SensorModel& model) const;
};

/// Complex gain at frequency f, in V per m/s^2 of input acceleration.
std::complex<double> frequency_response(const SensorModel& model, double f_hz);

/// Model with D = 2*sqrt(K*M) (fastest non-ringing response).
SensorModel make_critically_damped(double mass_kg, double stiffness, double amp_gain,
                                   double cap_coeff);

/// Nominal model: critically damped, -3 dB bandwidth of 1.3 kHz (found by
/// bisection on the natural frequency) and DC sensitivity of 1 V/g.
SensorModel default_model();

/// Bilinear-transform discretization of the transfer function. Requires
/// sample_rate >= 20 * f_n; throws std::invalid_argument otherwise.
dsp::Biquad discretize(const SensorModel& model, double sample_rate_hz);

/// Time-domain simulation from zero initial state. Input acceleration is in
/// g and sampled at sample_rate; output is in volts at the same rate.
std::vector<double> simulate(const SensorModel& model, std::span<const double> acceleration_g,
                             double sample_rate_hz, const FaultScenario& fault = {});

}  // namespace mlsbist::sensor
