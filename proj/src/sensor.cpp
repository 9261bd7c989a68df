// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/sensor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mlsbist::sensor {
namespace {

constexpr double kPi = std::numbers::pi;

double bandwidth_ratio(double f_n_hz, double f_hz) {
  // |H(f)| / |H(0)| for a critically damped second-order low-pass reduces to
  // w_n^2 / (w_n^2 + w^2).
  const double wn2 = f_n_hz * f_n_hz;
  return wn2 / (wn2 + f_hz * f_hz);
}

}  // namespace

void SensorModel::validate() const {
  if (!(mass_kg > 0.0 && damping > 0.0 && stiffness > 0.0 && amp_gain > 0.0 && cap_coeff > 0.0)) {
    throw std::invalid_argument("sensor parameters must be strictly positive");
  }
}

double SensorModel::natural_frequency_hz() const {
  return std::sqrt(stiffness / mass_kg) / (2.0 * kPi);
}

bool SensorModel::is_critically_damped(double rel_tol) const {
  const double dc = 2.0 * std::sqrt(stiffness * mass_kg);
  return std::abs(damping - dc) <= rel_tol * dc;
}

void FaultScenario::validate() const {
  if (!(mass > 0.0 && damping > 0.0 && stiffness > 0.0 && gain > 0.0 && cap > 0.0)) {
    throw std::invalid_argument("fault multipliers must be strictly positive");
  }
}

SensorModel FaultScenario::apply(const SensorModel& model) const {
  validate();
  SensorModel faulty = model;
  faulty.mass_kg *= mass;
  faulty.damping *= damping;
  faulty.stiffness *= stiffness;
  faulty.amp_gain *= gain;
  faulty.cap_coeff *= cap;
  return faulty;
}

std::complex<double> frequency_response(const SensorModel& model, double f_hz) {
  if (f_hz < 0.0) throw std::invalid_argument("frequency must be nonnegative");
  const std::complex<double> s{0.0, 2.0 * kPi * f_hz};
  const std::complex<double> den =
      model.mass_kg * s * s + model.damping * s + model.stiffness;
  return model.amp_gain * model.cap_coeff * model.mass_kg / den;
}

SensorModel make_critically_damped(double mass_kg, double stiffness, double amp_gain,
                                   double cap_coeff) {
  SensorModel model;
  model.mass_kg = mass_kg;
  model.stiffness = stiffness;
  model.amp_gain = amp_gain;
  model.cap_coeff = cap_coeff;
  if (!(mass_kg > 0.0 && stiffness > 0.0)) {
    throw std::invalid_argument("mass and stiffness must be strictly positive");
  }
  model.damping = 2.0 * std::sqrt(stiffness * mass_kg);
  model.validate();
  return model;
}

SensorModel default_model() {
  // Bisection for the natural frequency whose critically damped response is
  // 3 dB down at the bandwidth target.
  const double target = 1.0 / std::sqrt(2.0);
  double lo = kDefaultBandwidthHz;
  double hi = 20.0 * kDefaultBandwidthHz;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bandwidth_ratio(mid, kDefaultBandwidthHz) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-9) break;
  }
  const double f_n = 0.5 * (lo + hi);
  const double stiffness = (2.0 * kPi * f_n) * (2.0 * kPi * f_n);  // with M = 1
  // Unit DC sensitivity: 1 V/g, i.e. G*k_c*M/K = 1/9.81 V per m/s^2.
  const double amp_gain = stiffness / kGravityMs2;
  return make_critically_damped(1.0, stiffness, amp_gain, 1.0);
}

dsp::Biquad discretize(const SensorModel& model, double sample_rate_hz) {
  model.validate();
  if (sample_rate_hz < 20.0 * model.natural_frequency_hz()) {
    throw std::invalid_argument("undersampled: rate must be >= 20x the natural frequency");
  }
  const double c = 2.0 * sample_rate_hz;
  const double m = model.mass_kg, d = model.damping, k = model.stiffness;
  const double num = model.amp_gain * model.cap_coeff * m;
  const double a0 = m * c * c + d * c + k;

  dsp::Biquad bq;
  bq.b0 = num / a0;
  bq.b1 = 2.0 * num / a0;
  bq.b2 = num / a0;
  bq.a1 = (2.0 * k - 2.0 * m * c * c) / a0;
  bq.a2 = (m * c * c - d * c + k) / a0;
  return bq;
}

std::vector<double> simulate(const SensorModel& model, std::span<const double> acceleration_g,
                             double sample_rate_hz, const FaultScenario& fault) {
  dsp::Biquad bq = discretize(fault.apply(model), sample_rate_hz);
  std::vector<double> out(acceleration_g.size());
  for (std::size_t i = 0; i < acceleration_g.size(); ++i) {
    out[i] = bq.step(acceleration_g[i] * kGravityMs2);
  }
  return out;
}

}  // namespace mlsbist::sensor
