// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/filters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mlsbist::dsp {
namespace {

constexpr double kPi = std::numbers::pi;

void check_design(int order, double cutoff_hz, double sample_rate_hz) {
  if (order < 1) throw std::invalid_argument("filter order must be >= 1");
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sample rate must be positive");
  if (!(cutoff_hz > 0.0) || cutoff_hz >= sample_rate_hz / 2.0) {
    throw std::invalid_argument("cutoff must lie in (0, sample_rate/2)");
  }
}

// Damping ratios of the Butterworth pole pairs: zeta_m = cos(pi*(2m-1)/(2n)).
std::vector<double> pair_dampings(int order) {
  std::vector<double> zetas;
  for (int m = 1; 2 * m <= order; ++m) {
    zetas.push_back(std::cos(kPi * (2.0 * m - 1.0) / (2.0 * order)));
  }
  return zetas;
}

Biquad lowpass_pair(double zeta, double w0) {
  const double alpha = std::sin(w0) * zeta;
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  Biquad s;
  s.b0 = (1.0 - c) / 2.0 / a0;
  s.b1 = (1.0 - c) / a0;
  s.b2 = s.b0;
  s.a1 = -2.0 * c / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

Biquad highpass_pair(double zeta, double w0) {
  const double alpha = std::sin(w0) * zeta;
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  Biquad s;
  s.b0 = (1.0 + c) / 2.0 / a0;
  s.b1 = -(1.0 + c) / a0;
  s.b2 = s.b0;
  s.a1 = -2.0 * c / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

Biquad first_order(bool highpass, double cutoff_hz, double sample_rate_hz) {
  const double k = std::tan(kPi * cutoff_hz / sample_rate_hz);
  Biquad s;
  if (highpass) {
    s.b0 = 1.0 / (1.0 + k);
    s.b1 = -s.b0;
  } else {
    s.b0 = k / (1.0 + k);
    s.b1 = s.b0;
  }
  s.b2 = 0.0;
  s.a1 = (k - 1.0) / (k + 1.0);
  s.a2 = 0.0;
  return s;
}

BiquadCascade design(bool highpass, int order, double cutoff_hz, double sample_rate_hz) {
  check_design(order, cutoff_hz, sample_rate_hz);
  const double w0 = 2.0 * kPi * cutoff_hz / sample_rate_hz;
  std::vector<Biquad> sections;
  for (double zeta : pair_dampings(order)) {
    sections.push_back(highpass ? highpass_pair(zeta, w0) : lowpass_pair(zeta, w0));
  }
  if (order % 2 == 1) sections.push_back(first_order(highpass, cutoff_hz, sample_rate_hz));
  return BiquadCascade{std::move(sections)};
}

}  // namespace

std::complex<double> Biquad::response(double f_hz, double sample_rate_hz) const {
  const std::complex<double> z = std::polar(1.0, -2.0 * kPi * f_hz / sample_rate_hz);
  return (b0 + z * (b1 + z * b2)) / (1.0 + z * (a1 + z * a2));
}

std::vector<double> BiquadCascade::process(std::span<const double> in) {
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = step(in[i]);
  return out;
}

void BiquadCascade::reset() {
  for (auto& s : sections_) s.reset();
}

std::complex<double> BiquadCascade::response(double f_hz, double sample_rate_hz) const {
  std::complex<double> h{1.0, 0.0};
  for (const auto& s : sections_) h *= s.response(f_hz, sample_rate_hz);
  return h;
}

double BiquadCascade::magnitude_db(double f_hz, double sample_rate_hz) const {
  return 20.0 * std::log10(std::abs(response(f_hz, sample_rate_hz)));
}

BiquadCascade butterworth_lowpass(int order, double cutoff_hz, double sample_rate_hz) {
  return design(false, order, cutoff_hz, sample_rate_hz);
}

BiquadCascade butterworth_highpass(int order, double cutoff_hz, double sample_rate_hz) {
  return design(true, order, cutoff_hz, sample_rate_hz);
}

}  // namespace mlsbist::dsp
