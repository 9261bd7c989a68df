// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mlsbist::dsp {

/// Second-order IIR section, direct form II transposed. a0 is normalized to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double z1 = 0.0, z2 = 0.0;

  double step(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
  void reset() { z1 = z2 = 0.0; }

  /// Transfer function at frequency f for sample rate fs (state-independent).
  std::complex<double> response(double f_hz, double sample_rate_hz) const;
};

/// Cascade of biquad sections sharing one sample rate.
class BiquadCascade {
 public:
  BiquadCascade() = default;
  explicit BiquadCascade(std::vector<Biquad> sections) : sections_(std::move(sections)) {}

  double step(double x) {
    for (auto& s : sections_) x = s.step(x);
    return x;
  }
  std::vector<double> process(std::span<const double> in);
  void reset();

  std::complex<double> response(double f_hz, double sample_rate_hz) const;
  double magnitude_db(double f_hz, double sample_rate_hz) const;

  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
};

/// Maximally-flat (Butterworth) low-pass of the given order, bilinear design
/// with cutoff prewarping. Throws on order < 1 or cutoff outside (0, fs/2).
BiquadCascade butterworth_lowpass(int order, double cutoff_hz, double sample_rate_hz);

/// High-pass counterpart of butterworth_lowpass.
BiquadCascade butterworth_highpass(int order, double cutoff_hz, double sample_rate_hz);

}  // namespace mlsbist::dsp
