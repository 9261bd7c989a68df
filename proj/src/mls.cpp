// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/mls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mlsbist::mls {
namespace {

// Primitive feedback tap sets (1-based delays, order included), orders 2..16.
// Cross-checked against published MLS tables; generate_mls verifies the full
// period at generation time regardless.
const std::vector<int>* standard_taps(int order) {
  static const std::vector<int> table[] = {
      /* 2*/ {2, 1},
      /* 3*/ {3, 2},
      /* 4*/ {4, 3},
      /* 5*/ {5, 3},
      /* 6*/ {6, 5},
      /* 7*/ {7, 6},
      /* 8*/ {8, 6, 5, 4},
      /* 9*/ {9, 5},
      /*10*/ {10, 7},
      /*11*/ {11, 9},
      /*12*/ {12, 6, 4, 1},
      /*13*/ {13, 4, 3, 1},
      /*14*/ {14, 5, 3, 1},
      /*15*/ {15, 14},
      /*16*/ {16, 15, 13, 4},
  };
  if (order < 2 || order > 16) return nullptr;
  return &table[order - 2];
}

}  // namespace

LfsrSpec LfsrSpec::standard(int order, std::uint32_t seed) {
  const auto* taps = standard_taps(order);
  if (taps == nullptr) {
    throw std::invalid_argument("no built-in primitive polynomial for order " +
                                std::to_string(order) + " (supported: 2..16); pass taps explicitly");
  }
  LfsrSpec spec{order, *taps, seed};
  spec.validate();
  return spec;
}

void LfsrSpec::validate() const {
  if (order < kMinOrder || order > kMaxOrder) {
    throw std::invalid_argument("LFSR order must be in [" + std::to_string(kMinOrder) + ", " +
                                std::to_string(kMaxOrder) + "]");
  }
  if (taps.empty()) throw std::invalid_argument("LFSR tap set is empty");
  bool has_order = false;
  for (int t : taps) {
    if (t < 1 || t > order) throw std::invalid_argument("LFSR tap out of range [1, order]");
    if (t == order) has_order = true;
    if (std::count(taps.begin(), taps.end(), t) != 1) {
      throw std::invalid_argument("duplicate LFSR tap");
    }
  }
  if (!has_order) throw std::invalid_argument("LFSR tap set must contain the order");
  if (seed == 0) throw std::invalid_argument("LFSR seed must be nonzero");
  if ((seed & ~state_mask()) != 0) throw std::invalid_argument("LFSR seed wider than the register");
}

LfsrStep lfsr_step(std::uint32_t state, const LfsrSpec& spec) {
  if (state == 0) throw std::invalid_argument("degenerate LFSR state");
  std::uint32_t fb = 0;
  for (int t : spec.taps) fb ^= (state >> (t - 1)) & 1u;
  const std::uint32_t next = ((state << 1) | fb) & spec.state_mask();
  return {fb ? +1 : -1, next};
}

CodeSequence generate_mls(const LfsrSpec& spec, double chip_rate_hz) {
  spec.validate();
  if (!(chip_rate_hz > 0.0)) throw std::invalid_argument("chip rate must be positive");

  const std::size_t period = (std::size_t{1} << spec.order) - 1;
  CodeSequence code;
  code.chips.reserve(period);
  code.chip_rate_hz = chip_rate_hz;
  code.spec = spec;

  std::uint32_t state = spec.seed;
  for (std::size_t i = 0; i < period; ++i) {
    const auto step = lfsr_step(state, spec);
    code.chips.push_back(step.chip);
    state = step.next;
    if (state == spec.seed && i + 1 < period) {
      throw std::runtime_error("sequence period shorter than 2^n - 1 (taps not primitive)");
    }
  }
  if (state != spec.seed) {
    // Cannot happen for a tap set containing the order (the state map is a
    // permutation of the nonzero states), but guard against table mistakes.
    throw std::runtime_error("LFSR state did not return to the seed after 2^n - 1 steps");
  }
  return code;
}

long long circular_autocorrelation_sum(const CodeSequence& code, int lag) {
  const auto n = static_cast<long long>(code.chips.size());
  if (n == 0) throw std::invalid_argument("empty code");
  long long shift = lag % n;
  if (shift < 0) shift += n;
  long long acc = 0;
  for (long long i = 0; i < n; ++i) {
    acc += static_cast<long long>(code.chips[i]) * code.chips[(i + shift) % n];
  }
  return acc;
}

std::vector<double> code_waveform(const CodeSequence& code, double sample_rate_hz) {
  if (code.chips.empty()) throw std::invalid_argument("empty code");
  const double f_c = code.chip_rate_hz;
  if (sample_rate_hz < 2.0 * f_c) throw std::invalid_argument("undersampled code");

  const auto n_bits = static_cast<double>(code.chips.size());
  const auto n = static_cast<std::size_t>(std::floor(n_bits * sample_rate_hz / f_c + 1e-9));
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate_hz;
    auto chip = static_cast<std::size_t>(t * f_c);
    if (chip >= code.chips.size()) chip = code.chips.size() - 1;
    w[i] = static_cast<double>(code.chips[chip]);
  }
  return w;
}

CodeSpectrum code_dft(const CodeSequence& code, double tau_s) {
  if (code.chips.empty()) throw std::invalid_argument("empty code");
  if (!(tau_s > 0.0)) throw std::invalid_argument("sample interval must be positive");

  const std::vector<double> w = code_waveform(code, 1.0 / tau_s);
  const std::size_t n = w.size();

  CodeSpectrum spectrum;
  spectrum.sample_interval_s = tau_s;
  spectrum.coefficients.resize(n);
  spectrum.psd.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    const double theta = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const std::complex<double> rot{std::cos(theta), std::sin(theta)};
    std::complex<double> phase{1.0, 0.0};
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      acc += w[i] * phase;
      phase *= rot;
    }
    spectrum.coefficients[k] = acc;
    spectrum.psd[k] = std::norm(acc) * tau_s / static_cast<double>(n);
  }
  return spectrum;
}

double psd_envelope(double f_hz, double f_clock_hz) {
  if (!(f_clock_hz > 0.0)) throw std::invalid_argument("clock frequency must be positive");
  const double x = std::numbers::pi * f_hz / f_clock_hz;
  if (std::abs(x) < 1e-12) return 1.0 / f_clock_hz;
  const double s = std::sin(x) / x;
  return s * s / f_clock_hz;
}

double flat_band_coefficient(const CodeSequence& code, double tau_s) {
  if (code.chips.empty()) throw std::invalid_argument("empty code");
  if (!(tau_s > 0.0)) throw std::invalid_argument("sample interval must be positive");
  const double n_samples = std::floor(code.duration_s() / tau_s + 1e-9);
  return std::sqrt(n_samples / (code.chip_rate_hz * tau_s));
}

}  // namespace mlsbist::mls
