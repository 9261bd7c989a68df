// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mlsbist::mls {

inline constexpr int kMinOrder = 2;
inline constexpr int kMaxOrder = 20;  // period check is O(2^n), keep it bounded

/// Fibonacci LFSR description.
///
/// Taps are 1-based delays: the next output bit is the XOR of the bits
/// emitted t steps earlier, for every tap t. The register order itself must
/// always be a tap. A tap set {n, a, b, ...} corresponds to the feedback
/// polynomial x^n + x^(n-a) + x^(n-b) + ... + 1; the sequence reaches the
/// full period 2^n - 1 iff that polynomial is primitive.
struct LfsrSpec {
  int order = 6;
  std::vector<int> taps;  // 1-based, must contain `order`
  std::uint32_t seed = 1; // initial register fill, nonzero

  /// Spec with a known-primitive tap set from the built-in table (orders 2..16).
  static LfsrSpec standard(int order, std::uint32_t seed = 1);

  /// Throws std::invalid_argument on malformed order/taps/seed.
  void validate() const;

  std::uint32_t state_mask() const { return (order >= 32) ? 0xffffffffu : ((1u << order) - 1u); }
};

struct LfsrStep {
  int chip;            // +1 for output bit 1, -1 for bit 0
  std::uint32_t next;  // register state after the shift
};

/// One LFSR step. Throws std::invalid_argument("degenerate LFSR state") when
/// state is all-zeros (the fixed point of the recurrence).
LfsrStep lfsr_step(std::uint32_t state, const LfsrSpec& spec);

/// A maximum-length sequence of +-1 chips with its generator provenance.
struct CodeSequence {
  std::vector<int> chips;     // values in {-1, +1}
  double chip_rate_hz = 100.0;
  LfsrSpec spec;

  int n_bits() const { return static_cast<int>(chips.size()); }
  double duration_s() const { return static_cast<double>(chips.size()) / chip_rate_hz; }
};

/// Generates one full period of the MLS defined by `spec`.
///
/// The period is verified during generation: if the register returns to the
/// seed before 2^order - 1 steps (non-primitive taps), a std::runtime_error
/// "sequence period shorter than 2^n - 1" is thrown.
CodeSequence generate_mls(const LfsrSpec& spec, double chip_rate_hz = 100.0);

/// Circular autocorrelation sum over one period in exact integer arithmetic:
/// sum_i chips[i]*chips[(i+lag) mod N]. Equals N at lag 0 and -1 at every
/// nonzero lag for a true MLS.
long long circular_autocorrelation_sum(const CodeSequence& code, int lag);

/// Zero-order-hold rendering of the chip stream: chip i occupies
/// t in [i/f_c, (i+1)/f_c), total duration N_b/f_c seconds.
/// Throws std::invalid_argument("undersampled code") if sample_rate < 2*f_c.
std::vector<double> code_waveform(const CodeSequence& code, double sample_rate_hz);

/// DFT of one sequence of the sampled code, with k = 1..N coefficients
/// C_k = sum_n w[n] (cos - i sin)(2*pi*(k-1)(n-1)/N), plus the per-bin power
/// spectral density |C_k|^2 * tau_s / N.
struct CodeSpectrum {
  std::vector<std::complex<double>> coefficients;  // C_k, k = 1..N (index k-1)
  double sample_interval_s = 0.0;                  // tau_s
  std::vector<double> psd;

  std::size_t size() const { return coefficients.size(); }
  /// Frequency of bin k (1-based): (k-1)/(N*tau_s).
  double bin_freq_hz(std::size_t k) const {
    return static_cast<double>(k - 1) / (static_cast<double>(size()) * sample_interval_s);
  }
};

/// Spectrum of the code rendered at sample rate 1/tau_s over one period.
CodeSpectrum code_dft(const CodeSequence& code, double tau_s);

/// Power-density envelope of a pseudo-random code clocked at f_clock:
/// (1/f_clock) * sinc^2(f/f_clock), with the f = 0 limit 1/f_clock and zeros
/// at integer multiples of f_clock.
double psd_envelope(double f_hz, double f_clock_hz);

/// Low-frequency approximation of |C_f|: sqrt(N / (f_c * tau_s)) where N is
/// the number of samples over one sequence at interval tau_s.
double flat_band_coefficient(const CodeSequence& code, double tau_s);

}  // namespace mlsbist::mls
