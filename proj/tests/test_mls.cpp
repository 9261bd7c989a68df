// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/mls.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include <doctest.h>

using namespace mlsbist;

TEST_CASE("lfsr_step: order 4 taps {4,3} from state 0001 has period 15") {
  const mls::LfsrSpec spec{4, {4, 3}, 0b0001};
  std::uint32_t state = spec.seed;
  std::vector<int> chips;
  for (int i = 0; i < 30; ++i) {
    const auto step = mls::lfsr_step(state, spec);
    chips.push_back(step.chip);
    state = step.next;
  }
  for (int i = 0; i < 15; ++i) {
    CHECK(chips[i] == chips[i + 15]);
  }
  // Hand-iterated recurrence s_k = s_{k-4} xor s_{k-3}. Seed bit i-1 is the
  // bit emitted i steps ago, so 0001 means a history of 0,0,0,1 (oldest first).
  std::vector<int> bits{0, 0, 0, 1};
  for (int k = 0; k < 15; ++k) {
    const int expected = bits[bits.size() - 4] ^ bits[bits.size() - 3];
    CHECK(chips[k] == (expected ? +1 : -1));
    bits.push_back(expected);
  }
}

TEST_CASE("lfsr_step: zero state is rejected") {
  const mls::LfsrSpec spec{4, {4, 3}, 1};
  CHECK_THROWS_WITH_AS(mls::lfsr_step(0, spec), "degenerate LFSR state", std::invalid_argument);
}

TEST_CASE("generate_mls: primitive specs of order 2..10 reach the full period") {
  for (int order = 2; order <= 10; ++order) {
    const auto all_ones = static_cast<std::uint32_t>((1u << order) - 1u);
    for (std::uint32_t seed : {1u, all_ones}) {
      CAPTURE(order);
      CAPTURE(seed);
      const auto code = mls::generate_mls(mls::LfsrSpec::standard(order, seed));
      const int n_bits = (1 << order) - 1;
      REQUIRE(code.n_bits() == n_bits);

      long long sum = std::accumulate(code.chips.begin(), code.chips.end(), 0LL);
      CHECK(sum == 1);  // one more +1 than -1

      // All nonzero states visited exactly once per period.
      std::set<std::uint32_t> states;
      std::uint32_t state = code.spec.seed;
      for (int i = 0; i < n_bits; ++i) {
        states.insert(state);
        state = mls::lfsr_step(state, code.spec).next;
      }
      CHECK(states.size() == static_cast<std::size_t>(n_bits));
      CHECK(state == code.spec.seed);
    }
  }
}

TEST_CASE("generate_mls: circular autocorrelation is -1 at every nonzero lag") {
  for (int order : {3, 4, 6, 8}) {
    const auto code = mls::generate_mls(mls::LfsrSpec::standard(order));
    CHECK(mls::circular_autocorrelation_sum(code, 0) == code.n_bits());
    for (int lag = 1; lag < code.n_bits(); ++lag) {
      REQUIRE(mls::circular_autocorrelation_sum(code, lag) == -1);
    }
  }
}

TEST_CASE("generate_mls: non-primitive taps {4,2} fail the period check") {
  const mls::LfsrSpec spec{4, {4, 2}, 1};
  CHECK_THROWS_AS(mls::generate_mls(spec), std::runtime_error);
}

TEST_CASE("generate_mls: order 6 gives the 63-bit design-point code") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(6), 100.0);
  CHECK(code.n_bits() == 63);
  CHECK(code.duration_s() == doctest::Approx(0.63).epsilon(1e-12));
}

TEST_CASE("generate_mls is deterministic for a given spec") {
  const auto a = mls::generate_mls(mls::LfsrSpec::standard(7, 5));
  const auto b = mls::generate_mls(mls::LfsrSpec::standard(7, 5));
  CHECK(a.chips == b.chips);
}

TEST_CASE("LfsrSpec validation") {
  CHECK_THROWS_AS(mls::LfsrSpec(4, {3, 2}, 1).validate(), std::invalid_argument);  // no order tap
  CHECK_THROWS_AS(mls::LfsrSpec(4, {4, 3}, 0).validate(), std::invalid_argument);  // zero seed
  CHECK_THROWS_AS(mls::LfsrSpec(4, {4, 5}, 1).validate(), std::invalid_argument);  // tap > order
  CHECK_THROWS_AS(mls::LfsrSpec(1, {1}, 1).validate(), std::invalid_argument);     // order too small
  CHECK_THROWS_AS(mls::LfsrSpec(4, {4, 3}, 16).validate(), std::invalid_argument); // seed too wide
  CHECK_THROWS_AS(mls::LfsrSpec::standard(17), std::invalid_argument);             // beyond table
}

TEST_CASE("code_waveform: 15 chips at 50 Hz sampled at 800 Hz") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(4), 50.0);
  const auto w = mls::code_waveform(code, 800.0);
  REQUIRE(w.size() == 240);  // 16 samples per chip, 0.3 s
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(w[i] == static_cast<double>(code.chips[i / 16]));
  }
}

TEST_CASE("code_waveform: 8 samples per chip at the 800 Hz processing rate") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(6), 100.0);
  const auto w = mls::code_waveform(code, 800.0);
  CHECK(w.size() == 63u * 8u);
}

TEST_CASE("code_waveform: undersampling is rejected") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(4), 50.0);
  CHECK_THROWS_WITH_AS(mls::code_waveform(code, 80.0), "undersampled code", std::invalid_argument);
}

TEST_CASE("code_dft: constant sequence concentrates in the DC bin") {
  mls::CodeSequence constant;
  constant.chips.assign(16, +1);
  constant.chip_rate_hz = 50.0;
  const auto spectrum = mls::code_dft(constant, 1.0 / 800.0);
  const auto n = static_cast<double>(spectrum.size());
  CHECK(std::abs(spectrum.coefficients[0]) == doctest::Approx(n).epsilon(1e-12));
  for (std::size_t k = 1; k < spectrum.size(); ++k) {
    CHECK(std::abs(spectrum.coefficients[k]) < 1e-8 * n);
  }
}

TEST_CASE("code_dft: conjugate symmetry and Parseval for an MLS") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(4), 50.0);
  const auto spectrum = mls::code_dft(code, 1.0 / 800.0);
  const std::size_t n = spectrum.size();

  for (std::size_t k = 2; k <= n; ++k) {
    const auto expected = std::conj(spectrum.coefficients[k - 1]);
    const auto mirrored = spectrum.coefficients[n - k + 1];
    CHECK(std::abs(mirrored - expected) <= 1e-9 * std::abs(expected) + 1e-9);
  }

  // Chip energy: every sample is +-1, so sum w^2 = N = sum |C_k|^2 / N.
  double acc = 0.0;
  for (const auto& c : spectrum.coefficients) acc += std::norm(c);
  CHECK(acc / static_cast<double>(n) ==
        doctest::Approx(static_cast<double>(n)).epsilon(1e-9));
}

TEST_CASE("psd_envelope: limit, zeros, symmetry, nonnegativity") {
  CHECK(mls::psd_envelope(0.0, 50.0) == doctest::Approx(1.0 / 50.0));
  CHECK(mls::psd_envelope(50.0, 50.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mls::psd_envelope(100.0, 50.0) == doctest::Approx(0.0).epsilon(1e-15));
  for (double f : {3.0, 17.5, 42.0, 99.0}) {
    CHECK(mls::psd_envelope(f, 50.0) == doctest::Approx(mls::psd_envelope(-f, 50.0)));
    CHECK(mls::psd_envelope(f, 50.0) >= 0.0);
  }
}

TEST_CASE("psd_envelope matches the bin-averaged exact PSD within 3 dB") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(6), 100.0);
  const double tau_s = 1.0 / 800.0;
  const auto spectrum = mls::code_dft(code, tau_s);

  // Average the exact per-bin PSD over the low band and compare with the
  // envelope averaged over the same frequencies.
  double psd_acc = 0.0, env_acc = 0.0;
  int count = 0;
  for (std::size_t k = 2; k <= spectrum.size(); ++k) {
    const double f = spectrum.bin_freq_hz(k);
    if (f > code.chip_rate_hz / 4.0) break;
    psd_acc += spectrum.psd[k - 1];
    env_acc += mls::psd_envelope(f, code.chip_rate_hz);
    ++count;
  }
  REQUIRE(count > 0);
  const double ratio_db = 10.0 * std::log10(psd_acc / env_acc);
  CHECK(std::abs(ratio_db) < 3.0);
}

TEST_CASE("flat_band_coefficient: direct formula and flat-band agreement") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(4), 50.0);
  const double tau_s = 1.0 / 800.0;
  const double coeff = mls::flat_band_coefficient(code, tau_s);
  CHECK(coeff == doctest::Approx(std::sqrt(3840.0)).epsilon(1e-12));  // sqrt(240/(50/800))

  // Against the mean |C_k| over the flat band, within 3 dB.
  const auto spectrum = mls::code_dft(code, tau_s);
  double acc = 0.0;
  int count = 0;
  for (std::size_t k = 2; k <= spectrum.size(); ++k) {
    if (spectrum.bin_freq_hz(k) > code.chip_rate_hz / 4.0) break;
    acc += std::abs(spectrum.coefficients[k - 1]);
    ++count;
  }
  REQUIRE(count > 0);
  CHECK(std::abs(20.0 * std::log10(coeff / (acc / count))) < 3.0);

  // Substituted into the DFT approximation it gives the RMS law sqrt(1/N_b).
  const double n_samples = 240.0;
  CHECK(coeff / n_samples == doctest::Approx(std::sqrt(1.0 / 15.0)).epsilon(1e-12));
}
