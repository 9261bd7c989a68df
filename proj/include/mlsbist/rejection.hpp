// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "mlsbist/mls.hpp"
#include "mlsbist/sensor.hpp"
#include "mlsbist/signalchain.hpp"

namespace mlsbist::rejection {

/// Sample interval the rejection analysis defaults to (8 samples per chip at
/// the 100 Hz design-point chip rate).
inline constexpr double kDefaultSampleInterval = 1.0 / 800.0;

/// Quadrature covariance components of a sampled waveform against cos/sin at
/// frequency f, with t_n = n * tau_s.
struct SpComponents {
  double cos_part = 0.0;
  double sin_part = 0.0;
};
SpComponents sp_components(std::span<const double> waveform, double tau_s, double f_hz);

/// Sensitivity to perturbation at one frequency and phase: the covariance of
/// the code waveform with cos(2*pi*f*t + phi) over one sequence window.
double sp_exact(std::span<const double> waveform, double tau_s, double f_hz, double phi_rad);

/// Worst case of sp_exact over the perturbation phase,
/// sqrt(cov(w, cos)^2 + cov(w, sin)^2), including the mean-correction terms.
double sp_max_exact(std::span<const double> waveform, double tau_s, double f_hz);

/// Phase that attains sp_max_exact with positive sign.
double worst_phase(std::span<const double> waveform, double tau_s, double f_hz);

/// DFT approximation SP_max ~ |C_k|/N. Defined only on the DFT grid
/// f = (k-1)/(N*tau_s); throws std::invalid_argument off the grid.
double sp_max_fft(const mls::CodeSpectrum& spectrum, double f_hz);

/// RMS sensitivity over the flat low-frequency band: sqrt(1/N_b).
double sp_rms(int n_bits);

/// Numeric counterpart of sp_rms: RMS of |C_k|/N over the nonzero DFT bins
/// of the flat band f <= chip_rate/4.
double sp_rms_flat_band(const mls::CodeSpectrum& spectrum, double chip_rate_hz);

/// Rejection in dB: -20*log10(sp). Throws on sp <= 0.
double rejection_db(double sp);

struct RejectionCurve {
  std::vector<double> freqs_hz;
  std::vector<double> sp_exact;  // worst case over phase, per frequency
  std::vector<double> sp_fft;    // |C_k|/N at the nearest DFT bin
  int n_bits = 0;
  double chip_rate_hz = 0.0;
};

/// Default analysis grid: the DFT bins of one sequence window united with a
/// 1 Hz lattice, both up to the chip rate. Off-bin lattice points probe the
/// spectral-leakage worst cases between bins.
std::vector<double> default_sweep_grid(const mls::CodeSequence& code,
                                       double tau_s = kDefaultSampleInterval);

/// Exact and DFT-approximated worst-case SP over a frequency grid.
RejectionCurve sweep(const mls::CodeSequence& code, std::span<const double> freqs_hz,
                     double tau_s = kDefaultSampleInterval);

/// Worst (largest) SP over the default grid.
double sp_worst_case(const mls::CodeSequence& code, double tau_s = kDefaultSampleInterval);

/// Rejection required so that a perturbation up to max_perturbation keeps the
/// relative test error within resolution_fraction (Eq. of the accuracy bound,
/// inverted): -20*log10(resolution_fraction * test_amplitude / max_perturbation).
double required_rejection(double max_perturbation_g, double test_amplitude_g,
                          double resolution_fraction);

struct EndToEndResult {
  double sp = 0.0;           // max |dCov|/Cov_ref divided by the demodulated ratio
  double k_dem = 0.0;        // measured demodulated amplitude ratio per unit k
  double max_rel_err = 0.0;  // max |dCov|/Cov_ref over the phase grid
};

/// Measured SP of the full chain: runs the chain over a perturbation phase
/// grid at down-shifted frequency f (perturbation at carrier + f), with
/// perturbation acceleration k times the stimulus amplitude. The demodulated
/// amplitude ratio is measured on a stimulus-free run so the result is
/// normalized the way the analysis defines k. For k = 0 the no-perturbation
/// error floor is returned.
EndToEndResult end_to_end_sp(const sensor::SensorModel& model, const chain::ChainConfig& config,
                             const mls::CodeSequence& code, double k, double downshift_hz,
                             int n_phases = 12);

/// SP of the un-encoded scheme (constant code): the test output is the
/// demodulated amplitude; SP is the worst relative amplitude deviation over
/// the phase grid divided by k.
double unencoded_baseline_sp(const sensor::SensorModel& model, const chain::ChainConfig& config,
                             double chip_rate_hz, double perturbation_freq_hz, double k,
                             int n_phases = 8);

}  // namespace mlsbist::rejection
