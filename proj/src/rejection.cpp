// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/rejection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mlsbist/testengine.hpp"

namespace mlsbist::rejection {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

SpComponents sp_components(std::span<const double> waveform, double tau_s, double f_hz) {
  if (waveform.empty()) throw std::invalid_argument("empty waveform");
  if (!(tau_s > 0.0)) throw std::invalid_argument("sample interval must be positive");
  if (f_hz < 0.0) throw std::invalid_argument("frequency must be nonnegative");

  const auto n = static_cast<double>(waveform.size());
  const double w = 2.0 * kPi * f_hz * tau_s;
  double sum_w = 0.0, sum_c = 0.0, sum_s = 0.0, sum_wc = 0.0, sum_ws = 0.0;
  for (std::size_t i = 0; i < waveform.size(); ++i) {
    const double c = std::cos(w * static_cast<double>(i));
    const double s = std::sin(w * static_cast<double>(i));
    sum_w += waveform[i];
    sum_c += c;
    sum_s += s;
    sum_wc += waveform[i] * c;
    sum_ws += waveform[i] * s;
  }
  SpComponents out;
  out.cos_part = sum_wc / n - (sum_w / n) * (sum_c / n);
  out.sin_part = sum_ws / n - (sum_w / n) * (sum_s / n);
  return out;
}

double sp_exact(std::span<const double> waveform, double tau_s, double f_hz, double phi_rad) {
  // cos(2*pi*f*t + phi) = cos(phi)cos(2*pi*f*t) - sin(phi)sin(2*pi*f*t), and
  // the covariance is linear in its second argument.
  const SpComponents c = sp_components(waveform, tau_s, f_hz);
  return std::cos(phi_rad) * c.cos_part - std::sin(phi_rad) * c.sin_part;
}

double sp_max_exact(std::span<const double> waveform, double tau_s, double f_hz) {
  const SpComponents c = sp_components(waveform, tau_s, f_hz);
  return std::hypot(c.cos_part, c.sin_part);
}

double worst_phase(std::span<const double> waveform, double tau_s, double f_hz) {
  const SpComponents c = sp_components(waveform, tau_s, f_hz);
  return std::atan2(-c.sin_part, c.cos_part);
}

double sp_max_fft(const mls::CodeSpectrum& spectrum, double f_hz) {
  const auto n = static_cast<double>(spectrum.size());
  if (n == 0.0) throw std::invalid_argument("empty spectrum");
  const double k_real = f_hz * n * spectrum.sample_interval_s;
  const auto k = static_cast<long long>(std::llround(k_real));
  if (std::abs(k_real - static_cast<double>(k)) > 1e-6 || k < 0 ||
      k >= static_cast<long long>(spectrum.size())) {
    throw std::invalid_argument("FFT approximation defined on DFT grid");
  }
  return std::abs(spectrum.coefficients[static_cast<std::size_t>(k)]) / n;
}

double sp_rms(int n_bits) {
  if (n_bits < 1) throw std::invalid_argument("sequence length must be >= 1");
  return std::sqrt(1.0 / static_cast<double>(n_bits));
}

double sp_rms_flat_band(const mls::CodeSpectrum& spectrum, double chip_rate_hz) {
  if (!(chip_rate_hz > 0.0)) throw std::invalid_argument("chip rate must be positive");
  const auto n = static_cast<double>(spectrum.size());
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 2; k <= spectrum.size(); ++k) {
    if (spectrum.bin_freq_hz(k) > chip_rate_hz / 4.0) break;
    const double sp = std::abs(spectrum.coefficients[k - 1]) / n;
    acc += sp * sp;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("no DFT bins inside the flat band");
  return std::sqrt(acc / static_cast<double>(count));
}

double rejection_db(double sp) {
  if (!(sp > 0.0)) throw std::invalid_argument("sp must be positive");
  return -20.0 * std::log10(sp);
}

std::vector<double> default_sweep_grid(const mls::CodeSequence& code, double tau_s) {
  const std::vector<double> w = mls::code_waveform(code, 1.0 / tau_s);
  const double window_s = static_cast<double>(w.size()) * tau_s;
  const double bin = 1.0 / window_s;
  const double f_c = code.chip_rate_hz;

  std::vector<double> grid;
  for (double f = 0.0; f <= f_c + 1e-9; f += bin) grid.push_back(f);
  for (double f = 1.0; f <= f_c + 1e-9; f += 1.0) grid.push_back(f);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-9; }),
             grid.end());
  return grid;
}

RejectionCurve sweep(const mls::CodeSequence& code, std::span<const double> freqs_hz,
                     double tau_s) {
  if (freqs_hz.empty()) throw std::invalid_argument("empty frequency grid");
  const std::vector<double> w = mls::code_waveform(code, 1.0 / tau_s);
  const mls::CodeSpectrum spectrum = mls::code_dft(code, tau_s);
  const auto n = static_cast<double>(w.size());

  RejectionCurve curve;
  curve.n_bits = code.n_bits();
  curve.chip_rate_hz = code.chip_rate_hz;
  curve.freqs_hz.assign(freqs_hz.begin(), freqs_hz.end());
  curve.sp_exact.reserve(freqs_hz.size());
  curve.sp_fft.reserve(freqs_hz.size());
  for (double f : freqs_hz) {
    curve.sp_exact.push_back(sp_max_exact(w, tau_s, f));
    auto k = static_cast<long long>(std::llround(f * n * tau_s));
    k = std::clamp<long long>(k, 0, static_cast<long long>(w.size()) - 1);
    curve.sp_fft.push_back(std::abs(spectrum.coefficients[static_cast<std::size_t>(k)]) / n);
  }
  return curve;
}

double sp_worst_case(const mls::CodeSequence& code, double tau_s) {
  const std::vector<double> grid = default_sweep_grid(code, tau_s);
  const std::vector<double> w = mls::code_waveform(code, 1.0 / tau_s);
  double worst = 0.0;
  for (double f : grid) worst = std::max(worst, sp_max_exact(w, tau_s, f));
  return worst;
}

double required_rejection(double max_perturbation_g, double test_amplitude_g,
                          double resolution_fraction) {
  if (!(max_perturbation_g > 0.0 && test_amplitude_g > 0.0 && resolution_fraction > 0.0)) {
    throw std::invalid_argument("inputs must be positive");
  }
  return -20.0 * std::log10(resolution_fraction * test_amplitude_g / max_perturbation_g);
}

EndToEndResult end_to_end_sp(const sensor::SensorModel& model, const chain::ChainConfig& config,
                             const mls::CodeSequence& code, double k, double downshift_hz,
                             int n_phases) {
  if (k < 0.0) throw std::invalid_argument("amplitude ratio k must be nonnegative");
  if (n_phases < 1) throw std::invalid_argument("need at least one phase");

  const chain::SignalChain sc(model, config);
  const chain::ChainCalibration cal = sc.calibrate(code);

  EndToEndResult result;
  chain::Scenario scenario;
  scenario.code = code;

  if (k == 0.0) {
    const auto outputs = sc.run(scenario);
    result.max_rel_err =
        std::abs(engine::covariance(outputs.capture(), cal.reference) - cal.cov_ref) /
        cal.cov_ref;
    result.sp = result.max_rel_err;
    return result;
  }

  const double pert_amp = k * config.stimulus_amplitude_g;
  const double f_p = config.carrier_freq_hz + downshift_hz;

  // Demodulated amplitude of the perturbation alone, per unit k: the analysis
  // defines k as the ratio of the demodulated signals.
  chain::Scenario pert_only;
  pert_only.code = code;
  pert_only.stimulus_enabled = false;
  pert_only.perturbation = {{pert_amp, f_p, 0.0}};
  const auto pert_out = sc.run(pert_only);
  // Demodulated sine amplitude over the demodulated code standard deviation,
  // matching how the analysis normalizes the amplitude ratio.
  const double pert_amp_dem = std::numbers::sqrt2 * std::sqrt(engine::variance(pert_out.capture()));
  result.k_dem = pert_amp_dem / cal.demod_rms;

  for (int p = 0; p < n_phases; ++p) {
    const double phase = 2.0 * kPi * static_cast<double>(p) / n_phases;
    scenario.perturbation = {{pert_amp, f_p, phase}};
    const auto outputs = sc.run(scenario);
    const double cov = engine::covariance(outputs.capture(), cal.reference);
    result.max_rel_err = std::max(result.max_rel_err, std::abs(cov - cal.cov_ref) / cal.cov_ref);
  }
  result.sp = result.max_rel_err / result.k_dem;
  return result;
}

double unencoded_baseline_sp(const sensor::SensorModel& model, const chain::ChainConfig& config,
                             double chip_rate_hz, double perturbation_freq_hz, double k,
                             int n_phases) {
  if (!(k > 0.0)) throw std::invalid_argument("amplitude ratio k must be positive");

  // Constant "code": the plain sine-stimulus scheme.
  mls::CodeSequence constant;
  constant.chips.assign(16, +1);
  constant.chip_rate_hz = chip_rate_hz;

  const chain::SignalChain sc(model, config);
  chain::Scenario scenario;
  scenario.code = constant;

  const auto healthy = sc.run(scenario);
  const double v_ref = engine::mean(healthy.capture());

  double worst = 0.0;
  for (int p = 0; p < n_phases; ++p) {
    const double phase = 2.0 * kPi * static_cast<double>(p) / n_phases;
    scenario.perturbation = {{k * config.stimulus_amplitude_g, perturbation_freq_hz, phase}};
    const auto outputs = sc.run(scenario);
    for (double v : outputs.capture()) {
      worst = std::max(worst, std::abs(v - v_ref));
    }
  }
  return worst / std::abs(v_ref) / k;
}

}  // namespace mlsbist::rejection
