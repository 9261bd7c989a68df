// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace mlsbist::engine {

/// Arithmetic mean; throws std::invalid_argument on empty input.
double mean(std::span<const double> samples);

/// Sample variance E(x^2) - E(x)^2 over the full window.
double variance(std::span<const double> samples);

/// Cov = E(x*y) - E(x)E(y) over one full sequence window.
/// Throws std::invalid_argument on empty input or length mismatch.
double covariance(std::span<const double> v_dem, std::span<const double> v_code);

/// Pearson correlation. Throws std::invalid_argument("degenerate signal")
/// when either input has zero variance.
double correlation(std::span<const double> v_dem, std::span<const double> v_code);

/// Analytic correlation of code + k*sine against the code, for unit code
/// variance and sine variance k^2/2:
///
///   Cor(k) = (1 + k*eps) / sqrt(1 + k^2/2 + 2*k*eps)
///
/// `eps` is the signed code/sine covariance; its magnitude is bounded by the
/// sensitivity to perturbation at the sine frequency. Pass eps = +sp for the
/// worst sign for bounding k from an observed correlation (the envelope that
/// crosses the decision threshold last), eps = -sp for the lowest correlation
/// at a given k.
double correlation_model(double k, double eps);

/// Largest amplitude ratio k consistent with an observed correlation at or
/// above `cor_threshold`, given the worst-case sensitivity to perturbation.
/// Solves correlation_model(k, +sp_worst) = cor_threshold by bisection.
double k_bound(double cor_threshold, double sp_worst);

/// Guaranteed relative Cov error bound |dCov|/Cov_ref = k * SP.
double accuracy_bound(double k_bound, double sp_worst);

/// Calibration references for the verdict.
struct TestReference {
  double cov_ref = 0.0;                  // healthy-sensor covariance, volts
  double cor_ref = 1.0;                  // healthy-sensor correlation
  double cov_tolerance = 0.08;           // relative Cov window (8 % accuracy bound)
  double cor_threshold_fraction = 0.97;  // correlation gate

  void validate() const;
};

enum class Decision { kPass, kFail, kNoDecision };

const char* to_string(Decision decision);

struct TestVerdict {
  double cov = 0.0;
  double cor = 0.0;
  Decision decision = Decision::kNoDecision;
  double k_bound = 0.0;  // meaningful when a decision was made
};

/// Verdict per the decision flow: decide only when the correlation is at
/// least cor_threshold_fraction * cor_ref, then pass iff the covariance is
/// inside the +-cov_tolerance window around cov_ref.
TestVerdict evaluate(std::span<const double> v_dem, std::span<const double> code_reference,
                     const TestReference& ref, double sp_worst);

/// Adaptive code-length policy: lengthen after a withheld decision, reset to
/// the base order otherwise.
struct AdaptivePolicy {
  int base_order = 6;
  int max_order = 10;
};

struct TestRecord {
  int order;
  Decision decision;
};

/// Next LFSR order from the verdict history (most recent last). Throws on
/// empty history.
int adaptive_next_order(const AdaptivePolicy& policy, std::span<const TestRecord> history);

}  // namespace mlsbist::engine
