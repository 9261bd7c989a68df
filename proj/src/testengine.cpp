// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/testengine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlsbist::engine {

double mean(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("mean of empty input");
  double acc = 0.0;
  for (double v : samples) acc += v;
  return acc / static_cast<double>(samples.size());
}

double variance(std::span<const double> samples) {
  const double m = mean(samples);
  double acc = 0.0;
  for (double v : samples) acc += (v - m) * (v - m);
  return acc / static_cast<double>(samples.size());
}

double covariance(std::span<const double> v_dem, std::span<const double> v_code) {
  if (v_dem.size() != v_code.size()) throw std::invalid_argument("covariance length mismatch");
  if (v_dem.empty()) throw std::invalid_argument("covariance of empty input");
  const double mx = mean(v_dem);
  const double my = mean(v_code);
  double acc = 0.0;
  for (std::size_t i = 0; i < v_dem.size(); ++i) acc += (v_dem[i] - mx) * (v_code[i] - my);
  return acc / static_cast<double>(v_dem.size());
}

double correlation(std::span<const double> v_dem, std::span<const double> v_code) {
  const double cov = covariance(v_dem, v_code);
  const double vx = variance(v_dem);
  const double vy = variance(v_code);
  if (vx <= 0.0 || vy <= 0.0) throw std::invalid_argument("degenerate signal");
  return cov / std::sqrt(vx * vy);
}

double correlation_model(double k, double eps) {
  if (k < 0.0) throw std::invalid_argument("amplitude ratio k must be nonnegative");
  const double den = 1.0 + k * k / 2.0 + 2.0 * k * eps;
  if (den <= 0.0) throw std::invalid_argument("correlation model denominator not positive");
  return (1.0 + k * eps) / std::sqrt(den);
}

double k_bound(double cor_threshold, double sp_worst) {
  if (!(cor_threshold > 0.0 && cor_threshold < 1.0)) {
    throw std::invalid_argument("correlation threshold must be in (0, 1)");
  }
  if (sp_worst < 0.0) throw std::invalid_argument("sp_worst must be nonnegative");
  double lo = 0.0, hi = 1.0;
  while (correlation_model(hi, sp_worst) > cor_threshold && hi < 1e6) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (correlation_model(mid, sp_worst) > cor_threshold) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double accuracy_bound(double k_bound, double sp_worst) {
  if (k_bound < 0.0 || sp_worst < 0.0) throw std::invalid_argument("inputs must be nonnegative");
  return k_bound * sp_worst;
}

void TestReference::validate() const {
  if (!(cor_threshold_fraction > 0.0 && cor_threshold_fraction < 1.0)) {
    throw std::invalid_argument("cor_threshold_fraction must be in (0, 1)");
  }
  if (!(cov_tolerance > 0.0)) throw std::invalid_argument("cov_tolerance must be positive");
  if (cov_ref == 0.0) throw std::invalid_argument("cov_ref must be nonzero");
}

const char* to_string(Decision decision) {
  switch (decision) {
    case Decision::kPass: return "Pass";
    case Decision::kFail: return "Fail";
    case Decision::kNoDecision: return "NoDecision";
  }
  return "?";
}

TestVerdict evaluate(std::span<const double> v_dem, std::span<const double> code_reference,
                     const TestReference& ref, double sp_worst) {
  ref.validate();
  TestVerdict verdict;
  verdict.cov = covariance(v_dem, code_reference);
  verdict.cor = correlation(v_dem, code_reference);
  verdict.k_bound = k_bound(ref.cor_threshold_fraction, sp_worst);
  if (verdict.cor < ref.cor_threshold_fraction * ref.cor_ref) {
    verdict.decision = Decision::kNoDecision;
    return verdict;
  }
  const bool in_window = std::abs(verdict.cov - ref.cov_ref) <= ref.cov_tolerance * std::abs(ref.cov_ref);
  verdict.decision = in_window ? Decision::kPass : Decision::kFail;
  return verdict;
}

int adaptive_next_order(const AdaptivePolicy& policy, std::span<const TestRecord> history) {
  if (history.empty()) throw std::invalid_argument("empty verdict history");
  const TestRecord& last = history.back();
  if (last.decision == Decision::kNoDecision) {
    return std::min(last.order + 1, policy.max_order);
  }
  return policy.base_order;
}

}  // namespace mlsbist::engine
