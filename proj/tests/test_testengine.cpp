// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include "mlsbist/testengine.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "mlsbist/mls.hpp"

using namespace mlsbist;

TEST_CASE("mean: basic cases and errors") {
  CHECK(engine::mean(std::vector<double>{1.0, -1.0}) == 0.0);
  CHECK(engine::mean(std::vector<double>{3.5, 3.5, 3.5}) == doctest::Approx(3.5));

  const auto code = mls::generate_mls(mls::LfsrSpec::standard(4));
  std::vector<double> chips(code.chips.begin(), code.chips.end());
  CHECK(engine::mean(chips) == doctest::Approx(1.0 / 15.0).epsilon(1e-12));

  CHECK_THROWS_AS(engine::mean(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("covariance: balanced MLS waveform variance is 1 - 1/N_b^2") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(4), 50.0);
  const auto w = mls::code_waveform(code, 800.0);
  CHECK(engine::covariance(w, w) == doctest::Approx(1.0 - 1.0 / 225.0).epsilon(1e-12));

  std::vector<double> constant(w.size(), 2.5);
  CHECK(engine::covariance(constant, w) == doctest::Approx(0.0).epsilon(1e-15));

  // Shift invariance / scale equivariance.
  std::vector<double> affine(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) affine[i] = 3.0 * w[i] + 7.0;
  CHECK(engine::covariance(affine, w) ==
        doctest::Approx(3.0 * engine::covariance(w, w)).epsilon(1e-9));

  CHECK_THROWS_AS(engine::covariance(w, constant = {1.0}), std::invalid_argument);
}

TEST_CASE("correlation: unit cases and degenerate input") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(5));
  std::vector<double> w(code.chips.begin(), code.chips.end());
  std::vector<double> neg(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];

  CHECK(engine::correlation(w, w) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(engine::correlation(neg, w) == doctest::Approx(-1.0).epsilon(1e-12));

  std::vector<double> constant(w.size(), 1.0);
  CHECK_THROWS_WITH_AS(engine::correlation(constant, w), "degenerate signal",
                       std::invalid_argument);
}

TEST_CASE("correlation invariance under positive affine transforms") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(500), y(500);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = dist(rng);
    y[i] = 0.4 * x[i] + dist(rng);
  }
  const double base = engine::correlation(x, y);
  std::vector<double> xs(x.size()), ys(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xs[i] = 2.5 * x[i] - 3.0;
    ys[i] = 0.7 * y[i] + 11.0;
  }
  CHECK(engine::correlation(xs, ys) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("relative Cov error equals k * cov(p, code) / var(code) exactly") {
  // The linear-model identity behind the accuracy bound, as a property test.
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(6), 100.0);
  const auto w = mls::code_waveform(code, 800.0);
  const double var = engine::covariance(w, w);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> freq(0.5, 45.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> ratio(0.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double f = freq(rng), ph = phase(rng), k = ratio(rng);
    std::vector<double> p(w.size()), v_dem(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      p[i] = std::cos(2.0 * std::numbers::pi * f * static_cast<double>(i) / 800.0 + ph);
      v_dem[i] = w[i] + k * p[i];
    }
    const double delta = engine::covariance(v_dem, w) - var;
    const double expected = k * engine::covariance(p, w);
    REQUIRE(std::abs(delta - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("correlation_model: anchor values and monotonicity") {
  CHECK(engine::correlation_model(0.0, 0.2) == doctest::Approx(1.0));

  const double sp14 = std::pow(10.0, -14.0 / 20.0);
  CHECK(engine::correlation_model(0.4, sp14) == doctest::Approx(0.97).epsilon(0.005 / 0.97));

  double prev = 1.0;
  for (double k = 0.05; k <= 3.0; k += 0.05) {
    const double cor = engine::correlation_model(k, sp14);
    CHECK(cor < prev);
    prev = cor;
  }
}

TEST_CASE("k_bound inverts the correlation model at the threshold") {
  const double sp14 = std::pow(10.0, -14.0 / 20.0);
  const double k = engine::k_bound(0.97, sp14);
  CHECK(k == doctest::Approx(0.4).epsilon(0.02));
  CHECK(engine::correlation_model(k, sp14) == doctest::Approx(0.97).epsilon(1e-9));

  CHECK(engine::accuracy_bound(k, sp14) == doctest::Approx(0.08).epsilon(0.02));
  CHECK(engine::accuracy_bound(0.0, sp14) == 0.0);
}

TEST_CASE("evaluate: pass, fail and the no-decision gate") {
  const auto code = mls::generate_mls(mls::LfsrSpec::standard(4), 50.0);
  const auto ref_wave = mls::code_waveform(code, 800.0);

  engine::TestReference ref;
  ref.cov_ref = engine::covariance(ref_wave, ref_wave);
  ref.cor_ref = 1.0;
  const double sp_worst = 0.2;

  SUBCASE("self-match passes") {
    const auto v = engine::evaluate(ref_wave, ref_wave, ref, sp_worst);
    CHECK(v.decision == engine::Decision::kPass);
    CHECK(v.cor == doctest::Approx(1.0));
  }

  SUBCASE("sensitivity shift beyond the window fails") {
    std::vector<double> scaled(ref_wave.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = 1.25 * ref_wave[i];
    const auto v = engine::evaluate(scaled, ref_wave, ref, sp_worst);
    CHECK(v.decision == engine::Decision::kFail);
    CHECK(v.cor == doctest::Approx(1.0));  // pure scaling keeps correlation
  }

  SUBCASE("sensitivity shift inside the window still passes") {
    std::vector<double> scaled(ref_wave.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = 1.05 * ref_wave[i];
    CHECK(engine::evaluate(scaled, ref_wave, ref, sp_worst).decision ==
          engine::Decision::kPass);
  }

  SUBCASE("large superposed sine withholds the decision") {
    std::vector<double> noisy(ref_wave.size());
    for (std::size_t i = 0; i < noisy.size(); ++i) {
      noisy[i] = ref_wave[i] +
                 2.0 * std::cos(2.0 * std::numbers::pi * 8.0 * static_cast<double>(i) / 800.0);
    }
    const auto v = engine::evaluate(noisy, ref_wave, ref, sp_worst);
    CHECK(v.decision == engine::Decision::kNoDecision);
    CHECK(v.cor < 0.97);
  }
}

TEST_CASE("adaptive_next_order follows the lengthen-and-reset policy") {
  const engine::AdaptivePolicy policy{6, 10};
  using engine::Decision;

  std::vector<engine::TestRecord> history{{6, Decision::kNoDecision}};
  CHECK(engine::adaptive_next_order(policy, history) == 7);

  history.push_back({7, Decision::kPass});
  CHECK(engine::adaptive_next_order(policy, history) == 6);

  history = {{6, Decision::kNoDecision}};
  for (int order = 7; order <= 12; ++order) {
    const int next = engine::adaptive_next_order(policy, history);
    CHECK(next == std::min(order, 10));
    history.push_back({next, Decision::kNoDecision});
  }

  CHECK_THROWS_AS(engine::adaptive_next_order(policy, {}), std::invalid_argument);
}
