# Copyright 2026 mlsbist contributors
# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings."""

import math

import pytest

import mlsbist as mb


def test_mls_properties():
    for order in range(3, 9):
        code = mb.generate_mls(mb.LfsrSpec.standard(order), 100.0)
        n = 2**order - 1
        assert code.n_bits == n
        assert sum(code.chips) == 1
        assert mb.circular_autocorrelation_sum(code, 1) == -1
        assert mb.circular_autocorrelation_sum(code, n - 1) == -1


def test_nonprimitive_taps_rejected():
    with pytest.raises(RuntimeError, match="period"):
        mb.generate_mls(mb.LfsrSpec(4, [4, 2]), 50.0)


def test_waveform_and_spectrum():
    code = mb.generate_mls(mb.LfsrSpec.standard(4), 50.0)
    w = mb.code_waveform(code, 800.0)
    assert len(w) == 240
    spectrum = mb.code_dft(code, 1.0 / 800.0)
    energy = sum(abs(c) ** 2 for c in spectrum.coefficients) / len(w)
    assert energy == pytest.approx(len(w), rel=1e-9)
    assert mb.psd_envelope(0.0, 50.0) == pytest.approx(1.0 / 50.0)
    assert mb.psd_envelope(50.0, 50.0) == pytest.approx(0.0, abs=1e-15)


def test_sensor_model():
    model = mb.default_model()
    assert model.dc_sensitivity_per_g == pytest.approx(1.0, rel=1e-9)
    dc = abs(mb.frequency_response(model, 0.0))
    at_bw = abs(mb.frequency_response(model, 1300.0))
    assert at_bw / dc == pytest.approx(1.0 / math.sqrt(2.0), rel=0.01)


def test_rejection_values():
    assert mb.rejection_db(mb.sp_rms(63)) == pytest.approx(18.0, abs=0.5)
    assert mb.required_rejection(15.0, 0.05, 0.02) == pytest.approx(83.5, abs=0.1)
    sp14 = 10 ** (-14 / 20)
    assert mb.correlation_model(0.4, sp14) == pytest.approx(0.97, abs=0.005)
    assert mb.k_bound(0.97, sp14) == pytest.approx(0.4, abs=0.01)


def test_worst_case_sp():
    code = mb.generate_mls(mb.LfsrSpec.standard(4), 50.0)
    worst_db = mb.rejection_db(mb.sp_worst_case(code))
    assert abs(worst_db - 6.7) <= 1.5


def test_chain_verdict_roundtrip():
    model = mb.default_model()
    config = mb.ChainConfig()
    sc = mb.SignalChain(model, config)
    code = mb.generate_mls(mb.LfsrSpec.standard(4), 50.0)
    cal = sc.calibrate(code)
    assert cal.cor_ref >= 0.99

    scenario = mb.Scenario()
    scenario.code = code
    out = sc.run(scenario)

    ref = mb.TestReference()
    ref.cov_ref = cal.cov_ref
    ref.cor_ref = cal.cor_ref
    verdict = mb.evaluate(out.capture(), cal.reference, ref, mb.sp_worst_case(code))
    assert verdict.decision == mb.Decision.PASS

    fault = mb.FaultScenario()
    fault.gain = 1.25
    scenario.fault = fault
    out_fault = sc.run(scenario)
    verdict_fault = mb.evaluate(out_fault.capture(), cal.reference, ref, mb.sp_worst_case(code))
    assert verdict_fault.decision == mb.Decision.FAIL
