// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlsbist/mls.hpp"
#include "mlsbist/rejection.hpp"
#include "mlsbist/sensor.hpp"
#include "mlsbist/signalchain.hpp"
#include "mlsbist/testengine.hpp"

namespace py = pybind11;
using namespace mlsbist;

namespace {

std::vector<double> to_vec(const py::sequence& seq) {
  std::vector<double> out;
  out.reserve(py::len(seq));
  for (const auto& v : seq) out.push_back(v.cast<double>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Online sensor self-test simulation: MLS-encoded stimulus superposition";

  // --- mls ---
  py::class_<mls::LfsrSpec>(m, "LfsrSpec")
      .def(py::init<>())
      .def(py::init([](int order, std::vector<int> taps, std::uint32_t seed) {
             mls::LfsrSpec spec{order, std::move(taps), seed};
             spec.validate();
             return spec;
           }),
           py::arg("order"), py::arg("taps"), py::arg("seed") = 1)
      .def_static("standard", &mls::LfsrSpec::standard, py::arg("order"), py::arg("seed") = 1)
      .def_readwrite("order", &mls::LfsrSpec::order)
      .def_readwrite("taps", &mls::LfsrSpec::taps)
      .def_readwrite("seed", &mls::LfsrSpec::seed);

  py::class_<mls::CodeSequence>(m, "CodeSequence")
      .def(py::init<>())
      .def_readwrite("chips", &mls::CodeSequence::chips)
      .def_readwrite("chip_rate_hz", &mls::CodeSequence::chip_rate_hz)
      .def_readonly("spec", &mls::CodeSequence::spec)
      .def_property_readonly("n_bits", &mls::CodeSequence::n_bits)
      .def_property_readonly("duration_s", &mls::CodeSequence::duration_s);

  py::class_<mls::CodeSpectrum>(m, "CodeSpectrum")
      .def_readonly("coefficients", &mls::CodeSpectrum::coefficients)
      .def_readonly("sample_interval_s", &mls::CodeSpectrum::sample_interval_s)
      .def_readonly("psd", &mls::CodeSpectrum::psd);

  m.def("generate_mls", &mls::generate_mls, py::arg("spec"), py::arg("chip_rate_hz") = 100.0);
  m.def("code_waveform", &mls::code_waveform, py::arg("code"), py::arg("sample_rate_hz"));
  m.def("code_dft", &mls::code_dft, py::arg("code"), py::arg("tau_s"));
  m.def("psd_envelope", &mls::psd_envelope, py::arg("f_hz"), py::arg("f_clock_hz"));
  m.def("flat_band_coefficient", &mls::flat_band_coefficient, py::arg("code"), py::arg("tau_s"));
  m.def("circular_autocorrelation_sum", &mls::circular_autocorrelation_sum, py::arg("code"),
        py::arg("lag"));

  // --- sensor ---
  py::class_<sensor::SensorModel>(m, "SensorModel")
      .def(py::init<>())
      .def_readwrite("mass_kg", &sensor::SensorModel::mass_kg)
      .def_readwrite("damping", &sensor::SensorModel::damping)
      .def_readwrite("stiffness", &sensor::SensorModel::stiffness)
      .def_readwrite("amp_gain", &sensor::SensorModel::amp_gain)
      .def_readwrite("cap_coeff", &sensor::SensorModel::cap_coeff)
      .def_property_readonly("natural_frequency_hz", &sensor::SensorModel::natural_frequency_hz)
      .def_property_readonly("dc_sensitivity_per_g", &sensor::SensorModel::dc_sensitivity_per_g);

  py::class_<sensor::FaultScenario>(m, "FaultScenario")
      .def(py::init<>())
      .def_readwrite("mass", &sensor::FaultScenario::mass)
      .def_readwrite("damping", &sensor::FaultScenario::damping)
      .def_readwrite("stiffness", &sensor::FaultScenario::stiffness)
      .def_readwrite("gain", &sensor::FaultScenario::gain)
      .def_readwrite("cap", &sensor::FaultScenario::cap);

  m.def("default_model", &sensor::default_model);
  m.def("make_critically_damped", &sensor::make_critically_damped, py::arg("mass_kg"),
        py::arg("stiffness"), py::arg("amp_gain"), py::arg("cap_coeff"));
  m.def("frequency_response", &sensor::frequency_response, py::arg("model"), py::arg("f_hz"));
  m.def(
      "simulate",
      [](const sensor::SensorModel& model, const py::sequence& accel, double rate,
         const sensor::FaultScenario& fault) {
        return sensor::simulate(model, to_vec(accel), rate, fault);
      },
      py::arg("model"), py::arg("acceleration_g"), py::arg("sample_rate_hz"),
      py::arg("fault") = sensor::FaultScenario{});

  // --- signal chain ---
  py::enum_<chain::CarrierShape>(m, "CarrierShape")
      .value("SINE", chain::CarrierShape::kSine)
      .value("SQUARE", chain::CarrierShape::kSquare);

  py::class_<chain::FilterSpec>(m, "FilterSpec")
      .def(py::init<>())
      .def_readwrite("order", &chain::FilterSpec::order)
      .def_readwrite("cutoff_hz", &chain::FilterSpec::cutoff_hz);

  py::class_<chain::ChainConfig>(m, "ChainConfig")
      .def(py::init<>())
      .def_readwrite("carrier_freq_hz", &chain::ChainConfig::carrier_freq_hz)
      .def_readwrite("carrier_shape", &chain::ChainConfig::carrier_shape)
      .def_readwrite("lp2_cutoff_hz", &chain::ChainConfig::lp2_cutoff_hz)
      .def_readwrite("operational_filter", &chain::ChainConfig::operational_filter)
      .def_readwrite("test_filter", &chain::ChainConfig::test_filter)
      .def_readwrite("demod_filter", &chain::ChainConfig::demod_filter)
      .def_readwrite("demod_phase_error_rad", &chain::ChainConfig::demod_phase_error_rad)
      .def_readwrite("internal_rate_hz", &chain::ChainConfig::internal_rate_hz)
      .def_readwrite("output_rate_hz", &chain::ChainConfig::output_rate_hz)
      .def_readwrite("stimulus_amplitude_g", &chain::ChainConfig::stimulus_amplitude_g)
      .def_readwrite("physical_bandwidth_hz", &chain::ChainConfig::physical_bandwidth_hz)
      .def_readwrite("lead_in_sequences", &chain::ChainConfig::lead_in_sequences);

  py::class_<chain::SineComponent>(m, "SineComponent")
      .def(py::init<>())
      .def(py::init([](double amp, double freq, double phase) {
             return chain::SineComponent{amp, freq, phase};
           }),
           py::arg("amplitude_g"), py::arg("freq_hz"), py::arg("phase_rad") = 0.0)
      .def_readwrite("amplitude_g", &chain::SineComponent::amplitude_g)
      .def_readwrite("freq_hz", &chain::SineComponent::freq_hz)
      .def_readwrite("phase_rad", &chain::SineComponent::phase_rad);

  py::class_<chain::Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("code", &chain::Scenario::code)
      .def_readwrite("measurand", &chain::Scenario::measurand)
      .def_readwrite("perturbation", &chain::Scenario::perturbation)
      .def_readwrite("fault", &chain::Scenario::fault)
      .def_readwrite("stimulus_enabled", &chain::Scenario::stimulus_enabled)
      .def_readwrite("noise_rms_g", &chain::Scenario::noise_rms_g)
      .def_readwrite("noise_seed", &chain::Scenario::noise_seed);

  py::class_<chain::ChainOutputs>(m, "ChainOutputs")
      .def_readonly("v_out", &chain::ChainOutputs::v_out)
      .def_readonly("v_demod", &chain::ChainOutputs::v_demod)
      .def_readonly("internal_rate_hz", &chain::ChainOutputs::internal_rate_hz)
      .def_readonly("output_rate_hz", &chain::ChainOutputs::output_rate_hz)
      .def_readonly("capture_begin", &chain::ChainOutputs::capture_begin)
      .def_readonly("capture_length", &chain::ChainOutputs::capture_length)
      .def("capture", [](const chain::ChainOutputs& o) {
        return std::vector<double>(o.capture().begin(), o.capture().end());
      });

  py::class_<chain::ChainCalibration>(m, "ChainCalibration")
      .def_readonly("reference", &chain::ChainCalibration::reference)
      .def_readonly("cov_ref", &chain::ChainCalibration::cov_ref)
      .def_readonly("cor_ref", &chain::ChainCalibration::cor_ref)
      .def_readonly("lag", &chain::ChainCalibration::lag)
      .def_readonly("demod_rms", &chain::ChainCalibration::demod_rms);

  py::class_<chain::SignalChain>(m, "SignalChain")
      .def(py::init<sensor::SensorModel, chain::ChainConfig>(), py::arg("model"),
           py::arg("config"))
      .def("run", &chain::SignalChain::run, py::arg("scenario"))
      .def("calibrate", &chain::SignalChain::calibrate, py::arg("code"))
      .def_property_readonly("demod_carrier_phase_rad",
                             &chain::SignalChain::demod_carrier_phase_rad);

  // --- test engine ---
  py::enum_<engine::Decision>(m, "Decision")
      .value("PASS", engine::Decision::kPass)
      .value("FAIL", engine::Decision::kFail)
      .value("NO_DECISION", engine::Decision::kNoDecision);

  py::class_<engine::TestReference>(m, "TestReference")
      .def(py::init<>())
      .def_readwrite("cov_ref", &engine::TestReference::cov_ref)
      .def_readwrite("cor_ref", &engine::TestReference::cor_ref)
      .def_readwrite("cov_tolerance", &engine::TestReference::cov_tolerance)
      .def_readwrite("cor_threshold_fraction", &engine::TestReference::cor_threshold_fraction);

  py::class_<engine::TestVerdict>(m, "TestVerdict")
      .def_readonly("cov", &engine::TestVerdict::cov)
      .def_readonly("cor", &engine::TestVerdict::cor)
      .def_readonly("decision", &engine::TestVerdict::decision)
      .def_readonly("k_bound", &engine::TestVerdict::k_bound);

  m.def("mean", [](const py::sequence& x) { return engine::mean(to_vec(x)); });
  m.def("covariance", [](const py::sequence& x, const py::sequence& y) {
    return engine::covariance(to_vec(x), to_vec(y));
  });
  m.def("correlation", [](const py::sequence& x, const py::sequence& y) {
    return engine::correlation(to_vec(x), to_vec(y));
  });
  m.def("correlation_model", &engine::correlation_model, py::arg("k"), py::arg("eps"));
  m.def("k_bound", &engine::k_bound, py::arg("cor_threshold"), py::arg("sp_worst"));
  m.def("accuracy_bound", &engine::accuracy_bound, py::arg("k_bound"), py::arg("sp_worst"));
  m.def(
      "evaluate",
      [](const py::sequence& v_dem, const py::sequence& reference,
         const engine::TestReference& ref, double sp_worst) {
        return engine::evaluate(to_vec(v_dem), to_vec(reference), ref, sp_worst);
      },
      py::arg("v_dem"), py::arg("code_reference"), py::arg("reference"), py::arg("sp_worst"));

  // --- rejection ---
  py::class_<rejection::RejectionCurve>(m, "RejectionCurve")
      .def_readonly("freqs_hz", &rejection::RejectionCurve::freqs_hz)
      .def_readonly("sp_exact", &rejection::RejectionCurve::sp_exact)
      .def_readonly("sp_fft", &rejection::RejectionCurve::sp_fft)
      .def_readonly("n_bits", &rejection::RejectionCurve::n_bits)
      .def_readonly("chip_rate_hz", &rejection::RejectionCurve::chip_rate_hz);

  py::class_<rejection::EndToEndResult>(m, "EndToEndResult")
      .def_readonly("sp", &rejection::EndToEndResult::sp)
      .def_readonly("k_dem", &rejection::EndToEndResult::k_dem)
      .def_readonly("max_rel_err", &rejection::EndToEndResult::max_rel_err);

  m.def(
      "sp_exact",
      [](const py::sequence& w, double tau_s, double f, double phi) {
        return rejection::sp_exact(to_vec(w), tau_s, f, phi);
      },
      py::arg("waveform"), py::arg("tau_s"), py::arg("f_hz"), py::arg("phi_rad"));
  m.def(
      "sp_max_exact",
      [](const py::sequence& w, double tau_s, double f) {
        return rejection::sp_max_exact(to_vec(w), tau_s, f);
      },
      py::arg("waveform"), py::arg("tau_s"), py::arg("f_hz"));
  m.def("sp_max_fft", &rejection::sp_max_fft, py::arg("spectrum"), py::arg("f_hz"));
  m.def("sp_rms", &rejection::sp_rms, py::arg("n_bits"));
  m.def("sp_rms_flat_band", &rejection::sp_rms_flat_band, py::arg("spectrum"),
        py::arg("chip_rate_hz"));
  m.def("rejection_db", &rejection::rejection_db, py::arg("sp"));
  m.def("default_sweep_grid", &rejection::default_sweep_grid, py::arg("code"),
        py::arg("tau_s") = rejection::kDefaultSampleInterval);
  m.def(
      "sweep",
      [](const mls::CodeSequence& code, const py::sequence& freqs, double tau_s) {
        return rejection::sweep(code, to_vec(freqs), tau_s);
      },
      py::arg("code"), py::arg("freqs_hz"), py::arg("tau_s") = rejection::kDefaultSampleInterval);
  m.def("sp_worst_case", &rejection::sp_worst_case, py::arg("code"),
        py::arg("tau_s") = rejection::kDefaultSampleInterval);
  m.def("required_rejection", &rejection::required_rejection, py::arg("max_perturbation_g"),
        py::arg("test_amplitude_g"), py::arg("resolution_fraction"));
  m.def("end_to_end_sp", &rejection::end_to_end_sp, py::arg("model"), py::arg("config"),
        py::arg("code"), py::arg("k"), py::arg("downshift_hz"), py::arg("n_phases") = 12);
  m.def("unencoded_baseline_sp", &rejection::unencoded_baseline_sp, py::arg("model"),
        py::arg("config"), py::arg("chip_rate_hz"), py::arg("perturbation_freq_hz"), py::arg("k"),
        py::arg("n_phases") = 8);

  m.attr("__version__") = "0.1.0";
}
