// Copyright 2026 mlsbist contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "mlsbist/scenario.hpp"

namespace mlsbist::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitNoDecision = 2;
inline constexpr int kExitUsageError = 3;
inline constexpr int kExitConfigError = 4;

/// Runs chain + engine for run.sequences sequences (lengthening the code
/// after NoDecision when run.adaptive is on), writes verdicts.csv with
/// columns sequence_id,order,cov,cor,decision,k_bound, and returns the exit
/// code of the last verdict: 0 Pass, 1 Fail, 2 NoDecision.
int cmd_selftest(const config::ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// Emits the data for one of the figure analogs (fig2, fig4, fig5, fig6,
/// fig7) as CSV into out_dir. Returns 0, or throws on unknown name.
int cmd_figure(const std::string& name, const config::ScenarioConfig& cfg,
               const std::filesystem::path& out_dir);

/// Monte-Carlo sweep over perturbation frequency and phase. Writes
/// montecarlo_trials.csv and montecarlo_summary.csv; deterministic per seed.
int cmd_montecarlo(const config::ScenarioConfig& cfg, int trials,
                   const std::filesystem::path& out_dir);

/// Rejection curve of the configured code over the default grid; writes
/// sweep.csv with columns f_hz,sp_exact,sp_exact_db,sp_fft,sp_fft_db.
int cmd_sweep(const config::ScenarioConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace mlsbist::cli
