// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sac/beampattern.hpp"
#include "sac/completion.hpp"
#include "sac/estimation.hpp"
#include "sac/geometry.hpp"

namespace sac {

struct ExperimentConfig {
    std::vector<GeometryKind> geometries{GeometryKind::ula, GeometryKind::nested};
    int sensors = 10;
    int virtual_size = 0; // 0 -> nested-aperture rule N = M^2 + M
    std::vector<double> snr_db;
    int trials = 200;
    std::uint64_t master_seed = 0;
    EstimatorKind estimator = EstimatorKind::root_music;
    SolverOptions solver;
    int threads = 0; // 0 -> hardware concurrency

    /// Virtual aperture actually used for sensor count P.
    int resolve_virtual_size(int sensors_p) const;
};

struct TrialRecord {
    std::string geometry;
    int sensors = 0;
    int virtual_size = 0;
    double snr_db = 0.0;
    std::uint64_t stream = 0;
    double sin_true = 0.0;
    double sin_hat = 0.0;
    double delta = 0.0;
    int iterations = 0;
    double rank1_ratio = 0.0;
    double feasibility_gap = 0.0;
    bool prop1_holds = false;
    bool solver_ok = false;
};

struct SummaryRow {
    std::string geometry;
    double snr_db = 0.0;
    double max_delta = 0.0;
    double median_delta = 0.0;
    int failures = 0;
};

struct SnrSweepResult {
    std::vector<TrialRecord> trials;
    std::vector<SummaryRow> summary;
};

struct ScalingFit {
    GeometryKind kind;
    std::vector<int> sensor_counts;
    std::vector<double> max_delta;
    double slope = 0.0;
    double intercept = 0.0;
};

/// Swap-in for the solve+estimate pipeline, used by the self test.
using DeltaOracle = std::function<double(GeometryKind, int sensors, int trial)>;

TrialRecord run_single_trial(GeometryKind kind, int sensors, int virtual_size, double snr,
                             std::uint64_t master_seed, std::uint64_t stream,
                             EstimatorKind estimator, const SolverOptions &opts);

/// geometry x SNR x trial sweep; deterministic for a fixed master seed
/// regardless of worker count.
SnrSweepResult run_snr_sweep(const ExperimentConfig &config);

/// Worst-case error vs P at SNR rho = snr_scale / P (linear), plus the
/// log-log least-squares fit per geometry.
std::vector<ScalingFit> run_scaling_sweep(const ExperimentConfig &config,
                                          const std::vector<int> &sensor_list,
                                          double snr_scale,
                                          const DeltaOracle &injected = {});

/// 17-significant-digit float formatting shared by all CSV emitters.
std::string format_double(double value);

std::string trials_csv(const std::vector<TrialRecord> &trials);
std::string summary_csv(const std::vector<SummaryRow> &rows);
std::string bound_curve_csv(const BoundCurve &curve);
std::string scaling_csv(const std::vector<ScalingFit> &fits);

/// Write beampattern curves plus per-SNR delta_max thresholds; one curve CSV
/// per geometry under `prefix` and a shared thresholds CSV.
void emit_bound_curves(const std::vector<SensorSet> &geometries,
                       const std::vector<double> &snr_list, const std::string &prefix,
                       int grid_points = 10001);

void write_file(const std::string &path, const std::string &content);

} // namespace sac
