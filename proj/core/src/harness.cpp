// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include "sac/harness.hpp"

#include "sac/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sac {

namespace {

double snr_db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::uint64_t stream_id(std::size_t geom, std::size_t snr, std::size_t trial)
{
    return (static_cast<std::uint64_t>(geom) * 1000003ULL + snr) * 1000003ULL + trial;
}

/// Run `count` tasks on a small pool; task(i) must only touch slot i.
void parallel_for(int count, int threads, const std::function<void(int)> &task)
{
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, count);
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                task(i);
        });
    for (auto &th : pool)
        th.join();
}

double median_of(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

int ExperimentConfig::resolve_virtual_size(int sensors_p) const
{
    if (virtual_size > 0)
        return virtual_size;
    const int m = sensors_p / 2;
    return m * m + m; // nested aperture + 1; the ULA is extrapolated to match
}

TrialRecord run_single_trial(GeometryKind kind, int sensors, int virtual_size, double snr,
                             std::uint64_t master_seed, std::uint64_t stream,
                             EstimatorKind estimator, const SolverOptions &opts)
{
    Rng rng(master_seed, stream);

    SourceScene scene;
    scene.sin_theta = rng.uniform_sym();
    scene.alpha = 1.0;
    scene.epsilon = scene.alpha / std::sqrt(snr);

    const SensorSet geometry = make_geometry(kind, sensors);
    const Measurement meas = synthesize(scene, geometry, rng);

    CompletionProblem problem{meas, virtual_size, scene.epsilon};
    const SolverReport report = solve_trace_min(problem, opts);

    TrialRecord record;
    record.geometry = geometry.label;
    record.sensors = sensors;
    record.virtual_size = virtual_size;
    record.snr_db = 10.0 * std::log10(snr);
    record.stream = stream;
    record.sin_true = scene.sin_theta;
    record.iterations = report.iterations;
    record.rank1_ratio = report.rank1_ratio;
    record.feasibility_gap = report.feasibility_gap;
    record.prop1_holds = check_prop1_hypothesis(scene, sensors);
    record.solver_ok = report.converged;

    bool degenerate = false;
    switch (estimator) {
    case EstimatorKind::root_music: {
        const auto est = root_music(report.t_hat);
        degenerate = est.degenerate;
        record.sin_hat = est.sin_hat;
        break;
    }
    case EstimatorKind::beamform: {
        const auto est = beamform_grid(report.t_hat);
        degenerate = est.degenerate;
        record.sin_hat = est.sin_hat;
        break;
    }
    case EstimatorKind::rank1: {
        const auto est = extract_rank1(report, opts.rank1_thresh);
        if (est)
            record.sin_hat = est->sin_hat;
        else
            degenerate = true;
        break;
    }
    }

    // degenerate estimates count as worst case so maxima stay conservative
    record.delta = degenerate ? 1.0 : wrap_distance(record.sin_hat, record.sin_true);
    return record;
}

SnrSweepResult run_snr_sweep(const ExperimentConfig &config)
{
    if (config.trials < 1)
        throw std::invalid_argument("run_snr_sweep: trials must be >= 1");
    if (config.snr_db.empty())
        throw std::invalid_argument("run_snr_sweep: SNR list must be nonempty");

    const int virtual_size = config.resolve_virtual_size(config.sensors);

    struct Task {
        std::size_t geom, snr, trial;
    };
    std::vector<Task> tasks;
    for (std::size_t g = 0; g < config.geometries.size(); ++g)
        for (std::size_t s = 0; s < config.snr_db.size(); ++s)
            for (std::size_t t = 0; t < static_cast<std::size_t>(config.trials); ++t)
                tasks.push_back({g, s, t});

    SnrSweepResult result;
    result.trials.resize(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), config.threads, [&](int i) {
        const Task &task = tasks[i];
        result.trials[i] = run_single_trial(
            config.geometries[task.geom], config.sensors, virtual_size,
            snr_db_to_linear(config.snr_db[task.snr]), config.master_seed,
            stream_id(task.geom, task.snr, task.trial), config.estimator, config.solver);
    });

    for (std::size_t g = 0; g < config.geometries.size(); ++g)
        for (std::size_t s = 0; s < config.snr_db.size(); ++s) {
            SummaryRow row;
            row.geometry = to_string(config.geometries[g]);
            row.snr_db = config.snr_db[s];
            std::vector<double> deltas;
            for (std::size_t t = 0; t < static_cast<std::size_t>(config.trials); ++t) {
                const auto &rec =
                    result.trials[(g * config.snr_db.size() + s) * config.trials + t];
                deltas.push_back(rec.delta);
                if (!rec.solver_ok)
                    ++row.failures;
            }
            row.max_delta = *std::max_element(deltas.begin(), deltas.end());
            row.median_delta = median_of(std::move(deltas));
            result.summary.push_back(std::move(row));
        }
    return result;
}

std::vector<ScalingFit> run_scaling_sweep(const ExperimentConfig &config,
                                          const std::vector<int> &sensor_list,
                                          double snr_scale, const DeltaOracle &injected)
{
    if (snr_scale <= 0.0)
        throw std::invalid_argument("run_scaling_sweep: SNR scale must be positive");
    for (int p : sensor_list)
        if (p < 4 || p % 2 != 0)
            throw std::invalid_argument("run_scaling_sweep: sensor counts must be even and >= 4");

    std::vector<ScalingFit> fits;
    for (std::size_t g = 0; g < config.geometries.size(); ++g) {
        ScalingFit fit;
        fit.kind = config.geometries[g];
        fit.sensor_counts = sensor_list;
        fit.max_delta.assign(sensor_list.size(), 0.0);

        for (std::size_t pi = 0; pi < sensor_list.size(); ++pi) {
            const int sensors = sensor_list[pi];
            const int virtual_size = config.resolve_virtual_size(sensors);
            const double snr = snr_scale / sensors;
            std::vector<double> deltas(config.trials);
            parallel_for(config.trials, config.threads, [&](int t) {
                if (injected) {
                    deltas[t] = injected(fit.kind, sensors, t);
                    return;
                }
                deltas[t] = run_single_trial(fit.kind, sensors, virtual_size, snr,
                                             config.master_seed, stream_id(g, pi, t),
                                             config.estimator, config.solver)
                                .delta;
            });
            fit.max_delta[pi] = *std::max_element(deltas.begin(), deltas.end());
        }

        std::vector<double> log_p, log_d;
        for (std::size_t pi = 0; pi < sensor_list.size(); ++pi) {
            log_p.push_back(std::log(static_cast<double>(sensor_list[pi])));
            log_d.push_back(std::log(std::max(fit.max_delta[pi], 1e-300)));
        }
        std::tie(fit.slope, fit.intercept) = linfit(log_p, log_d);
        fits.push_back(std::move(fit));
    }
    return fits;
}

std::string format_double(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string trials_csv(const std::vector<TrialRecord> &trials)
{
    std::ostringstream out;
    out << "geometry,P,N,snr_db,stream,sin_true,sin_hat,delta,iterations,rank1_ratio,"
           "feasibility_gap,prop1_holds,solver_ok\n";
    for (const auto &r : trials)
        out << r.geometry << ',' << r.sensors << ',' << r.virtual_size << ','
            << format_double(r.snr_db) << ',' << r.stream << ',' << format_double(r.sin_true)
            << ',' << format_double(r.sin_hat) << ',' << format_double(r.delta) << ','
            << r.iterations << ',' << format_double(r.rank1_ratio) << ','
            << format_double(r.feasibility_gap) << ',' << (r.prop1_holds ? 1 : 0) << ','
            << (r.solver_ok ? 1 : 0) << '\n';
    return out.str();
}

std::string summary_csv(const std::vector<SummaryRow> &rows)
{
    std::ostringstream out;
    out << "geometry,snr_db,max_delta,median_delta,failures\n";
    for (const auto &r : rows)
        out << r.geometry << ',' << format_double(r.snr_db) << ',' << format_double(r.max_delta)
            << ',' << format_double(r.median_delta) << ',' << r.failures << '\n';
    return out.str();
}

std::string bound_curve_csv(const BoundCurve &curve)
{
    std::ostringstream out;
    out << "delta,mag,normalized\n";
    for (std::size_t k = 0; k < curve.delta_grid.size(); ++k)
        out << format_double(curve.delta_grid[k]) << ',' << format_double(curve.magnitude[k])
            << ',' << format_double(curve.normalized[k]) << '\n';
    return out.str();
}

std::string scaling_csv(const std::vector<ScalingFit> &fits)
{
    std::ostringstream out;
    out << "geometry,P,max_delta,slope,intercept\n";
    for (const auto &fit : fits)
        for (std::size_t pi = 0; pi < fit.sensor_counts.size(); ++pi)
            out << to_string(fit.kind) << ',' << fit.sensor_counts[pi] << ','
                << format_double(fit.max_delta[pi]) << ',' << format_double(fit.slope) << ','
                << format_double(fit.intercept) << '\n';
    return out.str();
}

void emit_bound_curves(const std::vector<SensorSet> &geometries,
                       const std::vector<double> &snr_list, const std::string &prefix,
                       int grid_points)
{
    std::ostringstream thresholds;
    thresholds << "geometry,snr_db,threshold,delta_max\n";
    for (const auto &geometry : geometries) {
        const BoundCurve curve = compute_bound_curve(geometry, grid_points);
        write_file(prefix + "_" + geometry.label + ".csv", bound_curve_csv(curve));
        for (double db : snr_list) {
            const ErrorBound bound = invert_bound(curve, snr_db_to_linear(db));
            thresholds << geometry.label << ',' << format_double(db) << ','
                       << format_double(bound.threshold) << ',' << format_double(bound.delta_max)
                       << '\n';
        }
    }
    write_file(prefix + "_thresholds.csv", thresholds.str());
}

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

} // namespace sac
