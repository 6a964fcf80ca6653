// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sac/harness.hpp"

namespace {

std::vector<double> default_snr_grid()
{
    std::vector<double> grid;
    for (int db = -15; db <= 10; ++db)
        grid.push_back(db);
    return grid;
}

double parse_snr_rule(const std::string &rule)
{
    // accepts "16/P" or a bare constant
    const auto slash = rule.find('/');
    const std::string head = slash == std::string::npos ? rule : rule.substr(0, slash);
    return std::stod(head);
}

nlohmann::json report_to_json(const sac::SolverReport &report)
{
    nlohmann::json j;
    j["iterations"] = report.iterations;
    j["converged"] = report.converged;
    j["objective"] = report.objective;
    j["primal_residual"] = report.primal_residual;
    j["dual_residual"] = report.dual_residual;
    j["rank1_ratio"] = report.rank1_ratio;
    j["feasibility_gap"] = report.feasibility_gap;
    nlohmann::json t_re = nlohmann::json::array();
    nlohmann::json t_im = nlohmann::json::array();
    for (const auto &v : report.t_hat) {
        t_re.push_back(v.real());
        t_im.push_back(v.imag());
    }
    j["t_hat_re"] = t_re;
    j["t_hat_im"] = t_im;
    return j;
}

int run_selftest()
{
    // pipeline check with an injected error oracle: Delta = P^-2 must fit
    // a log-log slope of exactly -2
    sac::ExperimentConfig config;
    config.trials = 8;
    const auto fits = sac::run_scaling_sweep(
        config, {4, 6, 8, 10, 12}, 16.0,
        [](sac::GeometryKind, int p, int) { return 1.0 / (static_cast<double>(p) * p); });
    for (const auto &fit : fits)
        if (std::abs(fit.slope + 2.0) > 1e-9) {
            std::cerr << "selftest: injected-oracle slope " << fit.slope << " != -2\n";
            return 1;
        }

    // end-to-end noiseless solve must recover the angle almost exactly
    const auto record = sac::run_single_trial(sac::GeometryKind::nested, 6, 12, 1e12, 7, 0,
                                              sac::EstimatorKind::root_music, {});
    if (record.delta > 1e-4) {
        std::cerr << "selftest: noiseless trial error " << record.delta << "\n";
        return 1;
    }
    std::cout << "selftest: ok\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Sparse-array interpolation by PSD Toeplitz completion"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; CLI flags override");

    std::vector<std::string> geometry_names{"ula", "nested"};
    int sensors = 10;
    int virtual_size = 0;
    int dilation = 3;
    int grid_points = 10001;
    int trials = 200;
    int threads = 0;
    std::uint64_t seed = 0;
    std::string estimator_name = "root-music";
    std::string out_path;
    std::string snr_rule = "16/P";
    std::vector<double> snr_db;
    std::vector<int> sensor_list{4, 6, 8, 10, 12, 14, 16, 18, 20, 22};
    double sin_theta = 0.3;
    sac::SolverOptions solver;

    app.add_option("--geometry", geometry_names, "geometries: ula, nested, dilated")
        ->capture_default_str();
    app.add_option("--sensors", sensors, "number of physical sensors P")->capture_default_str();
    app.add_option("--virtual", virtual_size, "virtual aperture N (0 = nested aperture rule)");
    app.add_option("--dilation", dilation, "dilation factor for dilated ULA curves");
    app.add_option("--grid", grid_points, "beampattern grid points on [0,1]");
    app.add_option("--snr-db", snr_db, "SNR grid in dB (default -15..10, 1 dB steps)");
    app.add_option("--snr-rule", snr_rule, "scaling-sweep SNR rule c/P")->capture_default_str();
    app.add_option("--sensors-list", sensor_list, "P values for the scaling sweep");
    app.add_option("--trials", trials, "Monte Carlo trials per cell")->capture_default_str();
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--estimator", estimator_name, "root-music | beamform | rank1")
        ->capture_default_str();
    app.add_option("--sin-theta", sin_theta, "source sin(theta) for single solves");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--out", out_path, "output path or prefix");
    app.add_option("--max-iters", solver.max_iters, "ADMM iteration cap")->capture_default_str();
    app.add_option("--tol", solver.tol, "relative residual tolerance")->capture_default_str();
    app.add_option("--feas-tol", solver.feas_tol, "feasibility tolerance")->capture_default_str();
    app.add_option("--rank1-thresh", solver.rank1_thresh, "sigma2/sigma1 acceptance threshold")
        ->capture_default_str();

    auto *cmd_beam = app.add_subcommand("beampattern", "emit |H(Delta)| curve CSV");
    auto *cmd_bound = app.add_subcommand("bound", "emit bound curves and delta_max thresholds");
    auto *cmd_solve = app.add_subcommand("solve", "solve one synthesized instance, JSON report");
    auto *cmd_snr = app.add_subcommand("mc-snr", "Monte Carlo error-vs-SNR sweep");
    auto *cmd_scaling = app.add_subcommand("mc-scaling", "Monte Carlo error-vs-P sweep");
    auto *cmd_selftest = app.add_subcommand("selftest", "quick pipeline self-checks");

    for (auto *cmd : {cmd_beam, cmd_bound, cmd_solve, cmd_snr, cmd_scaling, cmd_selftest})
        cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (snr_db.empty())
            snr_db = default_snr_grid();

        sac::ExperimentConfig config;
        config.geometries.clear();
        for (const auto &name : geometry_names)
            config.geometries.push_back(sac::geometry_kind_from_string(name));
        config.sensors = sensors;
        config.virtual_size = virtual_size;
        config.snr_db = snr_db;
        config.trials = trials;
        config.master_seed = seed;
        config.estimator = sac::estimator_kind_from_string(estimator_name);
        config.solver = solver;
        config.threads = threads;

        if (cmd_beam->parsed()) {
            const auto kind = sac::geometry_kind_from_string(geometry_names.front());
            const auto geometry = sac::make_geometry(kind, sensors, dilation);
            const auto curve = sac::compute_bound_curve(geometry, grid_points);
            const std::string csv = sac::bound_curve_csv(curve);
            if (out_path.empty())
                std::cout << csv;
            else
                sac::write_file(out_path, csv);
        } else if (cmd_bound->parsed()) {
            std::vector<sac::SensorSet> geometries;
            for (const auto kind : config.geometries)
                geometries.push_back(sac::make_geometry(kind, sensors, dilation));
            const std::string prefix = out_path.empty() ? "bound" : out_path;
            sac::emit_bound_curves(geometries, snr_db, prefix, grid_points);
        } else if (cmd_solve->parsed()) {
            const auto kind = sac::geometry_kind_from_string(geometry_names.front());
            const auto geometry = sac::make_geometry(kind, sensors, dilation);
            sac::SourceScene scene;
            scene.sin_theta = sin_theta;
            scene.alpha = 1.0;
            scene.epsilon = 1.0 / std::sqrt(std::pow(10.0, snr_db.front() / 10.0));
            sac::Rng rng(seed);
            const auto meas = sac::synthesize(scene, geometry, rng);
            const int n = config.resolve_virtual_size(sensors);
            const auto report = sac::solve_trace_min({meas, n, scene.epsilon}, solver);
            std::cout << report_to_json(report).dump(2) << "\n";
            if (!report.converged)
                return 2;
        } else if (cmd_snr->parsed()) {
            const auto result = sac::run_snr_sweep(config);
            const std::string prefix = out_path.empty() ? "mc_snr" : out_path;
            sac::write_file(prefix + "_trials.csv", sac::trials_csv(result.trials));
            sac::write_file(prefix + "_summary.csv", sac::summary_csv(result.summary));
        } else if (cmd_scaling->parsed()) {
            const auto fits =
                sac::run_scaling_sweep(config, sensor_list, parse_snr_rule(snr_rule));
            const std::string csv = sac::scaling_csv(fits);
            if (out_path.empty())
                std::cout << csv;
            else
                sac::write_file(out_path, csv);
        } else if (cmd_selftest->parsed()) {
            return run_selftest();
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
