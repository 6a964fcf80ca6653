// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#pragma once

#include <optional>
#include <vector>

#include "sac/geometry.hpp"

namespace sac {

/// PSD Toeplitz completion instance: observed snapshot, virtual aperture N,
/// and the data-fidelity radius epsilon.
struct CompletionProblem {
    Measurement measurement;
    int virtual_size = 0;
    double epsilon = 0.0;
};

struct SolverOptions {
    int max_iters = 20000;
    double tol = 1e-7;        // relative primal/dual residual tolerance
    double feas_tol = 1e-6;
    double rank1_thresh = 1e-2;
    double rho_init = 1.0;    // ADMM penalty, self-tuned by residual balancing
    int verbose_every = 0;    // > 0: print residuals every k iterations
};

struct SolverReport {
    std::vector<cd> t_hat;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double objective = 0.0;       // trace of T(t_hat) = N * t0
    double rank1_ratio = 1.0;     // lambda2 / lambda1 of T(t_hat)
    double feasibility_gap = 0.0; // max(0, ||y - t_D|| - epsilon)
    bool converged = false;
};

struct AngleAmplitude {
    double sin_hat = 0.0;
    double alpha_hat = 0.0;
};

/// Minimize trace T(t) subject to ||y - t_D||_2 <= epsilon and T(t) PSD,
/// by three-block ADMM with exact closed-form substeps.
SolverReport solve_trace_min(const CompletionProblem &problem, const SolverOptions &opts = {});

/// Read (sin_hat, alpha_hat) off the principal eigenpair of T(t_hat).
/// Rejected (nullopt) when rank1_ratio exceeds the threshold.
std::optional<AngleAmplitude> extract_rank1(const SolverReport &report,
                                            double rank1_thresh = 1e-2);

/// True iff alpha > 2 epsilon / sqrt(P), the regime where rank-1 solutions
/// are guaranteed.
bool check_prop1_hypothesis(const SourceScene &scene, int sensors);

} // namespace sac
