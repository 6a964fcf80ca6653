// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#pragma once

#include <span>
#include <string>

#include "sac/geometry.hpp"

namespace sac {

enum class EstimatorKind { root_music, beamform, rank1 };

std::string to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from_string(const std::string &name);

struct EstimateResult {
    double sin_hat = 0.0;
    EstimatorKind method = EstimatorKind::root_music;
    double diagnostic = 0.0; // |1 - |z|| of the picked root, or the grid peak
    bool degenerate = false;
};

/// Root-MUSIC on T(t_hat): noise-subspace polynomial of degree 2(N-1),
/// sources read off the roots closest to the unit circle from inside.
EstimateResult root_music(std::span<const cd> t_hat, int num_sources = 1);

/// Grid search of |a(theta)^H t_hat| over sin(theta) with one quadratic
/// refinement step; serves as an estimator-independent cross-check.
EstimateResult beamform_grid(std::span<const cd> t_hat, int grid_size = 4096);

/// Wrap-around angular error of an estimate against the ground truth.
double angular_error(const EstimateResult &est, const SourceScene &truth);

} // namespace sac
