// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#pragma once

#include <optional>
#include <vector>

#include "sac/geometry.hpp"

namespace sac {

/// |H(Delta)| of a geometry sampled on an increasing Delta grid in [0,1],
/// plus the same curve normalized by P.
struct BoundCurve {
    SensorSet geometry;
    std::vector<double> delta_grid;
    std::vector<double> magnitude;
    std::vector<double> normalized;
};

/// Result of inverting the necessary condition (1/P)|H(Delta)| >= 1 - 4/(P rho):
/// the largest grid Delta still satisfying it.
struct ErrorBound {
    double snr = 0.0;
    double threshold = 0.0;
    double delta_max = 1.0;
    std::optional<double> analytic;
};

struct SidelobeReport {
    bool below_ceiling = false;   // |H_S(Delta)| < 0.84 P on the whole grid
    double max_ratio = 0.0;       // max |H_S| / P over the grid
    double worst_delta = 0.0;
    double split1_margin = 0.0;   // max of |H_S| - (|H_UM| + |H_UM((M+1)D)|), <= 0 expected
    double split2_margin = 0.0;   // same for the U_{M+1} / U_{M-1} split
};

/// |sum_d e^{j pi d Delta}| by direct complex summation.
double beampattern_mag(const SensorSet &geometry, double delta);

/// Dirichlet-kernel form |sin(pi m Delta / 2) / sin(pi Delta / 2)| for U_m.
double ula_closed_form(int m, double delta);

/// min_k |sin_hat - sin_true + 2k|, the wrap-around angular error in [0,1].
double wrap_distance(double sin_hat, double sin_true);

/// Second singular value of [a(theta), a(theta_hat)]: sqrt(P - |H(w)|).
double sigma2(const SensorSet &geometry, double sin_true, double sin_hat);

/// Sample |H| on a uniform grid of `points` samples covering [0,1].
BoundCurve compute_bound_curve(const SensorSet &geometry, int points = 10001);

/// Largest Delta on the curve's grid with normalized |H| above 1 - 4/(P rho),
/// refined by bisection inside the last qualifying interval. Nonpositive
/// thresholds give the vacuous bound delta_max = 1.
ErrorBound invert_bound(const BoundCurve &curve, double snr);

/// Closed-form worst-case error bound at rho >= 25/P: 1.2/P for the ULA,
/// 8/P^2 for the nested array.
double theorem1_bound(GeometryKind kind, int sensors);

/// Grid check that the nested beampattern stays below 0.84 P outside the main
/// lobe, including both disjoint-split triangle inequalities.
SidelobeReport nested_sidelobe_check(int m, const std::vector<double> &delta_grid);

} // namespace sac
