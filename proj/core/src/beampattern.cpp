// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include "sac/beampattern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sac {

namespace {
constexpr double kPi = std::numbers::pi;
}

double beampattern_mag(const SensorSet &geometry, double delta)
{
    cd sum{0.0, 0.0};
    for (int d : geometry.positions)
        sum += std::polar(1.0, kPi * d * delta);
    return std::abs(sum);
}

double ula_closed_form(int m, double delta)
{
    if (m < 1)
        throw std::invalid_argument("ula_closed_form: m must be >= 1");
    const double den = std::sin(kPi * delta / 2.0);
    if (std::abs(den) < 1e-14)
        return static_cast<double>(m);
    return std::abs(std::sin(kPi * m * delta / 2.0) / den);
}

double wrap_distance(double sin_hat, double sin_true)
{
    double diff = std::fmod(sin_hat - sin_true, 2.0);
    if (diff < -1.0)
        diff += 2.0;
    else if (diff > 1.0)
        diff -= 2.0;
    return std::abs(diff);
}

double sigma2(const SensorSet &geometry, double sin_true, double sin_hat)
{
    const double sensors = geometry.size();
    const double mag = beampattern_mag(geometry, sin_hat - sin_true);
    return std::sqrt(std::max(0.0, sensors - mag));
}

BoundCurve compute_bound_curve(const SensorSet &geometry, int points)
{
    if (points < 2)
        throw std::invalid_argument("bound curve needs at least 2 grid points");
    BoundCurve curve;
    curve.geometry = geometry;
    curve.delta_grid.resize(points);
    curve.magnitude.resize(points);
    curve.normalized.resize(points);
    const double sensors = geometry.size();
    const double step = 1.0 / (points - 1);
    for (int k = 0; k < points; ++k) {
        const double delta = k * step;
        curve.delta_grid[k] = delta;
        curve.magnitude[k] = beampattern_mag(geometry, delta);
        curve.normalized[k] = curve.magnitude[k] / sensors;
    }
    return curve;
}

ErrorBound invert_bound(const BoundCurve &curve, double snr)
{
    if (curve.delta_grid.empty())
        throw std::invalid_argument("invert_bound: empty grid");

    ErrorBound bound;
    bound.snr = snr;
    bound.threshold = 1.0 - 4.0 / (curve.geometry.size() * snr);
    if (bound.threshold <= 0.0) {
        bound.delta_max = 1.0;
        return bound;
    }

    std::size_t last = 0;
    for (std::size_t k = 0; k < curve.delta_grid.size(); ++k)
        if (curve.normalized[k] >= bound.threshold)
            last = k;

    bound.delta_max = curve.delta_grid[last];
    if (last + 1 < curve.delta_grid.size()) {
        // bisect the downcrossing inside the last qualifying interval
        const double sensors = curve.geometry.size();
        double lo = curve.delta_grid[last];
        double hi = curve.delta_grid[last + 1];
        for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (beampattern_mag(curve.geometry, mid) / sensors >= bound.threshold)
                lo = mid;
            else
                hi = mid;
        }
        bound.delta_max = lo;
    }
    return bound;
}

double theorem1_bound(GeometryKind kind, int sensors)
{
    if (sensors < 4 || sensors % 2 != 0)
        throw std::invalid_argument("theorem1_bound: P must be even and >= 4");
    switch (kind) {
    case GeometryKind::ula:
        return 1.2 / sensors;
    case GeometryKind::nested:
        return 8.0 / (static_cast<double>(sensors) * sensors);
    default:
        throw std::invalid_argument("theorem1_bound: only ula and nested are covered");
    }
}

SidelobeReport nested_sidelobe_check(int m, const std::vector<double> &delta_grid)
{
    if (m < 2)
        throw std::invalid_argument("nested_sidelobe_check: M must be >= 2");

    const auto nested = make_geometry(GeometryKind::nested, 2 * m);
    const auto ula_m = make_geometry(GeometryKind::ula, m);
    const auto ula_m1 = make_geometry(GeometryKind::ula, m + 1);
    const double sensors = 2.0 * m;
    const double sidelobe_start = 2.0 / (static_cast<double>(m + 1) * m);

    // |H_{U_1}| is identically 1; make_geometry does not build 1-sensor sets
    std::optional<SensorSet> ula_m2;
    if (m > 2)
        ula_m2 = make_geometry(GeometryKind::ula, m - 1);
    const auto hu_m_minus_1 = [&](double x) {
        return ula_m2 ? beampattern_mag(*ula_m2, x) : 1.0;
    };

    SidelobeReport report;
    report.max_ratio = 0.0;
    report.split1_margin = -1e300;
    report.split2_margin = -1e300;
    for (double delta : delta_grid) {
        const double mag = beampattern_mag(nested, delta);

        const double ub1 = beampattern_mag(ula_m, delta) + beampattern_mag(ula_m, (m + 1) * delta);
        report.split1_margin = std::max(report.split1_margin, mag - ub1);
        const double ub2 = beampattern_mag(ula_m1, delta) + hu_m_minus_1((m + 1) * delta);
        report.split2_margin = std::max(report.split2_margin, mag - ub2);

        if (delta < sidelobe_start)
            continue;
        const double ratio = mag / sensors;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.worst_delta = delta;
        }
    }
    report.below_ceiling = report.max_ratio < 0.84;
    return report;
}

} // namespace sac
