// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include "sac/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sac/beampattern.hpp"
#include "sac/linalg.hpp"

namespace sac {

namespace {
constexpr double kPi = std::numbers::pi;

double map_to_half_open(double sin_value)
{
    if (sin_value >= 1.0)
        return sin_value - 2.0;
    if (sin_value < -1.0)
        return sin_value + 2.0;
    return sin_value;
}
} // namespace

std::string to_string(EstimatorKind kind)
{
    switch (kind) {
    case EstimatorKind::root_music: return "root-music";
    case EstimatorKind::beamform: return "beamform";
    case EstimatorKind::rank1: return "rank1";
    }
    return "root-music";
}

EstimatorKind estimator_kind_from_string(const std::string &name)
{
    if (name == "root-music") return EstimatorKind::root_music;
    if (name == "beamform") return EstimatorKind::beamform;
    if (name == "rank1") return EstimatorKind::rank1;
    throw std::invalid_argument("unknown estimator: " + name);
}

EstimateResult root_music(std::span<const cd> t_hat, int num_sources)
{
    const int n = static_cast<int>(t_hat.size());
    if (n < num_sources + 2)
        throw std::invalid_argument("root_music: need N >= K + 2");

    EstimateResult result;
    result.method = EstimatorKind::root_music;

    double scale = 0.0;
    for (const cd &v : t_hat)
        scale = std::max(scale, std::abs(v));
    if (scale < 1e-300) {
        result.degenerate = true;
        return result;
    }

    const auto eig = hermitian_eig(toeplitz_build(t_hat));

    // Noise projector I - sum_s v_s v_s^H; its diagonal sums give the MUSIC
    // polynomial coefficients without forming the N x N projector.
    std::vector<cd> diag_sum(n, cd{0.0, 0.0}); // index k = superdiagonal k
    diag_sum[0] = cd(static_cast<double>(n), 0.0);
    for (int s = 0; s < num_sources; ++s) {
        for (int k = 0; k < n; ++k) {
            cd acc{0.0, 0.0};
            for (int i = 0; i + k < n; ++i)
                acc += eig.vec(i, s) * std::conj(eig.vec(i + k, s));
            if (k == 0)
                diag_sum[0] -= acc;
            else
                diag_sum[k] -= acc;
        }
    }

    // q(z) = z^{N-1} sum_k c_k z^k with c_{-k} = conj(c_k)
    std::vector<cd> coeffs(2 * n - 1);
    for (int k = 0; k < n; ++k) {
        coeffs[(n - 1) + k] = diag_sum[k];
        coeffs[(n - 1) - k] = std::conj(diag_sum[k]);
    }

    const auto roots = poly_roots(coeffs);
    double best = 1e300;
    cd best_root{0.0, 0.0};
    for (const cd &z : roots) {
        const double mod = std::abs(z);
        if (mod > 1.0 + 1e-9)
            continue;
        const double gap = std::abs(1.0 - mod);
        if (gap < best) {
            best = gap;
            best_root = z;
        }
    }
    if (best > 0.2) {
        result.degenerate = true;
        result.diagnostic = best;
        return result;
    }
    result.diagnostic = best;

    // The circle zero is a double root, so the root finder only resolves it
    // to ~sqrt(eps). Polish on the real spectrum f(s) = sum_k c_k e^{j pi k s}
    // with Newton on f'.
    double s = std::arg(best_root) / kPi;
    const auto fd = [&](double sv) {
        double d1 = 0.0, d2 = 0.0;
        for (int k = 1; k < n; ++k) {
            const cd e = diag_sum[k] * std::polar(1.0, kPi * k * sv);
            d1 += -2.0 * kPi * k * e.imag();
            d2 += -2.0 * kPi * kPi * k * k * e.real();
        }
        return std::pair{d1, d2};
    };
    for (int it = 0; it < 40; ++it) {
        const auto [d1, d2] = fd(s);
        if (d2 <= 0.0)
            break;
        const double step = d1 / d2;
        if (std::abs(step) > 0.5 / n)
            break;
        s -= step;
        if (std::abs(step) < 1e-15)
            break;
    }
    result.sin_hat = map_to_half_open(s);
    return result;
}

EstimateResult beamform_grid(std::span<const cd> t_hat, int grid_size)
{
    if (grid_size < 100)
        throw std::invalid_argument("beamform_grid: grid_size must be >= 100");
    const int n = static_cast<int>(t_hat.size());

    EstimateResult result;
    result.method = EstimatorKind::beamform;

    const double step = 2.0 / grid_size;
    std::vector<double> values(grid_size);
    int best = 0;
    for (int g = 0; g < grid_size; ++g) {
        const double s = -1.0 + g * step;
        cd acc{0.0, 0.0};
        for (int i = 0; i < n; ++i)
            acc += t_hat[i] * std::polar(1.0, -kPi * i * s);
        values[g] = std::abs(acc);
        if (values[g] > values[best])
            best = g;
    }
    if (values[best] < 1e-12) {
        result.degenerate = true;
        return result;
    }

    // three-point quadratic refinement around the discrete peak (wrapping)
    const double ym = values[(best - 1 + grid_size) % grid_size];
    const double y0 = values[best];
    const double yp = values[(best + 1) % grid_size];
    double offset = 0.0;
    const double denom = ym - 2.0 * y0 + yp;
    if (std::abs(denom) > 1e-300)
        offset = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);

    result.diagnostic = y0;
    result.sin_hat = map_to_half_open(-1.0 + (best + offset) * step);
    return result;
}

double angular_error(const EstimateResult &est, const SourceScene &truth)
{
    return wrap_distance(est.sin_hat, truth.sin_theta);
}

} // namespace sac
