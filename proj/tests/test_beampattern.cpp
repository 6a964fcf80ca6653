// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sac/beampattern.hpp"
#include "sac/rng.hpp"

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("beampattern at zero offset equals the sensor count")
{
    for (const auto kind : {sac::GeometryKind::ula, sac::GeometryKind::nested}) {
        const auto g = sac::make_geometry(kind, 10);
        CHECK(sac::beampattern_mag(g, 0.0) == doctest::Approx(10.0).epsilon(1e-14));
    }
}

TEST_CASE("ula beampattern nulls and a known off-null value")
{
    const auto g = sac::make_geometry(sac::GeometryKind::ula, 10);
    CHECK(sac::beampattern_mag(g, 0.2) < 1e-12);
    // |sin(1.5 pi) / sin(0.15 pi)| = 1 / sin(0.15 pi)
    CHECK(sac::beampattern_mag(g, 0.3) ==
          doctest::Approx(1.0 / std::sin(0.15 * kPi)).epsilon(1e-12));
    CHECK(sac::ula_closed_form(5, 0.4) < 1e-12);
}

TEST_CASE("direct summation matches the sine-ratio closed form")
{
    for (int m = 2; m <= 40; ++m) {
        const auto g = sac::make_geometry(sac::GeometryKind::ula, m);
        double worst = 0.0;
        for (int k = 0; k <= 2000; ++k) {
            const double delta = static_cast<double>(k) / 2000.0;
            worst = std::max(worst, std::abs(sac::beampattern_mag(g, delta) -
                                             sac::ula_closed_form(m, delta)));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("closed form respects the min(m, 1/delta) envelope")
{
    for (int m : {3, 8, 15}) {
        for (int k = 1; k <= 500; ++k) {
            const double delta = static_cast<double>(k) / 500.0;
            CHECK(sac::ula_closed_form(m, delta) <=
                  std::min(static_cast<double>(m), 1.0 / delta) + 1e-12);
        }
    }
}

TEST_CASE("beampattern magnitude is symmetric about delta = 1")
{
    const auto g = sac::make_geometry(sac::GeometryKind::nested, 8);
    for (int k = 0; k <= 200; ++k) {
        const double delta = static_cast<double>(k) / 200.0;
        CHECK(sac::beampattern_mag(g, delta) ==
              doctest::Approx(sac::beampattern_mag(g, 2.0 - delta)).epsilon(1e-10));
    }
}

TEST_CASE("dilated ula beampattern is the folded undilated pattern")
{
    const int p = 10, dilation = 3;
    const auto g = sac::make_geometry(sac::GeometryKind::dilated, p, dilation);
    for (int k = 0; k <= 400; ++k) {
        const double delta = static_cast<double>(k) / 400.0;
        double folded = std::fmod(dilation * delta, 2.0);
        if (folded > 1.0)
            folded = 2.0 - folded;
        CHECK(sac::beampattern_mag(g, delta) ==
              doctest::Approx(sac::ula_closed_form(p, folded)).epsilon(1e-10));
    }
}

TEST_CASE("wrap distance table")
{
    CHECK(sac::wrap_distance(0.37, 0.37) == doctest::Approx(0.0));
    CHECK(sac::wrap_distance(0.9, -0.9) == doctest::Approx(0.2));
    CHECK(sac::wrap_distance(0.5, -0.5) == doctest::Approx(1.0));
    CHECK(sac::wrap_distance(0.95, -0.95) == doctest::Approx(0.1));
    CHECK(sac::wrap_distance(-0.25, 0.25) == doctest::Approx(0.5));
}

TEST_CASE("sigma2 agrees with an explicit svd of the two-column matrix")
{
    sac::Rng rng(11);
    for (int draw = 0; draw < 50; ++draw) {
        const auto kind = draw % 2 == 0 ? sac::GeometryKind::ula : sac::GeometryKind::nested;
        const auto g = sac::make_geometry(kind, 10);
        const double s_true = rng.uniform_sym();
        const double s_hat = rng.uniform_sym();

        Eigen::MatrixXcd a(g.size(), 2);
        const auto c0 = sac::steering_vector(g, s_true);
        const auto c1 = sac::steering_vector(g, s_hat);
        for (int i = 0; i < g.size(); ++i) {
            a(i, 0) = c0[i];
            a(i, 1) = c1[i];
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
        CHECK(sac::sigma2(g, s_true, s_hat) ==
              doctest::Approx(svd.singularValues()(1)).epsilon(1e-8));
    }
    const auto g4 = sac::make_geometry(sac::GeometryKind::ula, 4);
    CHECK(sac::sigma2(g4, 0.0, 0.5) == doctest::Approx(2.0).epsilon(1e-10)); // at a null
    CHECK(sac::sigma2(g4, 0.3, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("sigma2 squared plus magnitude recovers the sensor count")
{
    sac::Rng rng(12);
    const auto g = sac::make_geometry(sac::GeometryKind::nested, 8);
    for (int draw = 0; draw < 50; ++draw) {
        const double s_true = rng.uniform_sym();
        const double s_hat = rng.uniform_sym();
        const double sig = sac::sigma2(g, s_true, s_hat);
        const double mag = sac::beampattern_mag(g, sac::wrap_distance(s_hat, s_true));
        CHECK(sig * sig + mag == doctest::Approx(8.0).epsilon(1e-8));
    }
}

TEST_CASE("invert_bound shrinks with increasing snr and is vacuous at low snr")
{
    const auto g = sac::make_geometry(sac::GeometryKind::ula, 10);
    const auto curve = sac::compute_bound_curve(g, 10001);
    double prev = 1.0;
    for (double snr : {0.1, 0.4, 1.0, 2.5, 10.0, 100.0, 1e6}) {
        const auto bound = sac::invert_bound(curve, snr);
        CHECK(bound.delta_max <= prev + 1e-12);
        prev = bound.delta_max;
    }
    // threshold 1 - 4/(P rho) <= 0 leaves the bound vacuous
    CHECK(sac::invert_bound(curve, 0.35).delta_max == doctest::Approx(1.0));
    CHECK(sac::invert_bound(curve, 1e9).delta_max < 1e-2);
}

TEST_CASE("invert_bound thresholds at unit and half snr for ten sensors")
{
    const auto g = sac::make_geometry(sac::GeometryKind::ula, 10);
    const auto curve = sac::compute_bound_curve(g, 10001);
    CHECK(sac::invert_bound(curve, 1.0).threshold == doctest::Approx(0.6));
    CHECK(sac::invert_bound(curve, 0.5).threshold == doctest::Approx(0.2));
}

TEST_CASE("closed-form worst-case bounds")
{
    CHECK(sac::theorem1_bound(sac::GeometryKind::ula, 10) == doctest::Approx(0.12));
    CHECK(sac::theorem1_bound(sac::GeometryKind::nested, 10) == doctest::Approx(0.08));
    CHECK(sac::theorem1_bound(sac::GeometryKind::nested, 4) == doctest::Approx(0.5));
    CHECK_THROWS_AS(sac::theorem1_bound(sac::GeometryKind::ula, 5), std::invalid_argument);
}

TEST_CASE("numerical inversion stays below the closed-form bounds at snr 25/P")
{
    for (int p = 4; p <= 40; p += 2) {
        const double snr = 25.0 / p;
        for (const auto kind : {sac::GeometryKind::ula, sac::GeometryKind::nested}) {
            const auto g = sac::make_geometry(kind, p);
            const auto curve = sac::compute_bound_curve(g, 20001);
            const auto bound = sac::invert_bound(curve, snr);
            CHECK(bound.delta_max <= sac::theorem1_bound(kind, p) + 1e-9);
        }
    }
}

TEST_CASE("nested side lobes stay below the ceiling, splits hold pointwise")
{
    for (int m : {2, 3, 5, 10}) {
        const double lo = 2.0 / ((m + 1.0) * m);
        std::vector<double> grid(2001);
        for (std::size_t k = 0; k < grid.size(); ++k)
            grid[k] = lo + (1.0 - lo) * static_cast<double>(k) / (grid.size() - 1);
        const auto report = sac::nested_sidelobe_check(m, grid);
        CHECK(report.below_ceiling);
        CHECK(report.max_ratio < 0.84);
        CHECK(report.split1_margin <= 1e-10);
        CHECK(report.split2_margin <= 1e-10);
    }
}
