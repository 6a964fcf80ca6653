// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include "sac/linalg.hpp"

#include "sac/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace sac {

HermitianMatrix::HermitianMatrix(int n) : n_(n)
{
    if (n <= 0)
        throw std::invalid_argument("HermitianMatrix: dimension must be positive");
    packed_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, cd{0.0, 0.0});
}

void HermitianMatrix::set(int i, int j, cd value)
{
    if (i > j)
        throw std::invalid_argument("HermitianMatrix::set expects i <= j");
    if (i == j)
        value = cd(value.real(), 0.0);
    packed_[index(i, j)] = value;
}

double HermitianMatrix::frobenius_norm() const
{
    double sum = 0.0;
    for (int i = 0; i < n_; ++i) {
        sum += std::norm((*this)(i, i));
        for (int j = i + 1; j < n_; ++j)
            sum += 2.0 * std::norm((*this)(i, j));
    }
    return std::sqrt(sum);
}

std::vector<cd> HermitianMatrix::to_dense() const
{
    std::vector<cd> dense(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            dense[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
    return dense;
}

HermitianMatrix HermitianMatrix::from_dense(std::span<const cd> dense, int n)
{
    HermitianMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            // average the two triangles so small asymmetries cancel
            const cd upper = dense[static_cast<std::size_t>(i) * n + j];
            const cd lower = std::conj(dense[static_cast<std::size_t>(j) * n + i]);
            m.set(i, j, 0.5 * (upper + lower));
        }
    return m;
}

HermitianMatrix toeplitz_build(std::span<const cd> t)
{
    const int n = static_cast<int>(t.size());
    if (n == 0)
        throw std::invalid_argument("toeplitz_build: empty spectrum");
    if (std::abs(t[0].imag()) > 1e-12)
        std::cerr << "toeplitz_build: discarding nonzero imaginary part of t[0] ("
                  << t[0].imag() << ")\n";
    HermitianMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            m.set(i, j, std::conj(t[j - i]));
    return m;
}

std::vector<cd> toeplitz_adjoint(const HermitianMatrix &m)
{
    const int n = m.dim();
    std::vector<cd> sums(n, cd{0.0, 0.0});
    for (int k = 0; k < n; ++k)
        for (int i = k; i < n; ++i)
            sums[k] += m(i, i - k);
    return sums;
}

EigenDecomposition hermitian_eig(const HermitianMatrix &input)
{
    const int n = input.dim();
    std::vector<cd> a = input.to_dense();
    std::vector<cd> v(static_cast<std::size_t>(n) * n, cd{0.0, 0.0});
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i) * n + i] = 1.0;

    const auto at = [&](int i, int j) -> cd & { return a[static_cast<std::size_t>(i) * n + j]; };
    const auto vt = [&](int i, int j) -> cd & { return v[static_cast<std::size_t>(i) * n + j]; };

    const double norm = std::max(input.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 30;
    const double stop = 1e-14 * norm;

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += std::norm(at(p, q));
        off = std::sqrt(2.0 * off);
        if (off <= stop)
            break;

        // rotations below the sweep threshold are skipped, not applied
        const double threshold = off / (n * std::max(1, n));

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cd apq = at(p, q);
                const double r = std::abs(apq);
                if (r <= threshold * 1e-2 || r <= 1e-300)
                    continue;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double tden = std::abs(tau) + std::sqrt(tau * tau + 1.0);
                const double t = (tau >= 0.0 ? -1.0 : 1.0) / tden;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cd phase = apq / r; // e^{i phi}

                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q)
                        continue;
                    const cd akp = at(k, p);
                    const cd akq = at(k, q);
                    at(k, p) = c * akp + s * std::conj(phase) * akq;
                    at(k, q) = -s * phase * akp + c * akq;
                    at(p, k) = std::conj(at(k, p));
                    at(q, k) = std::conj(at(k, q));
                }
                at(p, p) = cd(c * c * app + 2.0 * c * s * r + s * s * aqq, 0.0);
                at(q, q) = cd(s * s * app - 2.0 * c * s * r + c * c * aqq, 0.0);
                at(p, q) = cd(0.0, 0.0);
                at(q, p) = cd(0.0, 0.0);

                for (int k = 0; k < n; ++k) {
                    const cd vkp = vt(k, p);
                    const cd vkq = vt(k, q);
                    vt(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    vt(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == kMaxSweeps)
        throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return at(x, x).real() > at(y, y).real(); });

    EigenDecomposition eig;
    eig.dim = n;
    eig.eigenvalues.resize(n);
    eig.eigenvectors.resize(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        eig.eigenvalues[k] = at(order[k], order[k]).real();
        for (int i = 0; i < n; ++i)
            eig.eigenvectors[static_cast<std::size_t>(k) * n + i] = vt(i, order[k]);
    }
    return eig;
}

HermitianMatrix psd_project(const HermitianMatrix &a)
{
    const int n = a.dim();
    const auto eig = hermitian_eig(a);
    std::vector<cd> dense(static_cast<std::size_t>(n) * n, cd{0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues[k];
        if (lambda <= 0.0)
            continue;
        for (int i = 0; i < n; ++i) {
            const cd wi = lambda * eig.vec(i, k);
            for (int j = 0; j < n; ++j)
                dense[static_cast<std::size_t>(i) * n + j] += wi * std::conj(eig.vec(j, k));
        }
    }
    return HermitianMatrix::from_dense(dense, n);
}

namespace {

cd horner(std::span<const cd> coeffs, cd z, cd *deriv)
{
    cd p{0.0, 0.0};
    cd dp{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + coeffs[k];
    }
    if (deriv)
        *deriv = dp;
    return p;
}

} // namespace

std::vector<cd> poly_roots(std::span<const cd> coeffs)
{
    // trim the leading (highest-degree) zeros
    std::size_t top = coeffs.size();
    double cmax = 0.0;
    for (const cd &c : coeffs)
        cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0)
        throw std::invalid_argument("poly_roots: zero polynomial");
    while (top > 0 && std::abs(coeffs[top - 1]) <= 1e-300)
        --top;
    const std::span<const cd> p = coeffs.first(top);
    const int degree = static_cast<int>(top) - 1;
    if (degree < 1)
        return {};
    if (degree == 1)
        return {-p[0] / p[1]};

    double coeff_norm = 0.0;
    for (const cd &c : p)
        coeff_norm += std::norm(c);
    coeff_norm = std::sqrt(coeff_norm);

    // perturbed-circle start; fixed stream keeps runs reproducible
    Rng rng(0x5eedULL);
    const double lead = std::abs(p[degree]);
    double radius = std::abs(p[0]) > 0.0 ? std::pow(std::abs(p[0]) / lead, 1.0 / degree) : 0.5;
    radius = std::clamp(radius, 1e-3, 1.0 + cmax / lead);
    std::vector<cd> z(degree);
    for (int k = 0; k < degree; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / degree + 0.4 + 0.01 * rng.uniform_sym();
        z[k] = std::polar(radius * (1.0 + 0.01 * rng.uniform_sym()), angle);
    }

    constexpr int kMaxIters = 400;
    const double tol = 1e-10;
    for (int iter = 0; iter < kMaxIters; ++iter) {
        double max_step = 0.0;
        int converged = 0;
        for (int i = 0; i < degree; ++i) {
            cd dp;
            const cd pv = horner(p, z[i], &dp);
            const double scale = coeff_norm * std::pow(std::max(1.0, std::abs(z[i])), degree);
            if (std::abs(pv) <= tol * scale) {
                ++converged;
                continue;
            }
            cd newton = (std::abs(dp) > 1e-300) ? pv / dp : cd(1e-8, 1e-8);
            cd sum{0.0, 0.0};
            for (int j = 0; j < degree; ++j) {
                if (j == i)
                    continue;
                cd diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300)
                    diff = cd(1e-12, 1e-12);
                sum += 1.0 / diff;
            }
            const cd denom = 1.0 - newton * sum;
            const cd step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (converged == degree || max_step < 1e-14 * std::max(1.0, radius))
            break;
    }

    for (const cd &root : z) {
        const double scale = coeff_norm * std::pow(std::max(1.0, std::abs(root)), degree);
        if (std::abs(horner(p, root, nullptr)) > 1e-8 * scale)
            throw std::runtime_error("poly_roots: Aberth iteration did not converge");
    }
    return z;
}

std::pair<double, double> linfit(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linfit: need at least two (x, y) pairs");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * std::max(1.0, n * sxx))
        throw std::invalid_argument("linfit: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

} // namespace sac
