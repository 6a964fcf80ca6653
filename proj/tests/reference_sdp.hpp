// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

// Test-only reference solver for
//
//   minimize  N * t0   subject to  ||y - t_D||_2 <= eps,  T(t) PSD
//
// by a log-barrier interior-point method over the real parametrization
// p = (t0, Re t1, Im t1, ..., Re t_{N-1}, Im t_{N-1}). Slow and simple on
// purpose: it shares no code with the production ADMM path, so agreement is
// meaningful. Requires a strictly feasible starting point.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace refsdp {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vecd = Eigen::VectorXd;
using Matd = Eigen::MatrixXd;

struct Result {
    std::vector<cd> t;
    double objective = 0.0;
    bool ok = false;
};

inline Mat toeplitz_of(const std::vector<cd> &t)
{
    const int n = static_cast<int>(t.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = i >= j ? t[i - j] : std::conj(t[j - i]);
    return m;
}

inline std::vector<cd> params_to_t(const Vecd &p, int n)
{
    std::vector<cd> t(n);
    t[0] = cd(p(0), 0.0);
    for (int k = 1; k < n; ++k)
        t[k] = cd(p(2 * k - 1), p(2 * k));
    return t;
}

inline Vecd t_to_params(const std::vector<cd> &t)
{
    const int n = static_cast<int>(t.size());
    Vecd p(2 * n - 1);
    p(0) = t[0].real();
    for (int k = 1; k < n; ++k) {
        p(2 * k - 1) = t[k].real();
        p(2 * k) = t[k].imag();
    }
    return p;
}

/// Basis matrices dT/dp_j, all Hermitian.
inline std::vector<Mat> basis_matrices(int n)
{
    std::vector<Mat> basis;
    basis.push_back(Mat::Identity(n, n));
    for (int k = 1; k < n; ++k) {
        Mat re = Mat::Zero(n, n);
        Mat im = Mat::Zero(n, n);
        for (int i = 0; i + k < n; ++i) {
            re(i + k, i) = 1.0;
            re(i, i + k) = 1.0;
            im(i + k, i) = cd(0.0, 1.0);
            im(i, i + k) = cd(0.0, -1.0);
        }
        basis.push_back(re);
        basis.push_back(im);
    }
    return basis;
}

/// Strict feasibility: T(t) positive definite and ||y - t_D|| < eps.
inline bool strictly_feasible(const Vecd &p, const std::vector<cd> &y,
                              const std::vector<int> &positions, int n, double eps)
{
    const auto t = params_to_t(p, n);
    Eigen::LLT<Mat> llt(toeplitz_of(t));
    if (llt.info() != Eigen::Success)
        return false;
    double r = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        r += std::norm(t[positions[i]] - y[i]);
    return r < eps * eps;
}

inline Result solve(const std::vector<cd> &y, const std::vector<int> &positions, int n,
                    double eps, const std::vector<cd> &t_start)
{
    Result out;
    const int dim = 2 * n - 1;
    const int sensors = static_cast<int>(positions.size());
    Vecd p = t_to_params(t_start);
    if (!strictly_feasible(p, y, positions, n, eps))
        return out;

    const auto basis = basis_matrices(n);
    // parameter index of each lag, for the ball-constraint derivatives
    std::vector<std::pair<int, int>> obs_params(sensors); // (re index, im index or -1)
    for (int i = 0; i < sensors; ++i) {
        const int k = positions[i];
        obs_params[i] = k == 0 ? std::pair{0, -1} : std::pair{2 * k - 1, 2 * k};
    }

    const auto eval = [&](const Vecd &pp, double t_bar, double *value, Vecd *grad,
                          Matd *hess) -> bool {
        const auto t = params_to_t(pp, n);
        const Mat big_t = toeplitz_of(t);
        Eigen::LLT<Mat> llt(big_t);
        if (llt.info() != Eigen::Success)
            return false;
        double r = 0.0;
        std::vector<cd> d(sensors);
        for (int i = 0; i < sensors; ++i) {
            d[i] = t[positions[i]] - y[i];
            r += std::norm(d[i]);
        }
        const double slack = eps * eps - r;
        if (slack <= 0.0)
            return false;

        if (value) {
            const double logdet =
                2.0 * llt.matrixL().toDenseMatrix().diagonal().real().array().log().sum();
            *value = t_bar * n * pp(0) - logdet - std::log(slack);
        }
        if (!grad && !hess)
            return true;

        const Mat inv = llt.solve(Mat::Identity(n, n));
        std::vector<Mat> w(dim);
        for (int j = 0; j < dim; ++j)
            w[j] = inv * basis[j];

        Vecd rp = Vecd::Zero(dim); // dr/dp
        for (int i = 0; i < sensors; ++i) {
            rp(obs_params[i].first) += 2.0 * d[i].real();
            if (obs_params[i].second >= 0)
                rp(obs_params[i].second) += 2.0 * d[i].imag();
        }

        if (grad) {
            grad->setZero(dim);
            (*grad)(0) += t_bar * n;
            for (int j = 0; j < dim; ++j)
                (*grad)(j) += -w[j].trace().real() + rp(j) / slack;
        }
        if (hess) {
            hess->setZero(dim, dim);
            for (int j = 0; j < dim; ++j)
                for (int l = j; l < dim; ++l) {
                    const double v = (w[j] * w[l]).trace().real();
                    (*hess)(j, l) += v;
                    (*hess)(l, j) = (*hess)(j, l);
                }
            *hess += rp * rp.transpose() / (slack * slack);
            for (int i = 0; i < sensors; ++i) {
                (*hess)(obs_params[i].first, obs_params[i].first) += 2.0 / slack;
                if (obs_params[i].second >= 0)
                    (*hess)(obs_params[i].second, obs_params[i].second) += 2.0 / slack;
            }
        }
        return true;
    };

    const double nu = n + 1; // total barrier parameter
    double t_bar = 1.0;
    for (int stage = 0; stage < 64; ++stage) {
        // Newton with backtracking, feasibility enforced by the line search
        for (int it = 0; it < 100; ++it) {
            double f0 = 0.0;
            Vecd g(dim);
            Matd h(dim, dim);
            if (!eval(p, t_bar, &f0, &g, &h))
                return out;

            Vecd dp;
            double ridge = 0.0;
            for (int attempt = 0; attempt < 12; ++attempt) {
                Eigen::LDLT<Matd> ldlt(h + ridge * Matd::Identity(dim, dim));
                dp = ldlt.solve(-g);
                if (ldlt.info() == Eigen::Success && g.dot(dp) < 0.0)
                    break;
                ridge = ridge == 0.0 ? 1e-10 * (1.0 + h.diagonal().cwiseAbs().maxCoeff())
                                     : ridge * 100.0;
            }
            const double decrement = -g.dot(dp);
            if (!(decrement > 0.0))
                break;
            if (decrement < 1e-13 * (1.0 + std::abs(f0)))
                break;

            double step = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 60; ++bt) {
                const Vecd cand = p + step * dp;
                double f1 = 0.0;
                if (eval(cand, t_bar, &f1, nullptr, nullptr) &&
                    f1 <= f0 - 1e-4 * step * decrement) {
                    p = cand;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved)
                break;
        }
        const double obj = n * p(0);
        if (nu / t_bar < 1e-9 * std::max(1.0, std::abs(obj)))
            break;
        t_bar *= 8.0;
    }

    out.t = params_to_t(p, n);
    out.objective = n * p(0);
    out.ok = true;
    return out;
}

} // namespace refsdp
