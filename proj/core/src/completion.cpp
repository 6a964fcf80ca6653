// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include "sac/completion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include "sac/linalg.hpp"
#include "sac/rng.hpp"

namespace sac {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat toeplitz_dense(const std::vector<cd> &t)
{
    const int n = static_cast<int>(t.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = i >= j ? t[i - j] : std::conj(t[j - i]);
    return m;
}

/// Positive-part projection for the solver hot loop.
///
/// The full path calls zheevr restricted to positive eigenvalues, which is
/// several times faster than a complete decomposition when few eigenvalues
/// are positive. On top of that the projector tracks a small orthonormal
/// basis across calls: successive ADMM iterates differ very little, so two
/// rounds of shifted subspace iteration plus a Rayleigh-Ritz solve recover
/// the positive eigenpairs to machine precision once the iterates settle.
/// The fast path is trusted only when two guards hold:
///   - the positive Ritz pairs have tiny residuals, so they are converged
///     eigenpairs, not subspace artifacts;
///   - their count equals the exact number of positive eigenvalues obtained
///     from the inertia of a Bunch-Kaufman factorization, so no positive
///     eigenvalue is hiding outside the tracked subspace.
/// Any guard failure falls back to the full decomposition and reseeds.
/// While the ADMM iterate is still coarse (large relative primal residual)
/// the residual tolerance is loosened: projection errors far below the
/// current residual cannot derail the iteration.
class PosPartProjector {
public:
    Mat project(const Mat &a, bool coarse)
    {
        const int n = static_cast<int>(a.rows());
        Mat sym = 0.5 * (a + a.adjoint());
        if (n > 16 && basis_.cols() > 0 && basis_.cols() < n && resync_countdown_ > 0) {
            --resync_countdown_;
            Mat result;
            if (try_subspace(sym, result, coarse ? 1e-6 : 1e-8))
                return result;
        }
        return full_projection(sym);
    }

private:
    static constexpr int kResyncPeriod = 40;
    static constexpr int kBufferCols = 4;
    static constexpr int kMaxTracked = 16;

    /// Exact count of positive eigenvalues by Sylvester's law of inertia.
    /// Returns -1 when the factorization fails; callers must then fall back.
    static int positive_inertia(const Mat &sym)
    {
        const int n = static_cast<int>(sym.rows());
        Mat work = sym;
        std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
        if (LAPACKE_zhetrf(LAPACK_COL_MAJOR, 'L', n,
                           reinterpret_cast<lapack_complex_double *>(work.data()), n,
                           ipiv.data()) != 0)
            return -1;
        int pos = 0;
        for (int i = 0; i < n;) {
            if (ipiv[i] > 0) {
                if (work(i, i).real() > 0.0)
                    ++pos;
                ++i;
            } else {
                // 2x2 block: signs follow from determinant and trace
                const double a = work(i, i).real();
                const double b = work(i + 1, i + 1).real();
                const double det = a * b - std::norm(work(i + 1, i));
                if (det < 0.0)
                    ++pos;
                else if (a + b > 0.0)
                    pos += 2;
                i += 2;
            }
        }
        return pos;
    }

    Mat full_projection(const Mat &sym)
    {
        const int n = static_cast<int>(sym.rows());
        Mat work = sym;
        Mat vecs(n, n);
        Eigen::VectorXd vals(n);
        std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
        lapack_int found = 0;
        const lapack_int info = LAPACKE_zheevr(
            LAPACK_COL_MAJOR, 'V', 'V', 'L', n,
            reinterpret_cast<lapack_complex_double *>(work.data()), n, 0.0, 1e300, 0, 0, 0.0,
            &found, vals.data(), reinterpret_cast<lapack_complex_double *>(vecs.data()), n,
            isuppz.data());
        if (info != 0) {
            // zheevr can fail on hard clusters; the dense path cannot
            Eigen::SelfAdjointEigenSolver<Mat> eig(sym);
            Eigen::VectorXd full = eig.eigenvalues().cwiseMax(0.0);
            basis_.resize(0, 0);
            return eig.eigenvectors() * full.asDiagonal() * eig.eigenvectors().adjoint();
        }
        basis_.resize(0, 0);
        if (found <= kMaxTracked && found < n) {
            // the subspace iteration shift must cover the most negative
            // eigenvalue so the top algebraic eigenpairs stay dominant
            Mat swork = sym;
            Eigen::VectorXd low(n);
            lapack_int one = 0;
            const lapack_int sinfo = LAPACKE_zheevr(
                LAPACK_COL_MAJOR, 'N', 'I', 'L', n,
                reinterpret_cast<lapack_complex_double *>(swork.data()), n, 0.0, 0.0, 1, 1,
                0.0, &one, low.data(), nullptr, n, isuppz.data());
            if (sinfo == 0) {
                shift_ = 1.1 * std::max(0.0, -low(0));
                reseed_basis(vecs.leftCols(found), n);
            }
        }
        if (found == 0)
            return Mat::Zero(n, n);
        const auto v = vecs.leftCols(found);
        return v * vals.head(found).asDiagonal() * v.adjoint();
    }

    void reseed_basis(const Mat &band_vecs, int n)
    {
        const int k = std::min(static_cast<int>(band_vecs.cols()) + kBufferCols, n);
        Mat seed(n, k);
        seed.leftCols(band_vecs.cols()) = band_vecs;
        // buffer columns give the subspace room past the tracked band; a
        // private generator keeps runs bit-reproducible under threading
        for (int j = static_cast<int>(band_vecs.cols()); j < k; ++j)
            for (int i = 0; i < n; ++i)
                seed(i, j) = cd(rng_.uniform_sym(), rng_.uniform_sym());
        basis_ = Eigen::HouseholderQR<Mat>(seed).householderQ() * Mat::Identity(n, k);
        resync_countdown_ = kResyncPeriod;
    }

    bool try_subspace(const Mat &sym, Mat &result, double res_tol)
    {
        const int n = static_cast<int>(sym.rows());
        const int k = static_cast<int>(basis_.cols());
        const int inertia = positive_inertia(sym);
        if (inertia < 0 || inertia > k - 1)
            return false;
        // iterate on sym + sigma I so the top algebraic eigenvalues dominate;
        // unshifted power steps would amplify large negative eigenvalues and
        // wash tiny positive ones out of the basis
        const double sigma = shift_;
        for (int round = 0; round < 2; ++round) {
            Mat q = Eigen::HouseholderQR<Mat>(sym * basis_ + sigma * basis_).householderQ() *
                    Mat::Identity(n, k);
            const Mat aq = sym * q;
            Eigen::SelfAdjointEigenSolver<Mat> small(q.adjoint() * aq);
            if (small.info() != Eigen::Success)
                return false;
            const Eigen::VectorXd &ritz = small.eigenvalues(); // ascending
            basis_ = q;
            int first_pos = 0;
            while (first_pos < k && ritz(first_pos) <= 0.0)
                ++first_pos;
            const int pos = k - first_pos;
            if (pos != inertia)
                continue;
            if (pos == 0) {
                result = Mat::Zero(n, n);
                return true;
            }
            const Mat pos_vecs = q * small.eigenvectors().rightCols(pos);
            const Eigen::VectorXd pos_vals = ritz.tail(pos);
            const Mat resid = sym * pos_vecs - pos_vecs * pos_vals.asDiagonal();
            const double scale = std::max(1.0, pos_vals(pos - 1));
            if (resid.colwise().norm().maxCoeff() <= res_tol * scale) {
                result = pos_vecs * pos_vals.asDiagonal() * pos_vecs.adjoint();
                return true;
            }
        }
        return false;
    }

    Mat basis_;
    Rng rng_{0x707270ULL};
    double shift_ = 0.0;
    int resync_countdown_ = 0;
};

/// Per-lag averages of a Hermitian matrix: entry k is the mean of the
/// subdiagonal-k entries.
std::vector<cd> lag_averages(const Mat &m)
{
    const int n = static_cast<int>(m.rows());
    std::vector<cd> avg(n);
    for (int k = 0; k < n; ++k) {
        cd sum{0.0, 0.0};
        for (int i = k; i < n; ++i)
            sum += m(i, i - k);
        avg[k] = sum / static_cast<double>(n - k);
    }
    return avg;
}

} // namespace

SolverReport solve_trace_min(const CompletionProblem &problem, const SolverOptions &opts)
{
    const int n = problem.virtual_size;
    const auto &geom = problem.measurement.geometry;
    const int sensors = geom.size();
    if (n < 1)
        throw std::invalid_argument("solve_trace_min: virtual size must be positive");
    if (static_cast<int>(problem.measurement.y.size()) != sensors)
        throw std::invalid_argument("solve_trace_min: snapshot length != sensor count");
    if (geom.aperture() >= n)
        throw std::invalid_argument("solve_trace_min: geometry does not fit the virtual aperture");
    if (problem.epsilon < 0.0)
        throw std::invalid_argument("solve_trace_min: epsilon must be nonnegative");

    const Vec y = Eigen::Map<const Vec>(problem.measurement.y.data(), sensors);
    const double eps = problem.epsilon;

    // lag weights for ||T(t) - M||_F^2 and the observed-lag indicator
    std::vector<double> lag_weight(n);
    std::vector<int> obs_index(n, -1); // lag -> row of y
    for (int k = 0; k < n; ++k)
        lag_weight[k] = k == 0 ? static_cast<double>(n) : 2.0 * (n - k);
    for (int i = 0; i < sensors; ++i)
        obs_index[geom.positions[i]] = i;

    // Warm start from a coarse beamform fit of the snapshot. The fitted
    // rank-1 Toeplitz matrix is already PSD, so Z = T(t) exactly and the
    // duals start at zero.
    std::vector<cd> t(n, cd{0.0, 0.0});
    {
        const int grid = 512;
        double best_val = -1.0, best_s = 0.0;
        for (int g = 0; g < grid; ++g) {
            const double s = -1.0 + 2.0 * g / grid;
            cd acc{0.0, 0.0};
            for (int i = 0; i < sensors; ++i)
                acc += y(i) * std::polar(1.0, -std::numbers::pi * geom.positions[i] * s);
            if (std::abs(acc) > best_val) {
                best_val = std::abs(acc);
                best_s = s;
            }
        }
        const double alpha_fit = std::max(best_val / sensors, 0.0);
        for (int k = 0; k < n; ++k)
            t[k] = std::polar(alpha_fit, std::numbers::pi * k * best_s);
    }

    PosPartProjector projector;
    Mat big_t = toeplitz_dense(t);
    Mat z = big_t;
    Mat dual_z = Mat::Zero(n, n);
    Vec w = y;
    Vec dual_w = Vec::Zero(sensors);
    double rho = opts.rho_init;

    SolverReport report;
    const double tol = opts.tol;
    double primal = 0.0, dual = 0.0;
    int iter = 0;
    bool converged = false;
    bool coarse = true;

    for (iter = 0; iter < opts.max_iters; ++iter) {
        // t-update: exact per-lag weighted average with the trace term
        const std::vector<cd> avg = lag_averages(z + dual_z);
        for (int k = 0; k < n; ++k) {
            const double wk = lag_weight[k];
            const int oi = obs_index[k];
            cd num = wk * avg[k];
            double den = wk;
            if (oi >= 0) {
                num += w(oi) + dual_w(oi);
                den += 1.0;
            }
            if (k == 0)
                num = cd(num.real() - static_cast<double>(n) / rho, 0.0);
            t[k] = num / den;
        }

        big_t = toeplitz_dense(t);

        // over-relaxation: mix the new T(t) with the previous consensus
        // block before the projections; speeds convergence noticeably
        constexpr double relax = 1.6;
        const Mat big_t_rel = relax * big_t + (1.0 - relax) * z;

        // Z-update: projection onto the PSD cone
        const Mat z_prev = std::move(z);
        z = projector.project(big_t_rel - dual_z, coarse);

        // w-update: projection of the observed lags onto the epsilon-ball
        Vec t_obs(sensors);
        for (int i = 0; i < sensors; ++i)
            t_obs(i) = t[geom.positions[i]];
        const Vec t_obs_rel = relax * t_obs + (1.0 - relax) * w;
        const Vec v = t_obs_rel - dual_w;
        const double dist = (v - y).norm();
        const Vec w_prev = std::move(w);
        w = (eps <= 0.0 || dist <= eps) ? (eps <= 0.0 ? y : v)
                                        : Vec(y + (eps / dist) * (v - y));

        // scaled dual ascent
        dual_z += z - big_t_rel;
        dual_w += w - t_obs_rel;

        // residuals
        dual = rho * std::sqrt((z - z_prev).squaredNorm() + (w - w_prev).squaredNorm());
        primal = std::sqrt((z - big_t).squaredNorm() + (w - t_obs).squaredNorm());

        if (opts.verbose_every > 0 && iter % opts.verbose_every == 0)
            std::fprintf(stderr, "iter %6d rho %.3e primal %.3e dual %.3e t0 %.6e\n", iter, rho,
                         primal, dual, t[0].real());

        const double pri_scale = std::max({1.0, z.norm(), big_t.norm(), w.norm()});
        coarse = primal > 3e-2 * pri_scale;
        const double dual_scale = std::max(1.0, rho * std::sqrt(dual_z.squaredNorm() +
                                                                dual_w.squaredNorm()));
        if (primal <= tol * pri_scale && dual <= tol * dual_scale) {
            converged = true;
            ++iter;
            break;
        }

        // residual balancing keeps the two residuals within a decade;
        // adapting too often cancels the dual accumulation, so rate-limit it
        if (iter % 25 == 24) {
            if (primal > 10.0 * dual && rho < 1e6) {
                rho *= 2.0;
                dual_z *= 0.5;
                dual_w *= 0.5;
            } else if (dual > 10.0 * primal && rho > 1e-6) {
                rho *= 0.5;
                dual_z *= 2.0;
                dual_w *= 2.0;
            }
        }
    }

    report.t_hat = t;
    report.iterations = iter;
    report.primal_residual = primal;
    report.dual_residual = dual;
    report.objective = n * t[0].real();
    report.converged = converged;

    Vec t_obs(sensors);
    for (int i = 0; i < sensors; ++i)
        t_obs(i) = t[geom.positions[i]];
    report.feasibility_gap = std::max(0.0, (y - t_obs).norm() - eps);

    Eigen::SelfAdjointEigenSolver<Mat> eig(toeplitz_dense(t));
    const int last = n - 1;
    const double lambda1 = std::max(eig.eigenvalues()(last), 0.0);
    const double lambda2 = std::max(eig.eigenvalues()(last > 0 ? last - 1 : 0), 0.0);
    report.rank1_ratio = lambda1 > 0.0 ? std::clamp(lambda2 / lambda1, 0.0, 1.0) : 1.0;
    if (lambda1 == 0.0 && big_t.norm() < 1e-12)
        report.rank1_ratio = 0.0; // exact zero solution counts as rank <= 1
    return report;
}

std::optional<AngleAmplitude> extract_rank1(const SolverReport &report, double rank1_thresh)
{
    if (report.rank1_ratio > rank1_thresh)
        return std::nullopt;
    const int n = static_cast<int>(report.t_hat.size());
    const auto eig = hermitian_eig(toeplitz_build(report.t_hat));
    const double lambda1 = eig.eigenvalues[0];
    if (lambda1 <= 0.0)
        return std::nullopt;

    std::vector<double> diffs;
    diffs.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        const cd prod = eig.vec(i + 1, 0) * std::conj(eig.vec(i, 0));
        if (std::abs(prod) > 1e-300)
            diffs.push_back(std::arg(prod));
    }
    if (diffs.empty())
        return std::nullopt;
    std::nth_element(diffs.begin(), diffs.begin() + diffs.size() / 2, diffs.end());
    double sin_hat = diffs[diffs.size() / 2] / std::numbers::pi;
    if (sin_hat >= 1.0)
        sin_hat -= 2.0;

    AngleAmplitude out;
    out.sin_hat = sin_hat;
    out.alpha_hat = lambda1 / n;
    return out;
}

bool check_prop1_hypothesis(const SourceScene &scene, int sensors)
{
    return scene.alpha > 2.0 * scene.epsilon / std::sqrt(static_cast<double>(sensors));
}

} // namespace sac
