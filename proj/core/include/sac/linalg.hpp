// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace sac {

using cd = std::complex<double>;

/// Dense Hermitian matrix stored as the packed upper triangle (row major,
/// diagonal included). Diagonal imaginary parts are forced to zero.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(int n);

    int dim() const { return n_; }

    cd operator()(int i, int j) const
    {
        return i <= j ? packed_[index(i, j)] : std::conj(packed_[index(j, i)]);
    }

    /// Set the (i, j) entry with i <= j; the mirrored entry is implied.
    void set(int i, int j, cd value);

    double frobenius_norm() const;

    /// Full dense row-major copy of size n*n.
    std::vector<cd> to_dense() const;
    static HermitianMatrix from_dense(std::span<const cd> dense, int n);

  private:
    std::size_t index(int i, int j) const
    {
        // row-major packed upper triangle
        return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
               (j - i);
    }

    int n_ = 0;
    std::vector<cd> packed_;
};

struct EigenDecomposition {
    int dim = 0;
    std::vector<double> eigenvalues;  // descending
    std::vector<cd> eigenvectors;     // column major, column k pairs with eigenvalues[k]

    cd vec(int i, int k) const { return eigenvectors[static_cast<std::size_t>(k) * dim + i]; }
};

/// Hermitian Toeplitz matrix with first column t.
HermitianMatrix toeplitz_build(std::span<const cd> t);

/// Subdiagonal sums of M: entry k is the sum of M along subdiagonal k. This
/// is the adjoint of toeplitz_build under <A,B> = Re tr(A^H B) paired with
/// <t,s> = Re(t^H D s), D = diag(1, 2, ..., 2).
std::vector<cd> toeplitz_adjoint(const HermitianMatrix &m);

/// Full spectral decomposition by cyclic Jacobi with threshold sweeps.
EigenDecomposition hermitian_eig(const HermitianMatrix &a);

/// Nearest PSD matrix in Frobenius norm: eigendecompose and clamp.
HermitianMatrix psd_project(const HermitianMatrix &a);

/// All complex roots of sum_k coeffs[k] z^k by Aberth-Ehrlich iteration.
std::vector<cd> poly_roots(std::span<const cd> coeffs);

/// Ordinary least squares line fit; returns (slope, intercept).
std::pair<double, double> linfit(std::span<const double> xs, std::span<const double> ys);

} // namespace sac
