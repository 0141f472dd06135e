// Copyright 2026 The dimwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace dimwit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace tol {
inline constexpr double psd = 1e-9;
inline constexpr double hermitian = 1e-10;
inline constexpr double probability = 1e-9;
inline constexpr double radicand = 1e-12;
}  // namespace tol

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; column k of
/// `vectors` is the unit eigenvector for `values[k]`.
struct Spectrum {
    RVector values;
    CMatrix vectors;
};

/// Closed form for 2x2, cyclic complex Jacobi rotations otherwise. The input is
/// symmetrized as (M + M^dagger)/2 before diagonalization.
Spectrum hermitian_eigen(const CMatrix& m);

/// Largest eigenvalue of the Hermitian part of `m`.
double max_eigenvalue(const CMatrix& m);

/// Maximum entry-wise deviation |M - M^dagger|.
double hermitian_deviation(const CMatrix& m);

bool is_square(const CMatrix& m);
bool all_finite(const CMatrix& m);

CMatrix identity(int dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// |k><k| in dimension `dim`.
CMatrix basis_projector(int dim, int k);
CVector basis_ket(int dim, int k);

/// Hermitian square root of a PSD matrix (negative eigenvalues clamped to 0).
CMatrix psd_sqrt(const CMatrix& m);

/// Inverse of the Hermitian square root of a positive-definite matrix.
CMatrix inverse_psd_sqrt(const CMatrix& m);

/// sqrt(max(x, 0)) when x >= -tol::radicand, NaN otherwise.
double guarded_sqrt(double x);

}  // namespace dimwit
