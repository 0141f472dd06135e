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

#include "dimwit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "dimwit/error.hpp"

namespace dimwit {
namespace {

Spectrum eigen_2x2(const CMatrix& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = h(0, 1);
    const double mean = 0.5 * (a + d);
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));

    Spectrum out;
    out.values.resize(2);
    out.values << mean - half_gap, mean + half_gap;
    out.vectors = CMatrix::Zero(2, 2);

    if (std::abs(b) <= 1e-300) {
        // Already diagonal; order columns by eigenvalue.
        if (a <= d) {
            out.vectors(0, 0) = 1.0;
            out.vectors(1, 1) = 1.0;
        } else {
            out.vectors(1, 0) = 1.0;
            out.vectors(0, 1) = 1.0;
        }
        return out;
    }
    // Top eigenvector from whichever candidate avoids cancellation, then the
    // bottom one as its orthogonal complement.
    const double delta = 0.5 * (a - d);
    CVector top(2);
    if (delta <= 0.0) {
        top << b, half_gap - delta;
    } else {
        top << half_gap + delta, std::conj(b);
    }
    top /= top.norm();
    out.vectors(0, 1) = top(0);
    out.vectors(1, 1) = top(1);
    out.vectors(0, 0) = -std::conj(top(1));
    out.vectors(1, 0) = std::conj(top(0));
    return out;
}

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

Spectrum eigen_jacobi(CMatrix a) {
    const Eigen::Index n = a.rows();
    CMatrix v = CMatrix::Identity(n, n);
    const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-15 * scale) break;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                // Phase rotation makes the (p,q) entry real and positive, then a real
                // Givens rotation annihilates it.
                const Complex phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);

                CMatrix g = CMatrix::Identity(n, n);
                g(p, p) = c;
                g(p, q) = s;
                g(q, p) = -s * std::conj(phase);
                g(q, q) = c * std::conj(phase);
                a = g.adjoint() * a * g;
                v = v * g;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values[k] = a(src, src).real();
        out.vectors.col(k) = v.col(src);
    }
    return out;
}

}  // namespace

Spectrum hermitian_eigen(const CMatrix& m) {
    if (!is_square(m) || m.rows() == 0) {
        throw DimensionError("hermitian_eigen: matrix must be square and non-empty");
    }
    const CMatrix h = 0.5 * (m + m.adjoint());
    if (h.rows() == 1) {
        Spectrum out;
        out.values = RVector::Constant(1, h(0, 0).real());
        out.vectors = CMatrix::Identity(1, 1);
        return out;
    }
    if (h.rows() == 2) return eigen_2x2(h);
    return eigen_jacobi(h);
}

double max_eigenvalue(const CMatrix& m) {
    const Spectrum s = hermitian_eigen(m);
    return s.values[s.values.size() - 1];
}

double hermitian_deviation(const CMatrix& m) {
    if (!is_square(m)) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_square(const CMatrix& m) { return m.rows() == m.cols(); }

bool all_finite(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

CMatrix basis_projector(int dim, int k) {
    if (k < 0 || k >= dim) throw DomainError("basis_projector: level out of range");
    CMatrix m = CMatrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return m;
}

CVector basis_ket(int dim, int k) {
    if (k < 0 || k >= dim) throw DomainError("basis_ket: level out of range");
    CVector v = CVector::Zero(dim);
    v[k] = 1.0;
    return v;
}

CMatrix psd_sqrt(const CMatrix& m) {
    const Spectrum s = hermitian_eigen(m);
    RVector roots = s.values.unaryExpr([](double x) { return std::sqrt(std::max(x, 0.0)); });
    return s.vectors * roots.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

CMatrix inverse_psd_sqrt(const CMatrix& m) {
    const Spectrum s = hermitian_eigen(m);
    if (s.values.minCoeff() <= 0.0) {
        throw DomainError("inverse_psd_sqrt: matrix is not positive definite");
    }
    RVector inv = s.values.unaryExpr([](double x) { return 1.0 / std::sqrt(x); });
    return s.vectors * inv.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

double guarded_sqrt(double x) {
    if (x >= 0.0) return std::sqrt(x);
    if (x >= -tol::radicand) return 0.0;
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace dimwit
