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

#include "dimwit/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dimwit/error.hpp"

namespace dimwit {
namespace {

constexpr double kCompletenessTol = 1e-9;

void require_valid_matrix(const CMatrix& m, const char* what) {
    if (!is_square(m) || m.rows() == 0) {
        throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
    }
    if (!all_finite(m)) throw DomainError(std::string(what) + ": non-finite entries");
}

void require_hermitian(const CMatrix& m, const char* what) {
    if (hermitian_deviation(m) > tol::hermitian) {
        throw DomainError(std::string(what) + ": matrix is not Hermitian");
    }
}

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix mat) : mat_(std::move(mat)) {
    require_valid_matrix(mat_, "DensityMatrix");
    require_hermitian(mat_, "DensityMatrix");
    const Complex tr = mat_.trace();
    if (std::abs(tr - 1.0) > tol::psd) throw DomainError("DensityMatrix: trace differs from 1");
    if (hermitian_eigen(mat_).values.minCoeff() < -tol::psd) {
        throw DomainError("DensityMatrix: matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::pure(const CVector& ket) {
    const double norm = ket.norm();
    if (norm <= 0.0) throw DomainError("DensityMatrix::pure: zero vector");
    const CVector v = ket / norm;
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::basis(int dim, int level) {
    return DensityMatrix(basis_projector(dim, level));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim <= 0) throw DomainError("DensityMatrix::maximally_mixed: dim must be positive");
    return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

bool DensityMatrix::is_pure(double eps) const {
    return std::abs((mat_ * mat_).trace().real() - 1.0) <= eps;
}

Effect::Effect(CMatrix mat) : mat_(std::move(mat)) {
    require_valid_matrix(mat_, "Effect");
    require_hermitian(mat_, "Effect");
    const RVector ev = hermitian_eigen(mat_).values;
    if (ev.minCoeff() < -tol::psd || ev.maxCoeff() > 1.0 + tol::psd) {
        throw DomainError("Effect: eigenvalues outside [0, 1]");
    }
}

Effect Effect::complement() const { return Effect(identity(dim()) - mat_); }

KrausMap::KrausMap(std::vector<CMatrix> operators) : dim_(0), ops_(std::move(operators)) {
    if (ops_.empty()) throw DomainError("KrausMap: needs at least one operator");
    dim_ = static_cast<int>(ops_.front().rows());
    for (const CMatrix& k : ops_) {
        require_valid_matrix(k, "KrausMap");
        require_same_dim(dim_, static_cast<int>(k.rows()), "KrausMap");
    }
    if (max_eigenvalue(effect_matrix()) > 1.0 + tol::psd) {
        throw DomainError("KrausMap: sum of K^dagger K exceeds the identity");
    }
}

KrausMap KrausMap::zero(int dim) { return KrausMap({CMatrix::Zero(dim, dim)}); }

CMatrix KrausMap::apply(const CMatrix& rho) const {
    require_same_dim(dim_, static_cast<int>(rho.rows()), "KrausMap::apply");
    CMatrix out = CMatrix::Zero(dim_, dim_);
    for (const CMatrix& k : ops_) out.noalias() += k * rho * k.adjoint();
    return out;
}

CMatrix KrausMap::effect_matrix() const {
    CMatrix e = CMatrix::Zero(dim_, dim_);
    for (const CMatrix& k : ops_) e.noalias() += k.adjoint() * k;
    return e;
}

Instrument::Instrument(std::vector<KrausMap> maps) : dim_(0), maps_(std::move(maps)) {
    if (maps_.size() < 2) throw DomainError("Instrument: needs at least two outcomes");
    dim_ = maps_.front().dim();
    for (const KrausMap& m : maps_) require_same_dim(dim_, m.dim(), "Instrument");
    if (completeness_defect(*this) > kCompletenessTol) {
        throw DomainError("Instrument: effects do not sum to the identity");
    }
}

const KrausMap& Instrument::map(std::size_t outcome) const {
    if (outcome >= maps_.size()) throw DomainError("Instrument: unknown outcome");
    return maps_[outcome];
}

char outcome_label(int outcome, int outcome_count) {
    if (outcome < 0 || outcome >= outcome_count || outcome_count > 10) {
        throw DomainError("outcome_label: outcome out of range");
    }
    if (outcome_count == 2) return outcome == 0 ? '+' : '-';
    return static_cast<char>('0' + outcome);
}

int outcome_from_label(char label, int outcome_count) {
    if (outcome_count == 2) {
        if (label == '+') return 0;
        if (label == '-') return 1;
    } else if (label >= '0' && label - '0' < outcome_count) {
        return label - '0';
    }
    throw DomainError(std::string("unknown outcome label '") + label + "'");
}

Unitary::Unitary(CMatrix mat) : mat_(std::move(mat)) {
    require_valid_matrix(mat_, "Unitary");
    const CMatrix defect = mat_.adjoint() * mat_ - identity(dim());
    if (defect.cwiseAbs().maxCoeff() > tol::hermitian) throw DomainError("Unitary: U^dagger U != 1");
}

Unitary Unitary::pi01(double phi2) {
    const Complex mi(0.0, -1.0);
    CMatrix u = CMatrix::Zero(3, 3);
    u(0, 1) = mi;
    u(1, 0) = mi;
    u(2, 2) = std::polar(1.0, phi2);
    return Unitary(u);
}

Unitary Unitary::pi02(double phi1) {
    const Complex mi(0.0, -1.0);
    CMatrix u = CMatrix::Zero(3, 3);
    u(0, 2) = mi;
    u(2, 0) = mi;
    u(1, 1) = std::polar(1.0, phi1);
    return Unitary(u);
}

Unitary Unitary::idle(double phi1_idle, double phi2_idle) {
    CMatrix u = CMatrix::Zero(3, 3);
    u(0, 0) = 1.0;
    u(1, 1) = std::polar(1.0, phi1_idle);
    u(2, 2) = std::polar(1.0, phi2_idle);
    return Unitary(u);
}

CMatrix apply_map(const KrausMap& map, const DensityMatrix& state) {
    require_same_dim(map.dim(), state.dim(), "apply_map");
    return map.apply(state.matrix());
}

Effect effect_of(const Instrument& instrument, int outcome) {
    if (outcome < 0) throw DomainError("effect_of: unknown outcome");
    return Effect(instrument.map(static_cast<std::size_t>(outcome)).effect_matrix());
}

Effect effect_of(const Instrument& instrument, char label) {
    return effect_of(instrument,
                     outcome_from_label(label, static_cast<int>(instrument.outcome_count())));
}

double probability(const Effect& effect, const DensityMatrix& state) {
    require_same_dim(effect.dim(), state.dim(), "probability");
    const double p = (effect.matrix() * state.matrix()).trace().real();
    if (p < -tol::probability || p > 1.0 + tol::probability) {
        throw DomainError("probability: value " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

DensityMatrix bloch_to_state(const BlochVector& alpha) {
    const double norm = std::sqrt(alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]);
    if (!(norm <= 1.0 + tol::psd)) throw DomainError("bloch_to_state: |alpha| > 1");
    CMatrix m = 0.5 * (identity(2) + alpha[0] * pauli_x() + alpha[1] * pauli_y() + alpha[2] * pauli_z());
    return DensityMatrix(std::move(m));
}

BlochVector state_to_bloch(const DensityMatrix& state) {
    if (state.dim() != 2) throw DimensionError("state_to_bloch: qubit state required");
    const CMatrix& r = state.matrix();
    return {(pauli_x() * r).trace().real(), (pauli_y() * r).trace().real(),
            (pauli_z() * r).trace().real()};
}

Effect bloch_effect(double a, double b, const BlochVector& n) {
    const double n_norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (!(b >= 0.0 && b <= 1.0)) throw DomainError("bloch_effect: b outside [0, 1]");
    if (!(a >= 0.0 && a <= 1.0 / (1.0 + b) + tol::psd)) {
        throw DomainError("bloch_effect: a outside [0, 1/(1+b)]");
    }
    if (std::abs(n_norm - 1.0) > tol::psd) throw DomainError("bloch_effect: |n| != 1");
    CMatrix m = a * (identity(2) + b * (n[0] * pauli_x() + n[1] * pauli_y() + n[2] * pauli_z()));
    return Effect(std::move(m));
}

Instrument measure_and_prepare(const std::vector<Effect>& effects,
                               const std::vector<DensityMatrix>& prepared) {
    if (effects.size() != prepared.size() || effects.size() < 2) {
        throw DomainError("measure_and_prepare: need one prepared state per effect");
    }
    const int dim = effects.front().dim();
    std::vector<KrausMap> maps;
    maps.reserve(effects.size());
    for (std::size_t k = 0; k < effects.size(); ++k) {
        require_same_dim(dim, effects[k].dim(), "measure_and_prepare");
        require_same_dim(dim, prepared[k].dim(), "measure_and_prepare");
        // K_ij = sqrt(mu_j lambda_i) |phi_j><v_i| realizes rho -> tr(E rho) sigma.
        const Spectrum e = hermitian_eigen(effects[k].matrix());
        const Spectrum s = hermitian_eigen(prepared[k].matrix());
        std::vector<CMatrix> ops;
        for (Eigen::Index i = 0; i < e.values.size(); ++i) {
            if (e.values[i] <= 1e-15) continue;
            for (Eigen::Index j = 0; j < s.values.size(); ++j) {
                if (s.values[j] <= 1e-15) continue;
                ops.push_back(std::sqrt(e.values[i] * s.values[j]) * s.vectors.col(j) *
                              e.vectors.col(i).adjoint());
            }
        }
        maps.push_back(ops.empty() ? KrausMap::zero(dim) : KrausMap(std::move(ops)));
    }
    return Instrument(std::move(maps));
}

double completeness_defect(const Instrument& instrument) {
    CMatrix total = CMatrix::Zero(instrument.dim(), instrument.dim());
    for (const KrausMap& m : instrument.maps()) total += m.effect_matrix();
    return (total - identity(instrument.dim())).cwiseAbs().maxCoeff();
}

}  // namespace dimwit
