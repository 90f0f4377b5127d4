// Copyright 2026 The FisherLab Authors
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

// Dense brute-force Fock simulator used only as a test oracle. Every mode is
// truncated to d = cutoff + 1 levels and two-mode unitaries are obtained by
// exponentiating the truncated generator matrix. Generators conserve the
// total photon number, so all blocks with total <= cutoff are exact.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Truncated annihilation operator on one mode.
inline Matrix annihilation(int d) {
    Matrix a = Matrix::Zero(d, d);
    for(int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

/// a (x) I and I (x) b on the two-mode space, index na * d + nb.
inline std::pair<Matrix, Matrix> two_mode_ops(int d) {
    const Matrix a = annihilation(d);
    const Matrix id = Matrix::Identity(d, d);
    Matrix A(d * d, d * d), B(d * d, d * d);
    for(int i = 0; i < d; ++i)
        for(int j = 0; j < d; ++j)
            for(int k = 0; k < d; ++k)
                for(int l = 0; l < d; ++l) {
                    A(i * d + k, j * d + l) = a(i, j) * id(k, l);
                    B(i * d + k, j * d + l) = id(i, j) * a(k, l);
                }
    return {A, B};
}

/// exp(i theta (a^dag b + a b^dag)): a^dag -> cos a^dag + i sin b^dag.
inline Matrix exchange_unitary(int d, double theta) {
    const auto [A, B] = two_mode_ops(d);
    const Matrix G = A.adjoint() * B + A * B.adjoint();
    return (Complex(0.0, theta) * G).exp();
}

/// The balanced +/- splitter: a^dag -> (a^dag + b^dag)/sqrt2, b^dag -> (a^dag - b^dag)/sqrt2.
/// Built as exp(-pi/4 (a^dag b - b^dag a)) after a pi phase on the second mode.
inline Matrix balanced_unitary(int d) {
    const auto [A, B] = two_mode_ops(d);
    const Matrix G = A.adjoint() * B - B.adjoint() * A;
    const Matrix rotation = (Complex(-std::numbers::pi / 4.0, 0.0) * G).exp();
    Matrix parity = Matrix::Zero(d * d, d * d);
    for(int na = 0; na < d; ++na)
        for(int nb = 0; nb < d; ++nb) parity(na * d + nb, na * d + nb) = (nb % 2) ? -1.0 : 1.0;
    return rotation * parity;
}

/// Pure state on `modes` modes, each truncated to d levels. Mode 0 varies slowest.
class DenseState {
public:
    DenseState(int modes, int d) : modes_(modes), d_(d), psi_(Eigen::VectorXcd::Zero(pow_int(d, modes))) {}

    static DenseState fock(int d, const std::vector<int> &occupations) {
        DenseState s(static_cast<int>(occupations.size()), d);
        s.psi_[s.index(occupations)] = 1.0;
        return s;
    }

    [[nodiscard]] int modes() const { return modes_; }
    [[nodiscard]] int levels() const { return d_; }
    Eigen::VectorXcd &vector() { return psi_; }
    [[nodiscard]] const Eigen::VectorXcd &vector() const { return psi_; }

    [[nodiscard]] std::size_t index(const std::vector<int> &occ) const {
        std::size_t idx = 0;
        for(int m = 0; m < modes_; ++m) idx = idx * d_ + occ[m];
        return idx;
    }

    [[nodiscard]] std::vector<int> occupations(std::size_t idx) const {
        std::vector<int> occ(modes_);
        for(int m = modes_ - 1; m >= 0; --m) {
            occ[m] = static_cast<int>(idx % d_);
            idx /= d_;
        }
        return occ;
    }

    /// Applies a two-mode operator (index n_i * d + n_j) to modes i and j.
    void apply(const Matrix &u, int i, int j) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi_.size());
        for(Eigen::Index idx = 0; idx < psi_.size(); ++idx) {
            if(psi_[idx] == Complex{}) continue;
            auto occ = occupations(static_cast<std::size_t>(idx));
            const int col = occ[i] * d_ + occ[j];
            for(int row = 0; row < d_ * d_; ++row) {
                const Complex c = u(row, col);
                if(c == Complex{}) continue;
                occ[i] = row / d_;
                occ[j] = row % d_;
                out[static_cast<Eigen::Index>(index(occ))] += c * psi_[idx];
            }
        }
        psi_ = std::move(out);
    }

    void phase(int mode, double phi) {
        for(Eigen::Index idx = 0; idx < psi_.size(); ++idx)
            psi_[idx] *= std::polar(1.0, phi * occupations(static_cast<std::size_t>(idx))[mode]);
    }

    /// Multiplies every amplitude by i * n_mode (the phase generator).
    [[nodiscard]] DenseState number_derivative(int mode) const {
        DenseState out = *this;
        for(Eigen::Index idx = 0; idx < psi_.size(); ++idx)
            out.psi_[idx] *= Complex(0.0, occupations(static_cast<std::size_t>(idx))[mode]);
        return out;
    }

private:
    static Eigen::Index pow_int(int b, int e) {
        Eigen::Index r = 1;
        for(int i = 0; i < e; ++i) r *= b;
        return r;
    }

    int modes_;
    int d_;
    Eigen::VectorXcd psi_;
};

struct Distribution {
    std::map<std::pair<int, int>, double> p;
    std::map<std::pair<int, int>, double> dp;
    [[nodiscard]] double prob(int m, int n) const {
        const auto it = p.find({m, n});
        return it == p.end() ? 0.0 : it->second;
    }
    [[nodiscard]] double deriv(int m, int n) const {
        const auto it = dp.find({m, n});
        return it == dp.end() ? 0.0 : it->second;
    }
};

/// Seven explicit modes: 0,1 interferometer arms; 2,3 preparation ancillas;
/// 4 environment; 5,6 detector ancillas. All inefficiencies are physical
/// beam splitters; everything except modes 0,1 is traced out at the end.
inline Distribution explicit_pipeline(int n, double phi, double eta_p, double eta, double eta_d) {
    const int d = 2 * n + 1;
    auto psi = DenseState::fock(d, {n, n, 0, 0, 0, 0, 0});
    const Matrix prep = exchange_unitary(d, std::acos(std::sqrt(eta_p)));
    psi.apply(prep, 0, 2);
    psi.apply(prep, 1, 3);
    const Matrix bs = balanced_unitary(d);
    psi.apply(bs, 0, 1);
    psi.phase(0, phi);
    auto dpsi = psi.number_derivative(0);
    const Matrix loss = exchange_unitary(d, std::acos(std::sqrt(eta)));
    const Matrix det = exchange_unitary(d, std::acos(std::sqrt(eta_d)));
    for(auto *s : {&psi, &dpsi}) {
        s->apply(loss, 0, 4);
        s->apply(bs, 0, 1);
        s->apply(det, 0, 5);
        s->apply(det, 1, 6);
    }
    Distribution out;
    for(Eigen::Index idx = 0; idx < psi.vector().size(); ++idx) {
        const auto occ = psi.occupations(static_cast<std::size_t>(idx));
        const Complex a = psi.vector()[idx], da = dpsi.vector()[idx];
        out.p[{occ[0], occ[1]}] += std::norm(a);
        out.dp[{occ[0], occ[1]}] += 2.0 * std::real(std::conj(a) * da);
    }
    return out;
}

/// QFI from the symmetric logarithmic derivative obtained by a minimum-norm
/// solve of rho L + L rho = 2 drho (Kronecker form); returns Tr(drho L).
inline double qfi_lyapunov(const Matrix &full_rho, const Matrix &full_drho) {
    // Basis states outside the support of both matrices decouple; drop them.
    std::vector<Eigen::Index> keep;
    for(Eigen::Index i = 0; i < full_rho.rows(); ++i)
        if(full_rho.row(i).norm() + full_drho.row(i).norm() > 0.0) keep.push_back(i);
    const auto n = static_cast<Eigen::Index>(keep.size());
    Matrix rho(n, n), drho(n, n);
    for(Eigen::Index i = 0; i < n; ++i)
        for(Eigen::Index j = 0; j < n; ++j) {
            rho(i, j) = full_rho(keep[i], keep[j]);
            drho(i, j) = full_drho(keep[i], keep[j]);
        }
    const Matrix id = Matrix::Identity(n, n);
    Matrix K = Matrix::Zero(n * n, n * n);
    // Column-major vec: vec(rho L) = (I (x) rho) vec L, vec(L rho) = (rho^T (x) I) vec L.
    for(Eigen::Index i = 0; i < n; ++i)
        for(Eigen::Index j = 0; j < n; ++j) {
            K.block(i * n, j * n, n, n) += id(i, j) * rho;
            K.block(i * n, j * n, n, n) += rho(j, i) * id;
        }
    Eigen::VectorXcd rhs(n * n);
    for(Eigen::Index j = 0; j < n; ++j)
        for(Eigen::Index i = 0; i < n; ++i) rhs[j * n + i] = 2.0 * drho(i, j);
    const Eigen::VectorXcd vecL = K.completeOrthogonalDecomposition().solve(rhs);
    Matrix L(n, n);
    for(Eigen::Index j = 0; j < n; ++j)
        for(Eigen::Index i = 0; i < n; ++i) L(i, j) = vecL[j * n + i];
    return (drho * L).trace().real();
}

/// Reduced density matrix (and derivative) of modes 0 and 1 of a dense state,
/// indexed n0 * d + n1.
inline std::pair<Matrix, Matrix> reduce_two_modes(const DenseState &psi, const DenseState &dpsi) {
    const int d = psi.levels();
    Matrix rho = Matrix::Zero(d * d, d * d), drho = Matrix::Zero(d * d, d * d);
    std::map<std::vector<int>, std::vector<std::pair<int, std::size_t>>> by_rest;
    for(Eigen::Index idx = 0; idx < psi.vector().size(); ++idx) {
        auto occ = psi.occupations(static_cast<std::size_t>(idx));
        const int local = occ[0] * d + occ[1];
        occ.erase(occ.begin(), occ.begin() + 2);
        by_rest[occ].push_back({local, static_cast<std::size_t>(idx)});
    }
    for(const auto &[rest, entries] : by_rest)
        for(const auto &[i, ii] : entries)
            for(const auto &[j, jj] : entries) {
                const Complex a = psi.vector()[ii], b = psi.vector()[jj];
                const Complex da = dpsi.vector()[ii], db = dpsi.vector()[jj];
                rho(i, j) += a * std::conj(b);
                drho(i, j) += da * std::conj(b) + a * std::conj(db);
            }
    return {rho, drho};
}

} // namespace oracle
