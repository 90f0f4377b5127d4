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

#include "fisherlab/fisher.hpp"

#include <cmath>
#include <set>

namespace fisherlab {

PhotonNumberDistribution::PhotonNumberDistribution(double phase, std::map<Outcome, OutcomeValue> entries)
    : phase_(phase), entries_(std::move(entries)) {
    for(auto &[o, v] : entries_) {
        if(o.m < 0 || o.n < 0) throw std::invalid_argument("PhotonNumberDistribution: negative count");
        if(v.probability < -1e-12) throw std::invalid_argument("PhotonNumberDistribution: negative probability");
        if(v.probability < 0.0) v.probability = 0.0;
    }
    if(std::abs(total_probability() - 1.0) > 1e-10)
        throw std::invalid_argument("PhotonNumberDistribution: probabilities do not sum to 1");
    if(std::abs(total_derivative()) > 1e-10)
        throw std::invalid_argument("PhotonNumberDistribution: derivatives do not sum to 0");
}

double PhotonNumberDistribution::probability(int m, int n) const {
    auto it = entries_.find(Outcome{m, n});
    return it == entries_.end() ? 0.0 : it->second.probability;
}

double PhotonNumberDistribution::derivative(int m, int n) const {
    auto it = entries_.find(Outcome{m, n});
    return it == entries_.end() ? 0.0 : it->second.derivative;
}

double PhotonNumberDistribution::total_probability() const {
    double s = 0.0;
    for(const auto &[o, v] : entries_) s += v.probability;
    return s;
}

double PhotonNumberDistribution::total_derivative() const {
    double s = 0.0;
    for(const auto &[o, v] : entries_) s += v.derivative;
    return s;
}

} // namespace fisherlab

namespace fisherlab::fisher {

using fock::Complex;
using fock::PureState;

double qfi_pure(const PureState &state, const PureState &deriv) {
    if(std::abs(state.norm_squared() - 1.0) > 1e-10) throw std::invalid_argument("qfi_pure: state is not normalized");
    const double dd = fock::inner_product(deriv, deriv).real();
    const Complex overlap = fock::inner_product(state, deriv);
    return std::max(0.0, 4.0 * (dd - std::norm(overlap)));
}

double qfi_block(const fock::BlockDiagonalState &state, std::span<const PureState> weighted_block_derivs) {
    if(weighted_block_derivs.size() != state.size())
        throw std::invalid_argument("qfi_block: one derivative per block required");
    double total_weight = 0.0;
    double qfi = 0.0;
    for(std::size_t i = 0; i < state.size(); ++i) {
        const auto &block = state.blocks()[i];
        const double w = block.weight;
        total_weight += w;
        if(w <= 0.0) continue;
        // sqrt(w)|psi> has derivative D. Split D into the weight change and
        // the derivative of the normalized block.
        const double sw = std::sqrt(w);
        const auto &d = weighted_block_derivs[i];
        const Complex psi_d = fock::inner_product(block.state, d); // <psi|D>
        const double dw = 2.0 * sw * psi_d.real();
        // |d psi> = D / sqrt(w) - |psi> dw / (2 w)
        // <dpsi|dpsi> = <D|D>/w - dw Re<psi|D>/w^(3/2) + dw^2/(4 w^2)
        // <psi|dpsi>  = <psi|D>/sqrt(w) - dw/(2w)
        const double dd = fock::inner_product(d, d).real();
        const double norm_d = dd / w - dw * psi_d.real() / (w * sw) + dw * dw / (4.0 * w * w);
        const Complex overlap = psi_d / sw - Complex{dw / (2.0 * w), 0.0};
        const double pure = std::max(0.0, 4.0 * (norm_d - std::norm(overlap)));
        qfi += w * pure + dw * dw / w;
    }
    if(std::abs(total_weight - 1.0) > 1e-10) throw std::invalid_argument("qfi_block: weights do not sum to 1");
    return qfi;
}

double qfi_general(const fock::DensityOperator &rho, const fock::HermitianOperator &drho, double cutoff) {
    if(rho.basis() != drho.basis()) throw std::invalid_argument("qfi_general: rho and drho use different bases");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix());
    if(solver.info() != Eigen::Success) throw std::runtime_error("qfi_general: eigendecomposition failed");
    const Eigen::VectorXd &lambda = solver.eigenvalues();
    const Eigen::MatrixXcd &vecs = solver.eigenvectors();
    const Eigen::MatrixXcd d = vecs.adjoint() * drho.matrix() * vecs;
    double qfi = 0.0;
    for(Eigen::Index i = 0; i < lambda.size(); ++i) {
        for(Eigen::Index j = 0; j < lambda.size(); ++j) {
            const double s = lambda[i] + lambda[j];
            if(s <= cutoff) continue;
            qfi += 2.0 * std::norm(d(i, j)) / s;
        }
    }
    return qfi;
}

double cfi(const PhotonNumberDistribution &dist) {
    double f = 0.0;
    for(const auto &[o, v] : dist.entries()) {
        if(v.probability < 1e-12) {
            if(std::abs(v.derivative) < 1e-9) continue;
            throw SingularityError("cfi: outcome (" + std::to_string(o.m) + "," + std::to_string(o.n) +
                                       ") has vanishing probability but non-vanishing derivative; offset the phase",
                                   o);
        }
        f += v.derivative * v.derivative / v.probability;
    }
    return f;
}

FiniteDifferenceReport finite_difference_check(const DistributionEvaluator &evaluate, double phi, double h) {
    if(!(h > 0.0 && h <= 1e-2)) throw std::invalid_argument("finite_difference_check: step must lie in (0, 1e-2]");
    const auto centre = evaluate(phi);
    const auto plus = evaluate(phi + h);
    const auto minus = evaluate(phi - h);
    std::set<Outcome> keys;
    for(const auto *d : {&centre, &plus, &minus})
        for(const auto &[o, v] : d->entries()) keys.insert(o);
    FiniteDifferenceReport report;
    for(const auto &o : keys) {
        const double numeric = (plus.probability(o.m, o.n) - minus.probability(o.m, o.n)) / (2.0 * h);
        const double err = std::abs(numeric - centre.derivative(o.m, o.n));
        if(err > report.max_abs_error || report.outcomes == 0) {
            report.max_abs_error = std::max(report.max_abs_error, err);
            report.worst = o;
        }
        ++report.outcomes;
    }
    return report;
}

} // namespace fisherlab::fisher
