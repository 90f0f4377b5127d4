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

#include "fisherlab/fock.hpp"

#include "fisherlab/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fisherlab::fock {

OccupationLabel::OccupationLabel(std::initializer_list<int> counts)
    : OccupationLabel(std::span<const int>(counts.begin(), counts.size())) {}

OccupationLabel::OccupationLabel(std::span<const int> counts) {
    if(counts.size() > static_cast<std::size_t>(kMaxModes))
        throw std::invalid_argument("OccupationLabel: too many modes");
    size_ = static_cast<int>(counts.size());
    for(std::size_t i = 0; i < counts.size(); ++i) {
        if(counts[i] < 0) throw std::invalid_argument("OccupationLabel: negative photon count");
        counts_[i] = static_cast<std::uint16_t>(counts[i]);
    }
}

int OccupationLabel::total() const {
    int sum = 0;
    for(int i = 0; i < size_; ++i) sum += counts_[static_cast<std::size_t>(i)];
    return sum;
}

std::string OccupationLabel::to_string() const {
    std::string out = "|";
    for(int i = 0; i < size_; ++i) {
        if(i) out += ",";
        out += std::to_string(counts_[static_cast<std::size_t>(i)]);
    }
    return out + ">";
}

OccupationLabel OccupationLabel::with(int mode, int count) const {
    if(mode < 0 || mode >= size_) throw std::out_of_range("OccupationLabel: mode index");
    if(count < 0) throw std::invalid_argument("OccupationLabel: negative photon count");
    OccupationLabel out = *this;
    out.counts_[static_cast<std::size_t>(mode)] = static_cast<std::uint16_t>(count);
    return out;
}

OccupationLabel OccupationLabel::appended(int extra_modes) const {
    if(extra_modes < 0 || size_ + extra_modes > kMaxModes) throw std::invalid_argument("OccupationLabel: too many modes");
    OccupationLabel out = *this;
    out.size_ += extra_modes;
    return out;
}

std::strong_ordering operator<=>(const OccupationLabel &a, const OccupationLabel &b) {
    const int n = std::min(a.size_, b.size_);
    for(int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if(auto c = a.counts_[idx] <=> b.counts_[idx]; c != 0) return c;
    }
    return a.size_ <=> b.size_;
}

PureState::PureState(int num_modes, int cutoff, AmplitudeMap amplitudes, Normalization norm)
    : num_modes_(num_modes), cutoff_(cutoff), norm_(norm) {
    if(num_modes < 1 || num_modes > kMaxModes) throw std::invalid_argument("PureState: mode count out of range");
    if(cutoff < 0) throw std::invalid_argument("PureState: negative cutoff");
    for(auto &[label, amp] : amplitudes) {
        if(label.num_modes() != num_modes) throw std::invalid_argument("PureState: label arity mismatch");
        if(label.total() > cutoff) throw std::invalid_argument("PureState: label " + label.to_string() + " exceeds cutoff");
        if(std::abs(amp) >= kPruneThreshold) amplitudes_.emplace_hint(amplitudes_.end(), label, amp);
    }
    if(norm_ == Normalization::checked && std::abs(norm_squared() - 1.0) > kNormTolerance)
        throw std::invalid_argument("PureState: state is not normalized");
}

Complex PureState::amplitude(const OccupationLabel &label) const {
    auto it = amplitudes_.find(label);
    return it == amplitudes_.end() ? Complex{} : it->second;
}

double PureState::norm_squared() const {
    double sum = 0.0;
    for(const auto &[label, amp] : amplitudes_) sum += std::norm(amp);
    return sum;
}

PureState PureState::scaled(Complex factor) const {
    AmplitudeMap out;
    for(const auto &[label, amp] : amplitudes_) out.emplace_hint(out.end(), label, amp * factor);
    return {num_modes_, cutoff_, std::move(out), Normalization::unnormalized};
}

PureState PureState::normalized() const {
    const double n2 = norm_squared();
    if(n2 <= 0.0) throw std::domain_error("PureState: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    AmplitudeMap out;
    for(const auto &[label, amp] : amplitudes_) out.emplace_hint(out.end(), label, amp * inv);
    return {num_modes_, cutoff_, std::move(out), Normalization::checked};
}

PureState PureState::with_vacuum_modes(int extra) const {
    AmplitudeMap out;
    for(const auto &[label, amp] : amplitudes_) out.emplace_hint(out.end(), label.appended(extra), amp);
    return {num_modes_ + extra, cutoff_, std::move(out), norm_};
}

PureState twin_fock(int n) {
    if(n < 0) throw std::invalid_argument("twin_fock: N must be non-negative");
    return {2, 2 * n, AmplitudeMap{{OccupationLabel{n, n}, Complex{1.0, 0.0}}}};
}

PureState hb_state(int n, double phi) {
    if(n < 1) throw std::invalid_argument("hb_state: N must be at least 1");
    if(4 * n > comb::kMaxN) throw std::invalid_argument("hb_state: N too large");
    AmplitudeMap amps;
    for(int k = 0; k <= n; ++k) {
        // sqrt((2k)!(2N-2k)!) / (2^N k! (N-k)!), combined in floating point from exact tables.
        const double magnitude = comb::sqrt_factorial(2 * k) * comb::sqrt_factorial(2 * n - 2 * k) /
                                 (std::ldexp(1.0, n) * comb::factorial(k) * comb::factorial(n - k));
        amps.emplace(OccupationLabel{2 * k, 2 * n - 2 * k}, std::polar(magnitude, 2.0 * k * phi));
    }
    return {2, 2 * n, std::move(amps)};
}

PureState noon_state(int n) {
    if(n < 1) throw std::invalid_argument("noon_state: N must be at least 1");
    const double a = 1.0 / std::sqrt(2.0);
    return {2, n, AmplitudeMap{{OccupationLabel{n, 0}, a}, {OccupationLabel{0, n}, a}}};
}

PureState number_derivative(const PureState &state, int mode) {
    if(mode < 0 || mode >= state.num_modes()) throw std::out_of_range("number_derivative: invalid mode");
    AmplitudeMap out;
    for(const auto &[label, amp] : state.amplitudes())
        out.emplace_hint(out.end(), label, amp * Complex{0.0, static_cast<double>(label[mode])});
    return {state.num_modes(), state.cutoff(), std::move(out), Normalization::unnormalized};
}

Complex inner_product(const PureState &a, const PureState &b) {
    if(a.num_modes() != b.num_modes()) throw std::invalid_argument("inner_product: mode-count mismatch");
    // Merge walk over the two sorted maps.
    Complex sum{};
    auto ia = a.amplitudes().begin();
    auto ib = b.amplitudes().begin();
    while(ia != a.amplitudes().end() && ib != b.amplitudes().end()) {
        if(ia->first < ib->first) {
            ++ia;
        } else if(ib->first < ia->first) {
            ++ib;
        } else {
            sum += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

namespace {

void check_basis(const std::vector<OccupationLabel> &basis, const Eigen::MatrixXcd &matrix) {
    if(matrix.rows() != matrix.cols() || matrix.rows() != static_cast<Eigen::Index>(basis.size()))
        throw std::invalid_argument("operator: matrix shape does not match basis");
    if(!std::is_sorted(basis.begin(), basis.end()) || std::adjacent_find(basis.begin(), basis.end()) != basis.end())
        throw std::invalid_argument("operator: basis must be strictly lexicographic");
}

void check_hermitian(const Eigen::MatrixXcd &matrix, double tol) {
    if((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("operator: not Hermitian");
}

std::vector<OccupationLabel> union_basis(std::span<const PureState *const> states) {
    std::set<OccupationLabel> labels;
    for(const auto *s : states)
        for(const auto &[label, amp] : s->amplitudes()) labels.insert(label);
    return {labels.begin(), labels.end()};
}

Eigen::VectorXcd dense(const PureState &state, const std::vector<OccupationLabel> &basis) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    for(const auto &[label, amp] : state.amplitudes()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), label);
        v[it - basis.begin()] = amp;
    }
    return v;
}

} // namespace

DensityOperator::DensityOperator(std::vector<OccupationLabel> basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    check_basis(basis_, matrix_);
    if(basis_.empty()) throw std::invalid_argument("DensityOperator: empty basis");
    check_hermitian(matrix_, 1e-12);
    if(std::abs(matrix_.trace() - Complex{1.0, 0.0}) > 1e-12) throw std::invalid_argument("DensityOperator: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    if(solver.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("DensityOperator: negative eigenvalue");
}

HermitianOperator::HermitianOperator(std::vector<OccupationLabel> basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    check_basis(basis_, matrix_);
    check_hermitian(matrix_, 1e-12);
}

DensityOperator to_density(const PureState &state) {
    const PureState *states[] = {&state};
    auto basis = union_basis(states);
    const Eigen::VectorXcd v = dense(state, basis);
    return {std::move(basis), v * v.adjoint()};
}

DensityOperator mix(std::span<const std::pair<double, DensityOperator>> terms) {
    if(terms.empty()) throw std::invalid_argument("mix: no terms");
    double total = 0.0;
    std::set<OccupationLabel> labels;
    for(const auto &[w, rho] : terms) {
        if(w < 0.0) throw std::invalid_argument("mix: negative weight");
        total += w;
        labels.insert(rho.basis().begin(), rho.basis().end());
    }
    if(std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("mix: weights do not sum to 1");
    std::vector<OccupationLabel> basis(labels.begin(), labels.end());
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for(const auto &[w, rho] : terms) {
        std::vector<Eigen::Index> map;
        for(const auto &label : rho.basis())
            map.push_back(std::lower_bound(basis.begin(), basis.end(), label) - basis.begin());
        for(std::size_t i = 0; i < map.size(); ++i)
            for(std::size_t j = 0; j < map.size(); ++j)
                out(map[i], map[j]) += w * rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    return {std::move(basis), std::move(out)};
}

BlockDiagonalState::BlockDiagonalState(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if(blocks_.empty()) throw std::invalid_argument("BlockDiagonalState: no blocks");
    double total = 0.0;
    std::set<int> seen;
    for(const auto &b : blocks_) {
        if(b.weight < 0.0 || b.weight > 1.0 + 1e-12) throw std::invalid_argument("BlockDiagonalState: weight outside [0,1]");
        if(!b.state.is_normalized()) throw std::invalid_argument("BlockDiagonalState: block state not normalized");
        if(b.lost_photons < 0 || b.lost_photons > b.state.cutoff())
            throw std::invalid_argument("BlockDiagonalState: invalid lost-photon count");
        if(!seen.insert(b.lost_photons).second) throw std::invalid_argument("BlockDiagonalState: duplicate block index");
        if(b.state.num_modes() != blocks_.front().state.num_modes())
            throw std::invalid_argument("BlockDiagonalState: mode-count mismatch");
        total += b.weight;
    }
    if(std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("BlockDiagonalState: weights do not sum to 1");
}

const Block *BlockDiagonalState::find(int lost_photons) const {
    for(const auto &b : blocks_)
        if(b.lost_photons == lost_photons) return &b;
    return nullptr;
}

DensityOperator flatten(const BlockDiagonalState &state) {
    std::vector<const PureState *> ptrs;
    for(const auto &b : state.blocks()) ptrs.push_back(&b.state);
    auto basis = union_basis(ptrs);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for(const auto &b : state.blocks()) {
        const Eigen::VectorXcd v = dense(b.state, basis);
        rho += b.weight * v * v.adjoint();
    }
    return {std::move(basis), std::move(rho)};
}

MixedStateWithDerivative flatten_with_derivative(const BlockDiagonalState &state,
                                                 std::span<const PureState> weighted_block_derivs) {
    if(weighted_block_derivs.size() != state.size())
        throw std::invalid_argument("flatten_with_derivative: one derivative per block required");
    std::vector<const PureState *> ptrs;
    for(const auto &b : state.blocks()) ptrs.push_back(&b.state);
    for(const auto &d : weighted_block_derivs) ptrs.push_back(&d);
    auto basis = union_basis(ptrs);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd drho = Eigen::MatrixXcd::Zero(dim, dim);
    for(std::size_t i = 0; i < state.size(); ++i) {
        const auto &b = state.blocks()[i];
        const Eigen::VectorXcd v = std::sqrt(b.weight) * dense(b.state, basis);
        const Eigen::VectorXcd dv = dense(weighted_block_derivs[i], basis);
        rho += v * v.adjoint();
        drho += dv * v.adjoint() + v * dv.adjoint();
    }
    return {DensityOperator{basis, std::move(rho)}, HermitianOperator{basis, std::move(drho)}};
}

MixedStateWithDerivative pure_with_derivative(const PureState &state, const PureState &deriv) {
    const PureState *ptrs[] = {&state, &deriv};
    auto basis = union_basis(ptrs);
    const Eigen::VectorXcd v = dense(state, basis);
    const Eigen::VectorXcd dv = dense(deriv, basis);
    Eigen::MatrixXcd rho = v * v.adjoint();
    Eigen::MatrixXcd drho = dv * v.adjoint() + v * dv.adjoint();
    return {DensityOperator{basis, std::move(rho)}, HermitianOperator{basis, std::move(drho)}};
}

} // namespace fisherlab::fock
