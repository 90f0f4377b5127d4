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

#include "fisherlab/optics.hpp"

#include "fisherlab/combinatorics.hpp"

#include <cmath>
#include <stdexcept>

namespace fisherlab::optics {

using fock::AmplitudeMap;
using fock::Normalization;
using fock::OccupationLabel;
using fock::PureState;

BeamSplitter::BeamSplitter(int first, int second, const Matrix &matrix) : modes_(first, second), matrix_(matrix) {
    if(first < 0 || second < 0 || first == second) throw std::invalid_argument("BeamSplitter: invalid mode pair");
    // M M^dag = 1
    for(int i = 0; i < 2; ++i) {
        for(int j = 0; j < 2; ++j) {
            Complex s{};
            for(int k = 0; k < 2; ++k) s += matrix_[i][k] * std::conj(matrix_[j][k]);
            if(std::abs(s - Complex{i == j ? 1.0 : 0.0, 0.0}) > 1e-12)
                throw std::invalid_argument("BeamSplitter: mode matrix is not unitary");
        }
    }
}

BeamSplitter BeamSplitter::balanced(int first, int second) {
    const double r = 1.0 / std::sqrt(2.0);
    return {first, second, Matrix{{{Complex{r, 0}, Complex{r, 0}}, {Complex{r, 0}, Complex{-r, 0}}}}};
}

BeamSplitter BeamSplitter::generator(int first, int second, double eta) {
    if(!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("BeamSplitter: transmissivity outside [0,1]");
    const double c = std::sqrt(eta);
    const double s = std::sqrt(1.0 - eta);
    return {first, second, Matrix{{{Complex{c, 0}, Complex{0, s}}, {Complex{0, s}, Complex{c, 0}}}}};
}

double BeamSplitter::theta() const { return std::acos(std::min(1.0, std::abs(matrix_[0][0]))); }

LossChannel::LossChannel(double transmissivity_, int target_mode_)
    : transmissivity(transmissivity_), target_mode(target_mode_) {
    if(!(transmissivity >= 0.0 && transmissivity <= 1.0))
        throw std::invalid_argument("LossChannel: transmissivity outside [0,1]");
    if(target_mode < 0) throw std::invalid_argument("LossChannel: invalid mode");
}

void PipelineConfig::validate() const {
    if(n < 0) throw std::invalid_argument("PipelineConfig: N must be non-negative");
    if(4 * n > comb::kMaxN) throw std::invalid_argument("PipelineConfig: N too large");
    for(double e : {eta_p, eta, eta_d})
        if(!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("PipelineConfig: efficiency outside [0,1]");
    if(!std::isfinite(phi)) throw std::invalid_argument("PipelineConfig: phase must be finite");
    for(const auto *bs : {&bs1, &bs2})
        if(bs->modes().first > 1 || bs->modes().second > 1)
            throw std::invalid_argument("PipelineConfig: beam splitters act on modes 0 and 1");
}

PureState apply_beamsplitter(const PureState &state, const BeamSplitter &bs) {
    const auto [ma, mb] = bs.modes();
    if(ma >= state.num_modes() || mb >= state.num_modes())
        throw std::out_of_range("apply_beamsplitter: mode pair outside the state");
    const auto &u = bs.matrix();
    const int cutoff = state.cutoff();

    // Powers of the four matrix entries up to the cutoff.
    std::vector<std::array<Complex, 4>> pw(static_cast<std::size_t>(cutoff) + 1);
    pw[0] = {Complex{1, 0}, Complex{1, 0}, Complex{1, 0}, Complex{1, 0}};
    for(std::size_t k = 1; k < pw.size(); ++k)
        pw[k] = {pw[k - 1][0] * u[0][0], pw[k - 1][1] * u[0][1], pw[k - 1][2] * u[1][0], pw[k - 1][3] * u[1][1]};

    AmplitudeMap out;
    std::vector<Complex> coeff;
    for(const auto &[label, amp] : state.amplitudes()) {
        const int n1 = label[ma];
        const int n2 = label[mb];
        const int total = n1 + n2;
        // (u00 x + u01 y)^n1 (u10 x + u11 y)^n2 / sqrt(n1! n2!) expanded in x^j y^(total-j).
        coeff.assign(static_cast<std::size_t>(total) + 1, Complex{});
        for(int j = 0; j <= n1; ++j) {
            const Complex a = comb::binomial(n1, j) * pw[j][0] * pw[n1 - j][1];
            for(int k = 0; k <= n2; ++k)
                coeff[j + k] += a * (comb::binomial(n2, k) * pw[k][2] * pw[n2 - k][3]);
        }
        const double in_norm = comb::sqrt_factorial(n1) * comb::sqrt_factorial(n2);
        for(int x = 0; x <= total; ++x) {
            if(coeff[x] == Complex{}) continue;
            const double out_norm = comb::sqrt_factorial(x) * comb::sqrt_factorial(total - x);
            out[label.with(ma, x).with(mb, total - x)] += amp * coeff[x] * (out_norm / in_norm);
        }
    }
    return {state.num_modes(), cutoff, std::move(out),
            state.is_normalized() ? Normalization::checked : Normalization::unnormalized};
}

PureState apply_phase(const PureState &state, int mode, double phi) {
    if(mode < 0 || mode >= state.num_modes()) throw std::out_of_range("apply_phase: invalid mode");
    AmplitudeMap out;
    for(const auto &[label, amp] : state.amplitudes())
        out.emplace_hint(out.end(), label, amp * std::polar(1.0, phi * label[mode]));
    return {state.num_modes(), state.cutoff(), std::move(out),
            state.is_normalized() ? Normalization::checked : Normalization::unnormalized};
}

namespace {

// Unnormalized blocks indexed by lost-photon count.
std::map<int, AmplitudeMap> split_loss(const PureState &state, const LossChannel &channel) {
    const int mode = channel.target_mode;
    if(mode >= state.num_modes()) throw std::out_of_range("loss: target mode outside the state");
    const double eta = channel.transmissivity;
    std::map<int, AmplitudeMap> blocks;
    for(const auto &[label, amp] : state.amplitudes()) {
        const int n = label[mode];
        for(int lost = 0; lost <= n; ++lost) {
            const double a = std::sqrt(comb::binomial_pmf(n, lost, 1.0 - eta));
            if(a == 0.0) continue;
            blocks[lost][label.with(mode, n - lost)] += amp * a;
        }
    }
    return blocks;
}

} // namespace

fock::BlockDiagonalState apply_loss_blocks(const PureState &state, const LossChannel &channel) {
    return apply_loss_with_derivative(state, state, channel).blocks;
}

LossyState apply_loss_with_derivative(const PureState &state, const PureState &deriv, const LossChannel &channel) {
    if(!state.is_normalized()) throw std::invalid_argument("loss: input state must be normalized");
    auto blocks = split_loss(state, channel);
    auto dblocks = split_loss(deriv, channel);
    std::vector<fock::Block> out;
    std::vector<PureState> derivs;
    for(auto &[lost, amps] : blocks) {
        PureState weighted(state.num_modes(), state.cutoff(), std::move(amps), Normalization::unnormalized);
        const double w = weighted.norm_squared();
        if(w == 0.0) continue;
        out.push_back({w, weighted.normalized(), lost});
        auto it = dblocks.find(lost);
        derivs.emplace_back(state.num_modes(), state.cutoff(), it == dblocks.end() ? AmplitudeMap{} : std::move(it->second),
                            Normalization::unnormalized);
    }
    return {fock::BlockDiagonalState{std::move(out)}, std::move(derivs)};
}

std::vector<double> binomial_weights(int n, double eta) {
    if(n < 0) throw std::invalid_argument("binomial_weights: N must be non-negative");
    if(!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("binomial_weights: efficiency outside [0,1]");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for(int k = 0; k <= n; ++k) w[k] = comb::binomial_pmf(n, k, eta);
    return w;
}

fock::DensityOperator binomial_preparation(int n, double eta_p) {
    const auto w = binomial_weights(n, eta_p);
    // Zero-weight occupations are left out of the basis.
    std::vector<int> support;
    for(int k = 0; k <= n; ++k)
        if(w[k] > 0.0) support.push_back(k);
    std::vector<OccupationLabel> basis;
    const auto dim = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for(Eigen::Index i = 0; i < dim; ++i) {
        basis.push_back(OccupationLabel{support[i]});
        rho(i, i) = w[support[i]];
    }
    return {std::move(basis), std::move(rho)};
}

PhotonNumberDistribution detector_smearing(const PhotonNumberDistribution &dist, double eta_d) {
    if(!(eta_d >= 0.0 && eta_d <= 1.0)) throw std::invalid_argument("detector_smearing: efficiency outside [0,1]");
    if(std::abs(dist.total_probability() - 1.0) > 1e-10)
        throw std::invalid_argument("detector_smearing: input distribution is not normalized");
    std::map<Outcome, OutcomeValue> out;
    for(const auto &[o, v] : dist.entries()) {
        for(int m = 0; m <= o.m; ++m) {
            const double bm = comb::binomial_pmf(o.m, m, eta_d);
            if(bm == 0.0) continue;
            for(int n = 0; n <= o.n; ++n) {
                const double b = bm * comb::binomial_pmf(o.n, n, eta_d);
                if(b == 0.0) continue;
                auto &slot = out[Outcome{m, n}];
                slot.probability += b * v.probability;
                slot.derivative += b * v.derivative;
            }
        }
    }
    return {dist.phase(), std::move(out)};
}

} // namespace fisherlab::optics
