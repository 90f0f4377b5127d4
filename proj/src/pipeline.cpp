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

#include "fisherlab/pipeline.hpp"

#include "fisherlab/combinatorics.hpp"
#include "fisherlab/fisher.hpp"
#include "fisherlab/legendre.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fisherlab::pipeline {

using fock::AmplitudeMap;
using fock::Complex;
using fock::Normalization;
using fock::OccupationLabel;
using fock::PureState;

namespace {

constexpr int kPhaseMode = 0;

void accumulate(std::map<Outcome, OutcomeValue> &acc, double weight, const PureState &psi, const PureState &dpsi) {
    // Both states share the same label layout; detector modes are 0 and 1,
    // any further modes are traced out.
    for(const auto &[label, amp] : psi.amplitudes()) {
        auto &slot = acc[Outcome{label[0], label[1]}];
        slot.probability += weight * std::norm(amp);
        slot.derivative += weight * 2.0 * (std::conj(amp) * dpsi.amplitude(label)).real();
    }
}

} // namespace

PhotonNumberDistribution run_pipeline(const optics::PipelineConfig &config) {
    config.validate();
    const int n = config.n;
    const int cutoff = 2 * n;
    const auto prep = optics::binomial_weights(n, config.eta_p);
    const optics::LossChannel loss(config.eta, kPhaseMode);
    const bool ancilla = config.detection == optics::DetectionModel::ancilla_modes;

    std::map<Outcome, OutcomeValue> acc;
    for(int na = 0; na <= n; ++na) {
        for(int nb = 0; nb <= n; ++nb) {
            const double w = prep[na] * prep[nb];
            if(w == 0.0) continue;
            const PureState input(2, cutoff, AmplitudeMap{{OccupationLabel{na, nb}, Complex{1.0, 0.0}}});
            const PureState shifted = optics::apply_phase(optics::apply_beamsplitter(input, config.bs1), kPhaseMode, config.phi);
            const PureState dshifted = fock::number_derivative(shifted, kPhaseMode);
            const auto lossy = optics::apply_loss_with_derivative(shifted, dshifted, loss);
            for(std::size_t i = 0; i < lossy.blocks.size(); ++i) {
                const auto &block = lossy.blocks.blocks()[i];
                PureState psi = optics::apply_beamsplitter(block.state.scaled(std::sqrt(block.weight)), config.bs2);
                PureState dpsi = optics::apply_beamsplitter(lossy.weighted_derivatives[i], config.bs2);
                if(ancilla) {
                    const auto d0 = optics::BeamSplitter::generator(0, 2, config.eta_d);
                    const auto d1 = optics::BeamSplitter::generator(1, 3, config.eta_d);
                    psi = optics::apply_beamsplitter(optics::apply_beamsplitter(psi.with_vacuum_modes(2), d0), d1);
                    dpsi = optics::apply_beamsplitter(optics::apply_beamsplitter(dpsi.with_vacuum_modes(2), d0), d1);
                }
                accumulate(acc, w, psi, dpsi);
            }
        }
    }
    PhotonNumberDistribution dist(config.phi, std::move(acc));
    if(ancilla || config.eta_d == 1.0) return dist;
    return optics::detector_smearing(dist, config.eta_d);
}

PhaseSeries::PhaseSeries(const optics::PipelineConfig &config) : degree_(2 * config.n) {
    config.validate();
    const int n = config.n;
    const int cutoff = 2 * n;
    const auto prep = optics::binomial_weights(n, config.eta_p);
    const double eta = config.eta;
    const bool ancilla = config.detection == optics::DetectionModel::ancilla_modes;
    const auto width = static_cast<std::size_t>(degree_) + 1;

    std::map<Outcome, std::size_t> slot;
    for(int na = 0; na <= n; ++na) {
        for(int nb = 0; nb <= n; ++nb) {
            const double w = prep[na] * prep[nb];
            if(w == 0.0) continue;
            const PureState input(2, cutoff, AmplitudeMap{{OccupationLabel{na, nb}, Complex{1.0, 0.0}}});
            const PureState split = optics::apply_beamsplitter(input, config.bs1);
            // Amplitude of each output label per (photons lost, phase-mode count).
            std::map<std::pair<int, OccupationLabel>, std::vector<Complex>> coeffs;
            for(const auto &[label, amp] : split.amplitudes()) {
                const int k = label[kPhaseMode];
                for(int lost = 0; lost <= k; ++lost) {
                    const double kraus = std::sqrt(comb::binomial_pmf(k, lost, 1.0 - eta));
                    if(kraus == 0.0) continue;
                    PureState psi(2, cutoff, AmplitudeMap{{label.with(kPhaseMode, k - lost), amp * kraus}},
                                  Normalization::unnormalized);
                    psi = optics::apply_beamsplitter(psi, config.bs2);
                    if(ancilla) {
                        const auto d0 = optics::BeamSplitter::generator(0, 2, config.eta_d);
                        const auto d1 = optics::BeamSplitter::generator(1, 3, config.eta_d);
                        psi = optics::apply_beamsplitter(optics::apply_beamsplitter(psi.with_vacuum_modes(2), d0), d1);
                    }
                    for(const auto &[out, a] : psi.amplitudes()) {
                        auto &row = coeffs[{lost, out}];
                        row.resize(width);
                        row[static_cast<std::size_t>(k)] += a;
                    }
                }
            }
            for(auto &[key, row] : coeffs) {
                const Outcome o{key.second[0], key.second[1]};
                auto [it, fresh] = slot.try_emplace(o, entries_.size());
                if(fresh) entries_.push_back({o, {}});
                entries_[it->second].terms.push_back({w, std::move(row)});
            }
        }
    }

    if(ancilla || config.eta_d == 1.0) {
        for(const auto &e : entries_) outcomes_.push_back(e.outcome);
        return;
    }
    std::map<Outcome, std::vector<Smear>> smear;
    for(std::size_t i = 0; i < entries_.size(); ++i) {
        const auto o = entries_[i].outcome;
        for(int m = 0; m <= o.m; ++m)
            for(int k = 0; k <= o.n; ++k) {
                const double b = comb::binomial_pmf(o.m, m, config.eta_d) * comb::binomial_pmf(o.n, k, config.eta_d);
                if(b != 0.0) smear[Outcome{m, k}].push_back({i, b});
            }
    }
    for(auto &[o, list] : smear) {
        outcomes_.push_back(o);
        smearing_.push_back(std::move(list));
    }
}

void PhaseSeries::evaluate(double phi, std::vector<double> &p, std::vector<double> &dp) const {
    std::vector<Complex> z(static_cast<std::size_t>(degree_) + 1);
    z[0] = 1.0;
    const Complex step = std::polar(1.0, phi);
    for(std::size_t k = 1; k < z.size(); ++k) z[k] = z[k - 1] * step;

    std::vector<double> raw_p(entries_.size(), 0.0), raw_dp(entries_.size(), 0.0);
    for(std::size_t i = 0; i < entries_.size(); ++i) {
        for(const auto &t : entries_[i].terms) {
            Complex a{}, da{};
            for(std::size_t k = 0; k < t.coeffs.size(); ++k) {
                const Complex v = t.coeffs[k] * z[k];
                a += v;
                da += static_cast<double>(k) * v;
            }
            // d/dphi of exp(i k phi) is i k exp(i k phi)
            raw_p[i] += t.weight * std::norm(a);
            raw_dp[i] += t.weight * 2.0 * (std::conj(a) * Complex{0.0, 1.0} * da).real();
        }
    }
    if(smearing_.empty()) {
        p = std::move(raw_p);
        dp = std::move(raw_dp);
        return;
    }
    p.assign(outcomes_.size(), 0.0);
    dp.assign(outcomes_.size(), 0.0);
    for(std::size_t j = 0; j < outcomes_.size(); ++j)
        for(const auto &s : smearing_[j]) {
            p[j] += s.factor * raw_p[s.source];
            dp[j] += s.factor * raw_dp[s.source];
        }
}

PhotonNumberDistribution PhaseSeries::at(double phi) const {
    std::vector<double> p, dp;
    evaluate(phi, p, dp);
    std::map<Outcome, OutcomeValue> out;
    for(std::size_t j = 0; j < outcomes_.size(); ++j) out.emplace(outcomes_[j], OutcomeValue{p[j], dp[j]});
    return {phi, std::move(out)};
}

double PhaseSeries::fisher_information(double phi) const {
    std::vector<double> p, dp;
    evaluate(phi, p, dp);
    double f = 0.0;
    for(std::size_t j = 0; j < outcomes_.size(); ++j) {
        if(p[j] < 1e-12) {
            if(std::abs(dp[j]) < 1e-9) continue;
            throw fisher::SingularityError("PhaseSeries: vanishing probability with non-vanishing derivative", outcomes_[j]);
        }
        f += dp[j] * dp[j] / p[j];
    }
    return f;
}

std::vector<double> lossless_distribution(int n, double phi) {
    if(n < 1) throw std::invalid_argument("lossless_distribution: N must be at least 1");
    const double x = std::clamp(std::cos(phi), -1.0, 1.0);
    std::vector<double> p(static_cast<std::size_t>(2 * n) + 1);
    for(int k = 0; k <= n; ++k) {
        const double leg = legendre::assoc_legendre(n, n - k, x);
        p[k] = comb::factorial(k) * leg * leg / comb::factorial(2 * n - k);
        p[2 * n - k] = p[k];
    }
    return p;
}

double parity_expectation(int n, double phi) {
    if(n < 1) throw std::invalid_argument("parity_expectation: N must be at least 1");
    return legendre::legendre(n, std::clamp(std::cos(2.0 * phi), -1.0, 1.0));
}

double single_outcome_fi(int n, double phi) {
    if(n < 1) throw std::invalid_argument("single_outcome_fi: N must be at least 1");
    // p = P^2 with P = P_N(cos phi):  (p')^2 / (p (1 - p)) = 4 (dP/dphi)^2 / (1 - P^2).
    const double x = std::clamp(std::cos(phi), -1.0, 1.0);
    const double leg = legendre::legendre(n, x);
    const double one_minus = (1.0 - leg) * (1.0 + leg);
    if(!(one_minus > 1e-300) || std::abs(std::sin(phi)) < 1e-12)
        throw fisher::SingularityError("single_outcome_fi: degenerate phase (outcome probability is 1); offset phi", Outcome{n, n});
    const double dleg = -std::sin(phi) * legendre::legendre_derivative(n, x);
    return 4.0 * dleg * dleg / one_minus;
}

} // namespace fisherlab::pipeline
