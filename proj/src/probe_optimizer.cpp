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

#include "fisherlab/probe_optimizer.hpp"

#include "fisherlab/combinatorics.hpp"
#include "fisherlab/fisher.hpp"
#include "fisherlab/optics.hpp"
#include "fisherlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fisherlab::probe {

using fock::Complex;

namespace {

void check_inputs(std::size_t size, double eta) {
    if(size < 2) throw std::invalid_argument("probe: need at least one photon");
    if(size - 1 > static_cast<std::size_t>(comb::kMaxN)) throw std::invalid_argument("probe: too many photons");
    if(!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("probe: eta outside [0,1]");
}

double qfi_from_moduli(std::span<const double> moduli_squared, double eta) {
    const double total = std::accumulate(moduli_squared.begin(), moduli_squared.end(), 0.0);
    if(!(total > 0.0)) return 0.0;
    const int m_total = static_cast<int>(moduli_squared.size()) - 1;
    double qfi = 0.0;
    for(int lost = 0; lost <= m_total; ++lost) {
        double w = 0.0, s1 = 0.0, s2 = 0.0;
        for(int k = lost; k <= m_total; ++k) {
            const double q = moduli_squared[k] / total * comb::binomial_pmf(k, lost, 1.0 - eta);
            w += q;
            s1 += k * q;
            s2 += double(k) * k * q;
        }
        if(w > 0.0) qfi += 4.0 * (s2 - s1 * s1 / w);
    }
    return std::max(0.0, qfi);
}

} // namespace

fock::PureState probe_state(std::span<const Complex> coefficients) {
    check_inputs(coefficients.size(), 1.0);
    const int m_total = static_cast<int>(coefficients.size()) - 1;
    fock::AmplitudeMap amps;
    for(int k = 0; k <= m_total; ++k) amps.emplace(fock::OccupationLabel{k, m_total - k}, coefficients[k]);
    return fock::PureState(2, m_total, std::move(amps), fock::Normalization::unnormalized).normalized();
}

double probe_qfi(std::span<const Complex> coefficients, double eta) {
    check_inputs(coefficients.size(), eta);
    std::vector<double> mod2(coefficients.size());
    std::transform(coefficients.begin(), coefficients.end(), mod2.begin(), [](Complex a) { return std::norm(a); });
    return qfi_from_moduli(mod2, eta);
}

double probe_qfi(std::span<const double> coefficients, double eta) {
    check_inputs(coefficients.size(), eta);
    std::vector<double> mod2(coefficients.size());
    std::transform(coefficients.begin(), coefficients.end(), mod2.begin(), [](double a) { return a * a; });
    return qfi_from_moduli(mod2, eta);
}

double probe_qfi_general(std::span<const Complex> coefficients, double eta) {
    check_inputs(coefficients.size(), eta);
    const auto state = probe_state(coefficients);
    const auto deriv = fock::number_derivative(state, 0);
    const auto lossy = optics::apply_loss_with_derivative(state, deriv, optics::LossChannel(eta, 0));
    const auto mixed = fock::flatten_with_derivative(lossy.blocks, lossy.weighted_derivatives);
    return fisher::qfi_general(mixed.rho, mixed.drho);
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f, std::vector<double> x0,
                             const NelderMeadOptions &options) {
    const std::size_t dim = x0.size();
    if(dim == 0) throw std::invalid_argument("nelder_mead: empty start point");
    const double n = static_cast<double>(dim);
    // Adaptive coefficients for higher dimensions.
    const double alpha = 1.0, beta = 1.0 + 2.0 / n, gamma = 0.75 - 1.0 / (2.0 * n), delta = 1.0 - 1.0 / n;

    int evaluations = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evaluations;
        return f(x);
    };

    std::vector<double> best = std::move(x0);
    double best_value = eval(best);
    for(int restart = 0; restart <= options.restarts; ++restart) {
        std::vector<std::vector<double>> simplex(dim + 1, best);
        std::vector<double> values(dim + 1, best_value);
        for(std::size_t i = 0; i < dim; ++i) {
            simplex[i + 1][i] += simplex[i + 1][i] != 0.0 ? options.initial_step * std::max(1.0, std::abs(best[i]))
                                                          : options.initial_step;
            values[i + 1] = eval(simplex[i + 1]);
        }
        std::vector<std::size_t> order(dim + 1);
        std::vector<double> centroid(dim), trial(dim), trial2(dim);
        while(evaluations < options.max_evaluations) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
            const std::size_t lo = order.front(), hi = order.back(), second = order[dim - 1];
            if(std::abs(values[hi] - values[lo]) <= options.tolerance * (1.0 + std::abs(values[lo]))) break;

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for(std::size_t v = 0; v <= dim; ++v)
                if(v != hi)
                    for(std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i] / n;

            for(std::size_t i = 0; i < dim; ++i) trial[i] = centroid[i] + alpha * (centroid[i] - simplex[hi][i]);
            const double fr = eval(trial);
            if(fr < values[lo]) {
                for(std::size_t i = 0; i < dim; ++i) trial2[i] = centroid[i] + beta * (trial[i] - centroid[i]);
                const double fe = eval(trial2);
                if(fe < fr) {
                    simplex[hi] = trial2;
                    values[hi] = fe;
                } else {
                    simplex[hi] = trial;
                    values[hi] = fr;
                }
                continue;
            }
            if(fr < values[second]) {
                simplex[hi] = trial;
                values[hi] = fr;
                continue;
            }
            const bool outside = fr < values[hi];
            for(std::size_t i = 0; i < dim; ++i)
                trial2[i] = outside ? centroid[i] + gamma * (trial[i] - centroid[i])
                                    : centroid[i] - gamma * (centroid[i] - simplex[hi][i]);
            const double fc = eval(trial2);
            if(fc < std::min(fr, values[hi])) {
                simplex[hi] = trial2;
                values[hi] = fc;
                continue;
            }
            // Shrink towards the best vertex.
            for(std::size_t v = 0; v <= dim; ++v) {
                if(v == lo) continue;
                for(std::size_t i = 0; i < dim; ++i)
                    simplex[v][i] = simplex[lo][i] + delta * (simplex[v][i] - simplex[lo][i]);
                values[v] = eval(simplex[v]);
            }
        }
        const auto it = std::min_element(values.begin(), values.end());
        const bool improved = *it < best_value - options.tolerance * (1.0 + std::abs(best_value));
        if(*it < best_value) {
            best_value = *it;
            best = simplex[static_cast<std::size_t>(it - values.begin())];
        }
        if(!improved || evaluations >= options.max_evaluations) break;
    }
    return {std::move(best), best_value, evaluations};
}

namespace {

std::vector<double> canonical(std::span<const double> x) {
    // The objective depends only on |a_k|, so report moduli on the unit sphere.
    std::vector<double> out(x.size());
    double norm = 0.0;
    for(double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for(std::size_t i = 0; i < x.size(); ++i) out[i] = norm > 0.0 ? std::abs(x[i]) / norm : 0.0;
    return out;
}

std::vector<double> hb_coefficients(int m_total) {
    std::vector<double> a(static_cast<std::size_t>(m_total) + 1, 0.0);
    const auto hb = fock::hb_state(m_total / 2, 0.0);
    for(const auto &[label, amp] : hb.amplitudes()) a[static_cast<std::size_t>(label[0])] = amp.real();
    return a;
}

} // namespace

ProbeResult optimal_probe_qfi(int total_photons, double eta, const ProbeOptions &options) {
    if(total_photons < 1 || total_photons > 20) throw std::invalid_argument("optimal_probe_qfi: M must be in [1, 20]");
    if(!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("optimal_probe_qfi: eta outside [0,1]");
    if(options.starts < 1) throw std::invalid_argument("optimal_probe_qfi: need at least one start");
    const std::size_t dim = static_cast<std::size_t>(total_photons) + 1;

    std::vector<std::vector<double>> starts;
    std::vector<double> noon(dim, 0.0);
    noon.front() = noon.back() = 1.0 / std::sqrt(2.0);
    starts.push_back(noon);
    if(total_photons % 2 == 0 && static_cast<int>(starts.size()) < options.starts) starts.push_back(hb_coefficients(total_photons));
    while(static_cast<int>(starts.size()) < options.starts) {
        std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ull + starts.size());
        std::normal_distribution<double> normal;
        std::vector<double> x(dim);
        for(auto &v : x) v = normal(rng);
        starts.push_back(std::move(x));
    }

    const auto objective = [eta](std::span<const double> x) { return -probe_qfi(x, eta); };
    std::vector<NelderMeadResult> results(starts.size(), NelderMeadResult{{}, 0.0, 0});
    parallel_for(starts.size(), options.threads,
                 [&](std::size_t i) { results[i] = nelder_mead(objective, starts[i], options.local); });

    ProbeResult out{total_photons, eta, {}, 0.0, 0.0, {}, 0.0, 0.0};
    std::size_t best = 0;
    for(std::size_t i = 0; i < results.size(); ++i) {
        out.start_values.push_back(-results[i].value);
        if(results[i].value < results[best].value) best = i;
    }
    const auto [mn, mx] = std::minmax_element(out.start_values.begin(), out.start_values.end());
    out.spread = *mx - *mn;
    out.coefficients = canonical(results[best].x);
    out.qfi_block = probe_qfi(std::span<const double>(out.coefficients), eta);

    std::vector<Complex> complex_coeffs(out.coefficients.begin(), out.coefficients.end());
    out.qfi = probe_qfi_general(complex_coeffs, eta);

    std::mt19937_64 rng(options.seed ^ 0xC0FFEEull);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for(int trial = 0; trial < 8; ++trial) {
        std::vector<Complex> perturbed(complex_coeffs);
        for(auto &c : perturbed) c *= std::polar(1.0, angle(rng));
        out.complex_perturbation_gain =
            std::max(out.complex_perturbation_gain, probe_qfi_general(perturbed, eta) - out.qfi);
    }
    return out;
}

} // namespace fisherlab::probe
