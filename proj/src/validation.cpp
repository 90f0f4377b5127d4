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

#include "fisherlab/validation.hpp"

#include "fisherlab/bench.hpp"
#include "fisherlab/closed_forms.hpp"
#include "fisherlab/fisher.hpp"
#include "fisherlab/pipeline.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace fisherlab::validation {

namespace {

using optics::PipelineConfig;

PipelineConfig config(int n, double phi, double eta_p, double eta, double eta_d) {
    PipelineConfig cfg;
    cfg.n = n;
    cfg.phi = phi;
    cfg.eta_p = eta_p;
    cfg.eta = eta;
    cfg.eta_d = eta_d;
    return cfg;
}

Check make(std::string name, bool mandatory, double metric, double tol, std::string detail = {}) {
    return {std::move(name), mandatory, metric <= tol, metric, tol, std::move(detail)};
}

Check p1_exactness(std::mt19937_64 &rng, int draws) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi), unit(0.0, 1.0);
    double worst = 0.0;
    for(int i = 0; i < draws; ++i) {
        const double phi = phase(rng), ep = unit(rng), e = unit(rng), ed = unit(rng);
        const auto sim = pipeline::run_pipeline(config(1, phi, ep, e, ed));
        const auto table = closed_forms::closed_form_p1(phi, ep, e, ed);
        std::set<Outcome> keys;
        for(const auto &[o, v] : sim.entries()) keys.insert(o);
        for(const auto &[o, v] : table.entries) keys.insert(o);
        for(const auto &o : keys) worst = std::max(worst, std::abs(sim.probability(o.m, o.n) - table.at(o.m, o.n)));
    }
    return make("p1_closed_form_vs_pipeline", true, worst, 1e-12, fmt::format("{} random draws", draws));
}

Check f1_exactness(std::mt19937_64 &rng, int draws) {
    std::uniform_real_distribution<double> phase(0.05, std::numbers::pi / 2.0 - 0.05), unit(0.05, 1.0);
    double worst = 0.0;
    for(int i = 0; i < draws; ++i) {
        const double phi = phase(rng), ep = unit(rng), e = unit(rng), ed = unit(rng);
        const double f = fisher::cfi(pipeline::run_pipeline(config(1, phi, ep, e, ed)));
        worst = std::max(worst, std::abs(f - closed_forms::closed_form_f1(phi, ep, e, ed)));
    }
    return make("f1_closed_form_vs_cfi", true, worst, 1e-9, fmt::format("{} random draws", draws));
}

Check legendre_distribution() {
    double worst = 0.0;
    for(int n = 1; n <= 6; ++n) {
        for(double phi : {0.0, 0.1, 0.4, 0.7853981633974483, 1.1, 1.5, 2.3}) {
            const auto sim = pipeline::run_pipeline(config(n, phi, 1.0, 1.0, 1.0));
            const auto p = pipeline::lossless_distribution(n, phi);
            double off_diagonal = 0.0;
            for(const auto &[o, v] : sim.entries())
                if(o.m + o.n != 2 * n) off_diagonal += v.probability;
            worst = std::max(worst, off_diagonal);
            for(int k = 0; k <= 2 * n; ++k) worst = std::max(worst, std::abs(sim.probability(k, 2 * n - k) - p[k]));
        }
    }
    return make("legendre_distribution_vs_pipeline", true, worst, 1e-12, "N = 1..6, lossless");
}

Check parity() {
    double worst = 0.0;
    const auto bs2 = optics::BeamSplitter::balanced(0, 1);
    for(int n = 1; n <= 6; ++n) {
        for(double phi : {0.0, 0.2, 0.6, 1.0, 1.4, 2.9}) {
            const auto out = optics::apply_beamsplitter(fock::hb_state(n, phi), bs2);
            double expectation = 0.0;
            for(const auto &[label, amp] : out.amplitudes()) expectation += (label[0] % 2 ? -1.0 : 1.0) * std::norm(amp);
            worst = std::max(worst, std::abs(expectation - pipeline::parity_expectation(n, phi)));
        }
    }
    return make("parity_vs_hb_state", true, worst, 1e-12, "N = 1..6");
}

Check block_vs_general() {
    double worst = 0.0;
    for(int n = 1; n <= 4; ++n)
        for(int i = 0; i <= 20; ++i) {
            const double eta = 0.05 * i;
            worst = std::max(worst, std::abs(bench::hb_lossy_qfi(n, eta) - bench::hb_lossy_qfi_general(n, eta)));
        }
    return make("qfi_block_vs_qfi_general", true, worst, 1e-9, "HB(N), N = 1..4, eta = 0, 0.05, ..., 1");
}

Check finite_differences(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> phase(0.1, 3.0), unit(0.3, 1.0);
    double worst = 0.0;
    for(int n = 1; n <= 4; ++n)
        for(int i = 0; i < 5; ++i) {
            const double phi = phase(rng), ep = unit(rng), e = unit(rng), ed = unit(rng);
            const auto report = fisher::finite_difference_check(
                [&](double p) { return pipeline::run_pipeline(config(n, p, ep, e, ed)); }, phi, 1e-4);
            worst = std::max(worst, report.max_abs_error);
        }
    return make("finite_difference_derivatives", true, worst, 1e-6, "h = 1e-4, N = 1..4");
}

Check normalization(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi), unit(0.0, 1.0);
    double worst = 0.0;
    for(int n = 1; n <= 4; ++n)
        for(int i = 0; i < 25; ++i) {
            const auto d = pipeline::run_pipeline(config(n, phase(rng), unit(rng), unit(rng), unit(rng)));
            worst = std::max({worst, std::abs(d.total_probability() - 1.0), std::abs(d.total_derivative())});
            for(const auto &[o, v] : d.entries()) worst = std::max(worst, std::abs(v.probability - d.probability(o.n, o.m)));
        }
    return make("normalization_and_symmetry", true, worst, 1e-10, "sum p = 1, sum dp = 0, p_mn = p_nm");
}

Check detector_models(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi), unit(0.0, 1.0);
    double worst = 0.0;
    for(int n = 1; n <= 3; ++n)
        for(int i = 0; i < 5; ++i) {
            auto cfg = config(n, phase(rng), unit(rng), unit(rng), unit(rng));
            const auto smeared = pipeline::run_pipeline(cfg);
            cfg.detection = optics::DetectionModel::ancilla_modes;
            const auto explicit_modes = pipeline::run_pipeline(cfg);
            std::set<Outcome> keys;
            for(const auto *d : {&smeared, &explicit_modes})
                for(const auto &[o, v] : d->entries()) keys.insert(o);
            for(const auto &o : keys) {
                worst = std::max(worst, std::abs(smeared.probability(o.m, o.n) - explicit_modes.probability(o.m, o.n)));
                worst = std::max(worst, std::abs(smeared.derivative(o.m, o.n) - explicit_modes.derivative(o.m, o.n)));
            }
        }
    return make("detector_smearing_vs_ancilla_modes", true, worst, 1e-12, "N = 1..3");
}

Check cutoff_sensitivity() {
    double spread = 0.0;
    for(int n = 2; n <= 4; ++n)
        for(double eta : {0.3, 0.7, 0.95}) {
            const auto state = fock::hb_state(n, 0.0);
            const auto lossy = optics::apply_loss_with_derivative(state, fock::number_derivative(state, 0),
                                                                  optics::LossChannel(eta, 0));
            const auto mixed = fock::flatten_with_derivative(lossy.blocks, lossy.weighted_derivatives);
            double lo = INFINITY, hi = -INFINITY;
            for(double cut : {1e-12, 1e-10, 1e-8}) {
                const double q = fisher::qfi_general(mixed.rho, mixed.drho, cut);
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
            spread = std::max(spread, hi - lo);
        }
    return make("qfi_general_cutoff_sensitivity", false, spread, 1e-9, "eigenvalue cutoff in {1e-12, 1e-10, 1e-8}");
}

std::vector<Check> p2_checks(bool strict) {
    std::vector<double> phis;
    for(int i = 0; i < 8; ++i) phis.push_back(0.1 + 0.4 * i);
    const std::vector<double> eff{0.0, 0.3, 0.6, 0.85, 1.0};
    const auto report = closed_forms::compare_p2(phis, eff);
    std::string detail;
    for(const auto &e : report.failing(1e-12))
        detail += fmt::format("{}p{}{}: max |closed-simulated| = {:.3e} at phi={:.2f} eta_p={:.2f} eta={:.2f} eta_d={:.2f}",
                              detail.empty() ? "" : "; ", e.outcome.m, e.outcome.n, e.max_abs_error, e.phi, e.eta_p, e.eta, e.eta_d);
    if(detail.empty()) detail = "all entries agree";
    std::vector<Check> out;
    out.push_back(make("p2_simulated_normalization", true, report.max_simulated_normalization_error, 1e-10,
                       fmt::format("{} grid points", report.grid_points)));
    out.push_back(make("p2_closed_form_vs_pipeline", strict, report.max_abs_error, 1e-12, detail));
    return out;
}

} // namespace

std::vector<Check> run_all(const Options &options) {
    std::mt19937_64 rng(options.seed);
    std::vector<Check> checks;
    checks.push_back(p1_exactness(rng, options.random_draws));
    checks.push_back(f1_exactness(rng, std::max(1, options.random_draws / 5)));
    checks.push_back(legendre_distribution());
    checks.push_back(parity());
    checks.push_back(block_vs_general());
    checks.push_back(finite_differences(rng));
    checks.push_back(normalization(rng));
    checks.push_back(detector_models(rng));
    checks.push_back(cutoff_sensitivity());
    for(auto &c : p2_checks(options.strict_p2)) checks.push_back(std::move(c));
    return checks;
}

} // namespace fisherlab::validation
