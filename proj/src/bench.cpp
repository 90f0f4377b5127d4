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

#include "fisherlab/bench.hpp"

#include "fisherlab/fisher.hpp"
#include "fisherlab/parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fisherlab::bench {

namespace {

void check_efficiency(double v, const char *what) {
    if(!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

// F(phi), stepping off isolated points where an outcome probability vanishes
// with a finite slope. The Fisher information is continuous there.
double fisher_at(const pipeline::PhaseSeries &series, double phi) {
    for(double shift : {0.0, 1e-7, -1e-7, 1e-6, -1e-6, 1e-5, -1e-5, 1e-4, -1e-4}) {
        try {
            return series.fisher_information(phi + shift);
        } catch(const fisher::SingularityError &) {
        }
    }
    return series.fisher_information(phi + 1e-3);
}

} // namespace

double sql(int k, double eta, double eta_d) {
    if(k < 1) throw std::invalid_argument("sql: k must be at least 1");
    check_efficiency(eta, "eta");
    check_efficiency(eta_d, "eta_d");
    return 2.0 * k * eta * eta_d;
}

BestPhase maximize_over_phase(const pipeline::PhaseSeries &series, const PhaseSearch &search) {
    if(search.grid_intervals < 2) throw std::invalid_argument("PhaseSearch: need at least two grid intervals");
    const double lo = search.offset;
    const double hi = std::numbers::pi / 2.0 - search.offset;
    const double step = (std::numbers::pi / 2.0) / search.grid_intervals;
    auto grid_phase = [&](int j) { return std::clamp(j * step, lo, hi); };

    int best_j = 0;
    double best_f = -1.0;
    for(int j = 0; j <= search.grid_intervals; ++j) {
        const double f = fisher_at(series, grid_phase(j));
        if(f > best_f) {
            best_f = f;
            best_j = j;
        }
    }
    BestPhase best{grid_phase(best_j), best_f};

    // Golden-section search on the bracketing grid cells.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = grid_phase(std::max(0, best_j - 1));
    double b = grid_phase(std::min(search.grid_intervals, best_j + 1));
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fisher_at(series, c);
    double fd = fisher_at(series, d);
    while(b - a > search.tolerance) {
        if(fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fisher_at(series, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fisher_at(series, d);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fm = fisher_at(series, mid);
    if(fm > best.fisher) best = {mid, fm};
    return best;
}

AdvantageResult advantage_ratio(int k, double eta_p, double eta, double eta_d, const PhaseSearch &search) {
    if(k < 1) throw std::invalid_argument("advantage_ratio: k must be at least 1");
    check_efficiency(eta_p, "eta_p");
    optics::PipelineConfig cfg;
    cfg.n = k;
    cfg.eta_p = eta_p;
    cfg.eta = eta;
    cfg.eta_d = eta_d;
    const pipeline::PhaseSeries series(cfg);
    const auto best = maximize_over_phase(series, search);
    const double f_sql = sql(k, eta, eta_d);
    const double ratio = f_sql > 0.0 ? best.fisher / f_sql : 0.0;
    return {k, eta_p, eta, eta_d, best.phase, best.fisher, f_sql, ratio};
}

std::string_view axis_name(Axis axis) {
    switch(axis) {
    case Axis::eta_p: return "eta_p";
    case Axis::eta: return "eta";
    case Axis::eta_d: return "eta_d";
    }
    return "?";
}

std::optional<Axis> parse_axis(std::string_view name) {
    if(name == "eta_p" || name == "eta-p") return Axis::eta_p;
    if(name == "eta") return Axis::eta;
    if(name == "eta_d" || name == "eta-d") return Axis::eta_d;
    return std::nullopt;
}

ThresholdResult threshold_search(int k, Axis axis, const Efficiencies &fixed, double tolerance,
                                 const PhaseSearch &search) {
    if(!(tolerance > 0.0)) throw std::invalid_argument("threshold_search: tolerance must be positive");
    ThresholdResult result{axis, std::nullopt, 0.0, 0};
    auto ratio_at = [&](double v) {
        Efficiencies e = fixed;
        switch(axis) {
        case Axis::eta_p: e.eta_p = v; break;
        case Axis::eta: e.eta = v; break;
        case Axis::eta_d: e.eta_d = v; break;
        }
        ++result.evaluations;
        return advantage_ratio(k, e.eta_p, e.eta, e.eta_d, search).ratio;
    };
    result.ratio_at_one = ratio_at(1.0);
    if(result.ratio_at_one < 1.0) return result;
    if(ratio_at(0.0) >= 1.0) {
        result.threshold = 0.0;
        return result;
    }
    double lo = 0.0, hi = 1.0; // ratio(lo) < 1 <= ratio(hi)
    while(hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if(ratio_at(mid) >= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    result.threshold = hi;
    return result;
}

std::size_t FeasibilityGrid::index(std::size_t ip, std::size_t ie, std::size_t id) const {
    return (ip * axes[1].size() + ie) * axes[2].size() + id;
}

std::size_t FeasibilityGrid::monotonicity_violations() const {
    std::size_t violations = 0;
    const std::size_t np = axes[0].size(), ne = axes[1].size(), nd = axes[2].size();
    for(std::size_t ip = 0; ip < np; ++ip)
        for(std::size_t ie = 0; ie < ne; ++ie)
            for(std::size_t id = 0; id < nd; ++id) {
                if(!is_feasible(ip, ie, id)) continue;
                if(ip + 1 < np && !is_feasible(ip + 1, ie, id)) ++violations;
                if(ie + 1 < ne && !is_feasible(ip, ie + 1, id)) ++violations;
                if(id + 1 < nd && !is_feasible(ip, ie, id + 1)) ++violations;
            }
    return violations;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if(points < 0) throw std::invalid_argument("uniform_grid: negative point count");
    std::vector<double> out;
    if(points == 1) out.push_back(lo);
    for(int i = 0; i < points && points > 1; ++i) out.push_back(i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1));
    return out;
}

FeasibilityGrid feasibility_grid(int k, int resolution, int threads, const PhaseSearch &search) {
    if(resolution < 2 || resolution > 101) throw std::invalid_argument("feasibility_grid: resolution must be in [2, 101]");
    const auto axis = uniform_grid(0.0, 1.0, resolution);
    return feasibility_grid(k, {axis, axis, axis}, threads, search);
}

FeasibilityGrid feasibility_grid(int k, const std::array<std::vector<double>, 3> &axes, int threads,
                                 const PhaseSearch &search) {
    for(const auto &a : axes) {
        if(!std::is_sorted(a.begin(), a.end())) throw std::invalid_argument("feasibility_grid: axes must be sorted");
        for(double v : a) check_efficiency(v, "grid value");
    }
    FeasibilityGrid grid{k, axes, {}, {}};
    const std::size_t cells = axes[0].size() * axes[1].size() * axes[2].size();
    grid.ratios.assign(cells, 0.0);
    parallel_for(cells, threads, [&](std::size_t idx) {
        const std::size_t id = idx % axes[2].size();
        const std::size_t ie = (idx / axes[2].size()) % axes[1].size();
        const std::size_t ip = idx / (axes[2].size() * axes[1].size());
        grid.ratios[idx] = advantage_ratio(k, axes[0][ip], axes[1][ie], axes[2][id], search).ratio;
    });
    grid.feasible.resize(cells);
    for(std::size_t i = 0; i < cells; ++i) grid.feasible[i] = grid.ratios[i] >= 1.0;
    return grid;
}

namespace {

optics::LossyState lossy_hb(int n, double eta) {
    const auto state = fock::hb_state(n, 0.0);
    const auto deriv = fock::number_derivative(state, 0);
    return optics::apply_loss_with_derivative(state, deriv, optics::LossChannel(eta, 0));
}

} // namespace

double hb_lossy_qfi(int n, double eta) {
    const auto lossy = lossy_hb(n, eta);
    return fisher::qfi_block(lossy.blocks, lossy.weighted_derivatives);
}

double hb_lossy_qfi_general(int n, double eta) {
    const auto lossy = lossy_hb(n, eta);
    const auto mixed = fock::flatten_with_derivative(lossy.blocks, lossy.weighted_derivatives);
    return fisher::qfi_general(mixed.rho, mixed.drho);
}

std::vector<double> hb_lossy_qfi_curve(int n, const std::vector<double> &etas) {
    if(n < 1 || n > 10) throw std::invalid_argument("hb_lossy_qfi_curve: N must be in [1, 10]");
    std::vector<double> out;
    out.reserve(etas.size());
    for(double eta : etas) out.push_back(hb_lossy_qfi(n, eta));
    return out;
}

double noon_lossy_qfi(int total_photons, double eta) {
    const auto state = fock::noon_state(total_photons);
    const auto deriv = fock::number_derivative(state, 0);
    const auto lossy = optics::apply_loss_with_derivative(state, deriv, optics::LossChannel(eta, 0));
    const auto mixed = fock::flatten_with_derivative(lossy.blocks, lossy.weighted_derivatives);
    return fisher::qfi_general(mixed.rho, mixed.drho);
}

} // namespace fisherlab::bench
