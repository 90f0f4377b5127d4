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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                          exit 1 if any criterion fails
//   acceptance --known-failures 11,12   exit 0 if every failure is listed
//
// Listed failures are still printed as FAIL; the flag only changes the exit
// status.

#include "fisherlab/bench.hpp"
#include "fisherlab/closed_forms.hpp"
#include "fisherlab/fisher.hpp"
#include "fisherlab/fock.hpp"
#include "fisherlab/pipeline.hpp"
#include "fisherlab/probe_optimizer.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace fisherlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char *name;
    std::function<Verdict()> check;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double hb_qfi(int n) { return 2.0 * n * (n + 1); }

double eq5(double eta) { return 8.0 * eta * eta / (1.0 + eta * eta); }

std::vector<double> eta_grid() {
    std::vector<double> g;
    for(int i = 0; i <= 20; ++i) g.push_back(0.05 * i);
    return g;
}

optics::PipelineConfig config(int n, double phi, double ep, double e, double ed) {
    optics::PipelineConfig c;
    c.n = n;
    c.phi = phi;
    c.eta_p = ep;
    c.eta = e;
    c.eta_d = ed;
    return c;
}

double cfi_at(int n, double phi, double ep, double e, double ed) {
    return fisher::cfi(pipeline::run_pipeline(config(n, phi, ep, e, ed)));
}

Verdict lossless_qfi() {
    double worst = 0.0;
    for(int n = 1; n <= 8; ++n) {
        const auto s = fock::hb_state(n, 0.0);
        worst = std::max(worst, rel(fisher::qfi_pure(s, fock::number_derivative(s, 0)), hb_qfi(n)));
    }
    return {worst <= 1e-10, fmt::format("max rel err {:.2e} (tol 1e-10), N=1..8", worst)};
}

Verdict lossy_hb1() {
    double worst = 0.0;
    for(double eta : eta_grid()) worst = std::max(worst, std::abs(bench::hb_lossy_qfi(1, eta) - eq5(eta)));
    return {worst <= 1e-10, fmt::format("max abs err {:.2e} (tol 1e-10), 21 eta points", worst)};
}

Verdict block_vs_general() {
    double worst = 0.0;
    for(int n = 1; n <= 4; ++n)
        for(double eta : eta_grid())
            worst = std::max(worst, std::abs(bench::hb_lossy_qfi(n, eta) - bench::hb_lossy_qfi_general(n, eta)));
    return {worst <= 1e-9, fmt::format("max abs err {:.2e} (tol 1e-9), N=1..4", worst)};
}

Verdict pnrd_saturation() {
    double worst = 0.0;
    for(int n = 1; n <= 6; ++n) {
        double best = 0.0;
        for(int i = 1; i < 100; ++i) best = std::max(best, cfi_at(n, i * kPi / 200.0, 1, 1, 1));
        worst = std::max(worst, std::abs(best - hb_qfi(n)));
    }
    return {worst <= 1e-8, fmt::format("max |max_phi F - 2N(N+1)| = {:.2e} (tol 1e-8), N=1..6", worst)};
}

Verdict single_outcome() {
    double worst = 0.0;
    for(int n = 1; n <= 10; ++n) worst = std::max(worst, rel(pipeline::single_outcome_fi(n, 1e-3), hb_qfi(n)));
    return {worst <= 1e-3, fmt::format("max rel err {:.2e} (tol 1e-3) at phi=1e-3, N=1..10", worst)};
}

Verdict p1_exact() {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> u(0.0, 1.0), ph(0.0, 2.0 * kPi);
    double worst = 0.0;
    for(int t = 0; t < 1000; ++t) {
        const double phi = ph(rng), ep = u(rng), e = u(rng), ed = u(rng);
        const auto sim = pipeline::run_pipeline(config(1, phi, ep, e, ed));
        const auto p = closed_forms::closed_form_p1(phi, ep, e, ed);
        for(int m = 0; m <= 2; ++m)
            for(int n = 0; m + n <= 2; ++n) worst = std::max(worst, std::abs(sim.probability(m, n) - p.at(m, n)));
    }
    return {worst <= 1e-12, fmt::format("max entry err {:.2e} (tol 1e-12), 1000 draws", worst)};
}

Verdict f1_exact() {
    std::mt19937_64 rng(20260102);
    std::uniform_real_distribution<double> u(0.05, 1.0), ph(0.05, kPi / 2.0 - 0.05);
    double worst = 0.0, worst_peak = 0.0, excess = 0.0;
    for(int t = 0; t < 500; ++t) {
        const double phi = ph(rng), ep = u(rng), e = u(rng), ed = u(rng);
        worst = std::max(worst, std::abs(closed_forms::closed_form_f1(phi, ep, e, ed) - cfi_at(1, phi, ep, e, ed)));
        const double peak = 8.0 * ep * ep * ed * ed * e * e / (1.0 + e * e);
        worst_peak = std::max(worst_peak, std::abs(cfi_at(1, kPi / 4.0, ep, e, ed) - peak));
        for(int i = 1; i < 50; ++i) excess = std::max(excess, cfi_at(1, i * kPi / 100.0, ep, e, ed) - peak);
    }
    const bool pass = worst <= 1e-9 && worst_peak <= 1e-9 && excess <= 1e-9;
    return {pass, fmt::format("closed form vs pipeline {:.2e}, value at pi/4 vs formula {:.2e}, "
                              "largest excess over it {:.2e} (tol 1e-9), 500 draws",
                              worst, worst_peak, excess)};
}

Verdict preparation() {
    double worst_top = 0.0, worst_bottom = 0.0;
    for(int n = 1; n <= 3; ++n)
        for(double ep : {0.5, 0.7, 0.9, 0.99}) {
            worst_top = std::max(worst_top, rel(cfi_at(n, 1e-4, ep, 1, 1), hb_qfi(n) * std::pow(ep, n + 1)));
            worst_bottom = std::max(worst_bottom, rel(cfi_at(n, kPi / 2.0 - 1e-4, ep, 1, 1), hb_qfi(n) * std::pow(ep, 2 * n)));
        }
    return {worst_top <= 1e-3 && worst_bottom <= 1e-3,
            fmt::format("max rel err {:.2e} at phi=1e-4, {:.2e} at phi=pi/2-1e-4 (tol 1e-3), N=1..3", worst_top,
                        worst_bottom)};
}

Verdict symmetric_law() {
    double worst_law = 0.0, worst_product = 0.0;
    for(int n = 1; n <= 3; ++n) {
        for(auto [ep, ed] : {std::pair{0.9, 0.8}, {0.6, 0.95}, {0.75, 0.75}, {1.0, 0.85}})
            worst_law = std::max(worst_law, rel(cfi_at(n, 1e-4, ep, 1, ed), hb_qfi(n) * std::pow(ep * ed, n + 1)));
        for(double phi : {0.2, 0.7, 1.3})
            for(auto [a, b] : {std::pair{0.6, 0.9}, {0.8, 0.5}}) {
                const double f = cfi_at(n, phi, a, 1, b);
                worst_product = std::max({worst_product, std::abs(f - cfi_at(n, phi, b, 1, a)),
                                          std::abs(f - cfi_at(n, phi, 1, 1, a * b)),
                                          std::abs(f - cfi_at(n, phi, a * b, 1, 1))});
            }
    }
    return {worst_law <= 1e-3 && worst_product <= 1e-9,
            fmt::format("law rel err {:.2e} (tol 1e-3), product dependence {:.2e} (tol 1e-9)", worst_law, worst_product)};
}

Verdict hb2_thresholds() {
    const double expected[3] = {0.687, 0.135, 0.547};
    const bench::Axis axes[3] = {bench::Axis::eta_p, bench::Axis::eta, bench::Axis::eta_d};
    bool pass = true;
    std::string detail;
    for(int i = 0; i < 3; ++i) {
        const auto r = bench::threshold_search(2, axes[i], {});
        const bool ok = r.threshold && std::abs(*r.threshold - expected[i]) <= 0.002;
        pass = pass && ok;
        detail += fmt::format("{}={} (expected {} +- 0.002){}", bench::axis_name(axes[i]),
                              r.threshold ? fmt::format("{:.5f}", *r.threshold) : std::string("none"), expected[i],
                              i < 2 ? "; " : "");
    }
    return {pass, detail};
}

Verdict scenarios() {
    const double eta_d[2] = {0.60, 0.98};
    const double expected[2] = {0.91, 0.71};
    bool pass = true;
    std::string detail;
    for(int i = 0; i < 2; ++i) {
        const auto r = bench::threshold_search(2, bench::Axis::eta_p, {1.0, 0.95, eta_d[i]});
        const bool ok = r.threshold && std::abs(*r.threshold - expected[i]) <= 0.01;
        pass = pass && ok;
        detail += fmt::format("eta_d={:.2f}: eta_p={} (expected {} +- 0.01, {}){}", eta_d[i],
                              r.threshold ? fmt::format("{:.4f}", *r.threshold) : std::string("none"), expected[i],
                              ok ? "ok" : "off", i == 0 ? "; " : "");
    }
    return {pass, detail};
}

Verdict hb10_crossing() {
    // Smallest eta above which HB(10) stays above 20 eta, then bisected.
    auto above = [](double eta) { return bench::hb_lossy_qfi(10, eta) > 20.0 * eta; };
    double lo = 0.0, hi = 1.0;
    for(int i = 999; i >= 1; --i) {
        const double eta = i / 1000.0;
        if(!above(eta)) {
            lo = eta;
            hi = eta + 1e-3;
            break;
        }
    }
    while(hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        (above(mid) ? hi : lo) = mid;
    }
    return {std::abs(hi - 0.45) <= 0.02, fmt::format("crossing at eta={:.4f} (expected 0.45 +- 0.02); HB(10)(0.45)={:.3f} "
                                                     "vs 20*0.45=9",
                                                     hi, bench::hb_lossy_qfi(10, 0.45))};
}

Verdict feasibility_wall() {
    const auto g = bench::feasibility_grid(1, 21, 0);
    std::size_t feasible_below = 0, feasible = 0;
    for(std::size_t ip = 0; ip < 21; ++ip)
        for(std::size_t ie = 0; ie < 21; ++ie)
            for(std::size_t id = 0; id < 21; ++id) {
                if(!g.is_feasible(ip, ie, id)) continue;
                ++feasible;
                if(g.axes[2][id] < 0.5) ++feasible_below;
            }
    return {feasible_below == 0 && feasible > 0,
            fmt::format("{} feasible cells with eta_d < 0.5 ({} feasible of 9261), k=1", feasible_below, feasible)};
}

Verdict property_suite() {
    std::mt19937_64 rng(20260103);
    std::uniform_real_distribution<double> u(0.0, 1.0), ph(0.05, kPi - 0.05);
    double norm = 0.0, dsum = 0.0, fd = 0.0;
    for(int t = 0; t < 200; ++t) {
        const int n = 1 + t % 4;
        auto c = config(n, ph(rng), u(rng), u(rng), u(rng));
        const auto d = pipeline::run_pipeline(c);
        double s = 0.0, ds = 0.0;
        for(const auto &[o, v] : d.entries()) {
            s += v.probability;
            ds += v.derivative;
        }
        norm = std::max(norm, std::abs(s - 1.0));
        dsum = std::max(dsum, std::abs(ds));
        if(t % 4 == 0) {
            const fisher::DistributionEvaluator eval = [c](double phi) mutable {
                c.phi = phi;
                return pipeline::run_pipeline(c);
            };
            fd = std::max(fd, fisher::finite_difference_check(eval, c.phi, 1e-4).max_abs_error);
        }
    }
    double excess = -1e300;
    for(int n = 1; n <= 4; ++n)
        for(double eta : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
            const double q = bench::hb_lossy_qfi(n, eta);
            for(int i = 1; i < 100; ++i) excess = std::max(excess, cfi_at(n, i * kPi / 200.0, 1, eta, 1) - q);
        }
    double rise = -1e300;
    for(int n = 1; n <= 6; ++n) {
        double previous = 0.0;
        for(int i = 0; i <= 40; ++i) {
            const double q = bench::hb_lossy_qfi(n, 0.025 * i);
            if(i > 0) rise = std::max(rise, previous - q);
            previous = q;
        }
    }
    const bool pass = norm <= 1e-10 && dsum <= 1e-10 && fd <= 1e-6 && excess <= 1e-9 && rise <= 1e-10;
    return {pass, fmt::format("norm {:.1e}, deriv sum {:.1e}, finite diff {:.1e}, max CFI-QFI {:.1e}, "
                              "QFI increase under loss {:.1e}",
                              norm, dsum, fd, excess, rise)};
}

bool subset(const std::vector<bool> &a, const std::vector<bool> &b) {
    for(std::size_t i = 0; i < a.size(); ++i)
        if(a[i] && !b[i]) return false;
    return true;
}

Verdict p2_and_shapes() {
    std::vector<double> phis{0.1, 0.5, 0.9, 1.3, 1.7, 2.1, 2.5, 2.9, 3.3, 3.7};
    std::vector<double> eff{0.0, 0.25, 0.5, 0.75, 1.0};
    const auto a = closed_forms::compare_p2(phis, eff);
    const auto b = closed_forms::compare_p2(phis, eff);
    bool stable = a.entries.size() == b.entries.size() && a.max_abs_error == b.max_abs_error;
    for(std::size_t i = 0; stable && i < a.entries.size(); ++i)
        stable = a.entries[i].max_abs_error == b.entries[i].max_abs_error && a.entries[i].phi == b.entries[i].phi;
    const bool normalized = a.max_simulated_normalization_error <= 1e-10;
    std::string mismatched;
    for(const auto &e : a.failing(1e-12)) mismatched += fmt::format("{}p{}{}", mismatched.empty() ? "" : " ", e.outcome.m, e.outcome.n);

    // Region shape, k = 1 against k = 3 on the three axis lines through the
    // ideal point: the region extends along eta and shrinks along eta_p and
    // eta_d.
    const auto grid = bench::uniform_grid(0.0, 1.0, 101);
    const std::vector<double> one{1.0};
    auto region = [&](int k, int axis) {
        std::array<std::vector<double>, 3> axes{one, one, one};
        axes[axis] = grid;
        return bench::feasibility_grid(k, axes, 0).feasible;
    };
    auto edge = [&](const std::vector<bool> &f) {
        const auto it = std::find(f.begin(), f.end(), true);
        return it == f.end() ? std::string("none") : fmt::format("{:.2f}", grid[it - f.begin()]);
    };
    const char *names[3] = {"eta_p", "eta", "eta_d"};
    bool shape = true;
    std::string shapes;
    for(int axis = 0; axis < 3; ++axis) {
        const auto f1 = region(1, axis), f3 = region(3, axis);
        const bool ok = f1 != f3 && (axis == 1 ? subset(f1, f3) : subset(f3, f1));
        shape = shape && ok;
        shapes += fmt::format("{} edge k=1 {} k=3 {} ({}){}", names[axis], edge(f1), edge(f3),
                              ok ? (axis == 1 ? "extends" : "shrinks") : (axis == 1 ? "does not extend" : "does not shrink"),
                              axis < 2 ? ", " : "");
    }
    return {stable && normalized && shape,
            fmt::format("N=2 normalization {:.1e}, report stable={}, table entries off: {}; {}",
                        a.max_simulated_normalization_error, stable, mismatched.empty() ? "none" : mismatched, shapes)};
}

Verdict optimizer() {
    double lossless = 0.0, noon_like = 0.0, shortfall = -1e300;
    for(int m : {2, 4, 6, 10}) {
        probe::ProbeOptions opt;
        opt.starts = 6;
        const auto r = probe::optimal_probe_qfi(m, 1.0, opt);
        lossless = std::max(lossless, std::abs(r.qfi - double(m) * m));
        noon_like = std::max({noon_like, std::abs(std::abs(r.coefficients.front()) - std::sqrt(0.5)),
                              std::abs(std::abs(r.coefficients.back()) - std::sqrt(0.5))});
    }
    for(int m : {4, 6}) {
        probe::ProbeOptions opt;
        opt.starts = 10;
        for(int i = 1; i <= 20; ++i) {
            const double eta = 0.05 * i;
            const auto r = probe::optimal_probe_qfi(m, eta, opt);
            shortfall = std::max(shortfall, std::max(bench::hb_lossy_qfi(m / 2, eta), bench::noon_lossy_qfi(m, eta)) - r.qfi);
        }
    }
    const bool pass = lossless <= 1e-6 && noon_like <= 1e-3 && shortfall <= 1e-8;
    return {pass, fmt::format("|QFI - M^2| {:.1e} (tol 1e-6), N00N coefficient deviation {:.1e}, "
                              "max(HB, N00N) - optimal {:.1e} (tol 1e-8)",
                              lossless, noon_like, shortfall)};
}

std::set<int> parse_ids(const std::string &text) {
    std::set<int> ids;
    std::stringstream ss(text);
    std::string item;
    while(std::getline(ss, item, ','))
        if(!item.empty()) ids.insert(std::stoi(item));
    return ids;
}

} // namespace

int main(int argc, char **argv) {
    std::set<int> known;
    for(int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if(arg == "--known-failures" && i + 1 < argc) {
            known = parse_ids(argv[++i]);
        } else {
            fmt::print(stderr, "usage: acceptance [--known-failures 11,12]\n");
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "lossless HB QFI", lossless_qfi},
        {2, "lossy HB(1) QFI", lossy_hb1},
        {3, "block-diagonal vs general QFI", block_vs_general},
        {4, "PNRD saturation", pnrd_saturation},
        {5, "single-outcome limit", single_outcome},
        {6, "P1 exactness", p1_exact},
        {7, "F1 exactness", f1_exact},
        {8, "preparation formulas", preparation},
        {9, "symmetric imperfections", symmetric_law},
        {10, "HB(2) thresholds", hb2_thresholds},
        {11, "experimental scenarios", scenarios},
        {12, "HB(10) SQL crossing", hb10_crossing},
        {13, "HB(1) feasibility wall", feasibility_wall},
        {14, "property suite", property_suite},
        {15, "P2 report and region shapes", p2_and_shapes},
        {16, "optimizer sanity", optimizer},
    };

    std::vector<int> failed;
    for(const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch(const std::exception &e) {
            v = {false, fmt::format("exception: {}", e.what())};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print("{} {:>2} {:<30} {} [{:.1f}s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail, seconds);
        std::fflush(stdout);
        if(!v.pass) failed.push_back(c.id);
    }

    bool unexpected = false;
    for(int id : failed) unexpected = unexpected || !known.count(id);
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed.size(), criteria.size());
    if(!known.empty()) {
        for(int id : known)
            if(std::find(failed.begin(), failed.end(), id) == failed.end())
                fmt::print("note: criterion {} is listed as a known failure but passed\n", id);
        return unexpected ? 1 : 0;
    }
    return failed.empty() ? 0 : 1;
}
