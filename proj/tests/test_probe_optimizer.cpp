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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fisherlab/bench.hpp"
#include "fisherlab/probe_optimizer.hpp"
#include "oracles/dense_fock.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fisherlab;
using namespace fisherlab::probe;

namespace {

constexpr double kPi = std::numbers::pi;

// Lossy probe QFI with an explicit environment mode, via the Lyapunov oracle.
double oracle_qfi(const std::vector<double> &a, double eta) {
    const int m = static_cast<int>(a.size()) - 1;
    double norm = 0.0;
    for(double v : a) norm += v * v;
    oracle::DenseState psi(3, m + 1);
    for(int k = 0; k <= m; ++k) psi.vector()[psi.index({k, m - k, 0})] = a[k] / std::sqrt(norm);
    auto dpsi = psi.number_derivative(0);
    const auto u = oracle::exchange_unitary(m + 1, std::acos(std::sqrt(eta)));
    psi.apply(u, 0, 2);
    dpsi.apply(u, 0, 2);
    const auto [rho, drho] = oracle::reduce_two_modes(psi, dpsi);
    return oracle::qfi_lyapunov(rho, drho);
}

std::vector<double> sphere(double t, double s) { return {std::cos(t), std::sin(t) * std::cos(s), std::sin(t) * std::sin(s)}; }

// Brute-force maximum over the unit sphere of three real coefficients,
// refined by repeated zooming of a uniform grid.
double scan_two_photon(double eta) {
    double best = -1.0, bt = 0.0, bs = 0.0;
    double t0 = 0.0, t1 = kPi, s0 = 0.0, s1 = 2.0 * kPi;
    for(int round = 0; round < 6; ++round) {
        const int cells = 120;
        for(int i = 0; i <= cells; ++i)
            for(int j = 0; j <= cells; ++j) {
                const double t = t0 + (t1 - t0) * i / cells;
                const double s = s0 + (s1 - s0) * j / cells;
                const double q = probe_qfi(std::span<const double>(sphere(t, s)), eta);
                if(q > best) {
                    best = q;
                    bt = t;
                    bs = s;
                }
            }
        const double dt = 4.0 * (t1 - t0) / cells, ds = 4.0 * (s1 - s0) / cells;
        t0 = bt - dt;
        t1 = bt + dt;
        s0 = bs - ds;
        s1 = bs + ds;
    }
    return best;
}

} // namespace

TEST_CASE("probe states") {
    const std::vector<std::complex<double>> a{1.0, 0.0, 1.0};
    const auto s = probe_state(a);
    CHECK(s.num_modes() == 2);
    CHECK(s.size() == 2);
    CHECK(std::abs(s.amplitude(fock::OccupationLabel{2, 0}) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK_THROWS_AS(probe_state(std::vector<std::complex<double>>{0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(probe_state(std::vector<std::complex<double>>{}), std::invalid_argument);
}

TEST_CASE("probe QFI engines agree") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for(int m = 1; m <= 6; ++m)
        for(double eta : {0.2, 0.6, 0.95}) {
            std::vector<double> a(m + 1);
            std::vector<std::complex<double>> c(m + 1);
            for(int k = 0; k <= m; ++k) {
                a[k] = g(rng);
                c[k] = a[k];
            }
            const double block = probe_qfi(std::span<const double>(a), eta);
            CHECK(block == doctest::Approx(probe_qfi(std::span<const std::complex<double>>(c), eta)).epsilon(1e-13));
            CHECK(std::abs(block - probe_qfi_general(c, eta)) < 1e-9);
            if(m <= 4) CHECK(std::abs(block - oracle_qfi(a, eta)) < 1e-8);
        }
    // N00N and HB references
    for(double eta : {0.3, 0.8}) {
        CHECK(probe_qfi(std::span<const double>(std::vector<double>{1, 0, 0, 0, 1}), eta) ==
              doctest::Approx(bench::noon_lossy_qfi(4, eta)).epsilon(1e-12));
        const auto hb = fock::hb_state(2, 0.0);
        std::vector<double> h(5, 0.0);
        for(const auto &[l, v] : hb.amplitudes()) h[l[0]] = v.real();
        CHECK(probe_qfi(std::span<const double>(h), eta) == doctest::Approx(bench::hb_lossy_qfi(2, eta)).epsilon(1e-12));
    }
}

TEST_CASE("Nelder-Mead on test functions") {
    const auto quad = nelder_mead(
        [](std::span<const double> x) { return (x[0] - 1.0) * (x[0] - 1.0) + 3.0 * (x[1] + 2.0) * (x[1] + 2.0) + 0.5; },
        {0.0, 0.0});
    CHECK(quad.value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(quad.x[0] - 1.0) < 1e-5);
    CHECK(std::abs(quad.x[1] + 2.0) < 1e-5);
    const auto rosen = nelder_mead(
        [](std::span<const double> x) {
            return 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1.0 - x[0]) * (1.0 - x[0]);
        },
        {-1.2, 1.0});
    CHECK(std::abs(rosen.x[0] - 1.0) < 1e-4);
    CHECK(std::abs(rosen.x[1] - 1.0) < 1e-4);
    CHECK(rosen.evaluations > 0);
    CHECK_THROWS_AS(nelder_mead([](std::span<const double>) { return 0.0; }, {}), std::invalid_argument);
}

TEST_CASE("lossless optimum is N00N") {
    for(int m : {2, 4, 7, 10}) {
        ProbeOptions opt;
        opt.starts = 6;
        const auto r = optimal_probe_qfi(m, 1.0, opt);
        CHECK(std::abs(r.qfi - double(m) * m) <= 1e-6);
        REQUIRE(r.coefficients.size() == static_cast<std::size_t>(m + 1));
        CHECK(std::abs(std::abs(r.coefficients.front()) - 1.0 / std::sqrt(2.0)) < 1e-3);
        CHECK(std::abs(std::abs(r.coefficients.back()) - 1.0 / std::sqrt(2.0)) < 1e-3);
        double norm = 0.0;
        for(double v : r.coefficients) norm += v * v;
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("optimum dominates HB and N00N") {
    for(int m : {4, 6}) {
        ProbeOptions opt;
        opt.starts = 8;
        for(int i = 1; i <= 10; ++i) {
            const double eta = 0.1 * i;
            const auto r = optimal_probe_qfi(m, eta, opt);
            CHECK(r.qfi >= bench::hb_lossy_qfi(m / 2, eta) - 1e-8);
            CHECK(r.qfi >= bench::noon_lossy_qfi(m, eta) - 1e-8);
            CHECK(std::abs(r.qfi - r.qfi_block) < 1e-9);
            CHECK(r.complex_perturbation_gain <= 1e-8);
            CHECK(r.start_values.size() == 8);
            CHECK(r.spread >= 0.0);
        }
    }
}

TEST_CASE("two-photon optimum matches a brute-force scan") {
    for(double eta : {0.25, 0.5, 0.8}) {
        const auto r = optimal_probe_qfi(2, eta);
        CHECK(std::abs(r.qfi - scan_two_photon(eta)) <= 1e-6);
        CHECK(std::abs(r.qfi - oracle_qfi(r.coefficients, eta)) <= 1e-8);
    }
}

TEST_CASE("optimizer is reproducible") {
    ProbeOptions one;
    one.starts = 5;
    one.seed = 42;
    ProbeOptions four = one;
    four.threads = 4;
    const auto a = optimal_probe_qfi(5, 0.6, one);
    const auto b = optimal_probe_qfi(5, 0.6, four);
    CHECK(a.coefficients == b.coefficients);
    CHECK(a.start_values == b.start_values);
    CHECK(a.qfi == b.qfi);
}

TEST_CASE("optimizer argument checks") {
    CHECK_THROWS_AS(optimal_probe_qfi(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(optimal_probe_qfi(21, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(optimal_probe_qfi(4, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(optimal_probe_qfi(4, -0.1), std::invalid_argument);
    ProbeOptions none;
    none.starts = 0;
    CHECK_THROWS_AS(optimal_probe_qfi(4, 0.5, none), std::invalid_argument);
    // no light, no information
    CHECK(optimal_probe_qfi(3, 0.0).qfi == doctest::Approx(0.0).scale(1.0));
}
