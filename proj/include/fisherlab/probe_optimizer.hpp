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

#pragma once

#include "fisherlab/fock.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fisherlab::probe {

/// Probe sum_k a_k |k, M-k>, phase on the first mode, loss eta on the first
/// mode. Coefficients need not be normalized.
fock::PureState probe_state(std::span<const std::complex<double>> coefficients);

/// QFI of the lossy probe from the lost-photon decomposition, where each
/// block's QFI is four times the variance of the first-mode photon number.
double probe_qfi(std::span<const std::complex<double>> coefficients, double eta);
double probe_qfi(std::span<const double> coefficients, double eta);

/// Same quantity through the general mixed-state formula.
double probe_qfi_general(std::span<const std::complex<double>> coefficients, double eta);

struct NelderMeadOptions {
    int max_evaluations = 40000;
    double initial_step = 0.2;
    double tolerance = 1e-13; // spread of simplex values
    int restarts = 4;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value; // minimum found
    int evaluations;
};

/// Minimizes f with the adaptive-parameter Nelder-Mead simplex method,
/// restarting from the best vertex while it keeps improving.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f, std::vector<double> x0,
                             const NelderMeadOptions &options = {});

struct ProbeOptions {
    int starts = 20;
    std::uint64_t seed = 0;
    int threads = 1;
    NelderMeadOptions local{};
};

struct ProbeResult {
    int total_photons;
    double eta;
    std::vector<double> coefficients; // unit norm, first nonzero entry positive
    double qfi;                       // general mixed-state QFI at `coefficients`
    double qfi_block;                 // objective value at `coefficients`
    std::vector<double> start_values; // best objective per start, in start order
    double spread;                    // max - min over start_values
    double complex_perturbation_gain; // best gain from random complex phases (should be <= 1e-8)
};

/// Multi-start maximization of the lossy QFI over real unit coefficient
/// vectors. Start 0 is the N00N state, start 1 the Holland-Burnett state
/// (even M), the remaining starts are seeded Gaussian directions.
ProbeResult optimal_probe_qfi(int total_photons, double eta, const ProbeOptions &options = {});

} // namespace fisherlab::probe
