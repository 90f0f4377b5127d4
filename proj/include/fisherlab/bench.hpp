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

#include "fisherlab/pipeline.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fisherlab::bench {

/// F_SQL = 2 k eta eta_d: a coherent probe of mean photon number 2k through
/// the same lossy arm and detectors.
double sql(int k, double eta, double eta_d);

/// Controls the maximization of F over phi in [offset, pi/2 - offset]:
/// a uniform grid of step (pi/2)/grid_intervals, then golden-section
/// refinement around the best grid point.
struct PhaseSearch {
    int grid_intervals = 100;
    double tolerance = 1e-10;
    double offset = 1e-4;
};

struct BestPhase {
    double phase;
    double fisher;
};

/// Maximizes the classical Fisher information of a phase series.
BestPhase maximize_over_phase(const pipeline::PhaseSeries &series, const PhaseSearch &search = {});

struct AdvantageResult {
    int k;
    double eta_p, eta, eta_d;
    double best_phase;
    double f_best;
    double f_sql;
    double ratio; // f_best / f_sql; 0 when f_sql == 0
};

AdvantageResult advantage_ratio(int k, double eta_p, double eta, double eta_d, const PhaseSearch &search = {});

enum class Axis { eta_p, eta, eta_d };

std::string_view axis_name(Axis axis);
std::optional<Axis> parse_axis(std::string_view name);

struct Efficiencies {
    double eta_p = 1.0;
    double eta = 1.0;
    double eta_d = 1.0;
};

struct ThresholdResult {
    Axis axis;
    std::optional<double> threshold; // empty: the ratio never reaches 1 on [0, 1]
    double ratio_at_one;             // ratio with the scanned efficiency at 1
    int evaluations = 0;
};

/// Smallest value on `axis` with ratio >= 1, others held at `fixed`,
/// bisected to `tolerance`.
ThresholdResult threshold_search(int k, Axis axis, const Efficiencies &fixed, double tolerance = 1e-4,
                                 const PhaseSearch &search = {});

struct FeasibilityGrid {
    int k;
    std::array<std::vector<double>, 3> axes; // eta_p, eta, eta_d; each sorted in [0, 1]
    std::vector<double> ratios;              // index (i_p * n_eta + i_eta) * n_d + i_d
    std::vector<bool> feasible;

    [[nodiscard]] std::size_t index(std::size_t ip, std::size_t ie, std::size_t id) const;
    [[nodiscard]] bool is_feasible(std::size_t ip, std::size_t ie, std::size_t id) const {
        return feasible[index(ip, ie, id)];
    }
    /// Pairs of neighbouring cells where raising one efficiency turns a
    /// feasible cell infeasible.
    [[nodiscard]] std::size_t monotonicity_violations() const;
};

/// Evaluates ratio >= 1 on resolution^3 uniformly spaced cells of [0,1]^3.
FeasibilityGrid feasibility_grid(int k, int resolution, int threads = 1, const PhaseSearch &search = {});

/// Same as feasibility_grid on explicit axes.
FeasibilityGrid feasibility_grid(int k, const std::array<std::vector<double>, 3> &axes, int threads = 1,
                                 const PhaseSearch &search = {});

/// Block-diagonal QFI of HB(N) after loss eta in the phase arm.
double hb_lossy_qfi(int n, double eta);

/// The same quantity from the eigendecomposition of the flattened state.
double hb_lossy_qfi_general(int n, double eta);

std::vector<double> hb_lossy_qfi_curve(int n, const std::vector<double> &etas);

/// QFI of the balanced N00N state with `total_photons` after loss eta in the
/// phase arm, via the general mixed-state formula.
double noon_lossy_qfi(int total_photons, double eta);

std::vector<double> uniform_grid(double lo, double hi, int points);

} // namespace fisherlab::bench
