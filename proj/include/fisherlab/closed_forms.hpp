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

#include "fisherlab/distribution.hpp"

#include <map>
#include <vector>

namespace fisherlab::closed_forms {

/// Reference outcome table p_mn for N = 1 or 2, symmetric in (m, n) and zero
/// outside m + n <= 2N.
struct ClosedFormMatrix {
    int n;
    std::map<Outcome, double> entries;

    [[nodiscard]] double at(int m, int k) const;
    [[nodiscard]] double sum() const;
};

ClosedFormMatrix closed_form_p1(double phi, double eta_p, double eta, double eta_d);

/// Verbatim transcription of the reference N = 2 table. Several entries are
/// known not to match the simulation; see compare_p2.
ClosedFormMatrix closed_form_p2(double phi, double eta_p, double eta, double eta_d);

/// 8 eta_p^2 eta_d^2 eta^2 (1 + eta^2) sin^2(2 phi) / (1 + eta^4 - 2 eta^2 cos 4 phi)
double closed_form_f1(double phi, double eta_p, double eta, double eta_d);

struct EntryDiscrepancy {
    Outcome outcome;
    double max_abs_error = 0.0;
    double phi = 0.0, eta_p = 0.0, eta = 0.0, eta_d = 0.0; // where the worst error occurred
    double closed_form = 0.0, simulated = 0.0;
};

struct P2Report {
    std::vector<EntryDiscrepancy> entries; // one per (m <= n) entry, ordered by outcome
    std::size_t grid_points = 0;
    double max_abs_error = 0.0;
    double max_simulated_normalization_error = 0.0;
    double max_closed_form_normalization_error = 0.0;

    /// Entries whose maximum error exceeds `tol`.
    [[nodiscard]] std::vector<EntryDiscrepancy> failing(double tol) const;
};

/// Compares the N = 2 table with the simulation over a tensor grid of
/// (phi, eta_p, eta, eta_d). The report is deterministic for a given grid.
P2Report compare_p2(const std::vector<double> &phis, const std::vector<double> &efficiencies);

} // namespace fisherlab::closed_forms
