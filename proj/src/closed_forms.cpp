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

#include "fisherlab/closed_forms.hpp"

#include "fisherlab/pipeline.hpp"

#include <cmath>

namespace fisherlab::closed_forms {

double ClosedFormMatrix::at(int m, int k) const {
    auto it = entries.find(Outcome{m, k});
    return it == entries.end() ? 0.0 : it->second;
}

double ClosedFormMatrix::sum() const {
    double s = 0.0;
    for(const auto &[o, v] : entries) s += v;
    return s;
}

namespace {

void set_symmetric(ClosedFormMatrix &mat, int m, int k, double value) {
    mat.entries[Outcome{m, k}] = value;
    mat.entries[Outcome{k, m}] = value;
}

} // namespace

ClosedFormMatrix closed_form_p1(double phi, double eta_p, double eta, double eta_d) {
    const double x = eta_p * eta_d;
    const double x2 = x * x;
    const double c2 = std::cos(2.0 * phi);
    const double e2 = eta * eta;
    ClosedFormMatrix mat{1, {}};
    set_symmetric(mat, 0, 0, 1.0 - (1.0 + eta) * x + (1.0 + e2) / 2.0 * x2);
    set_symmetric(mat, 0, 1, (1.0 + eta) / 2.0 * x - (1.0 + e2) / 2.0 * x2);
    set_symmetric(mat, 0, 2, (1.0 + e2 - 2.0 * eta * c2) / 8.0 * x2);
    set_symmetric(mat, 1, 1, (1.0 + e2 + 2.0 * eta * c2) / 4.0 * x2);
    return mat;
}

ClosedFormMatrix closed_form_p2(double phi, double eta_p, double eta, double eta_d) {
    const double x = eta_p * eta_d;
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const double c2 = std::cos(2.0 * phi);
    const double c4 = std::cos(4.0 * phi);
    const double e = eta, e2 = e * e, e3 = e2 * e, e4 = e3 * e;
    const double fringe = 1.0 + e2 - 2.0 * e * c2;
    ClosedFormMatrix mat{2, {}};
    set_symmetric(mat, 0, 0,
                  1.0 - 2.0 * (1.0 + e) * x + (5.0 + 2.0 * e + 5.0 * e2) / 2.0 * x2 -
                      (3.0 + e + e2 + 3.0 * e3) / 2.0 * x3 + (3.0 + 3.0 * e2 + 2.0 * e4) / 8.0 * x4);
    set_symmetric(mat, 0, 1,
                  (1.0 + e) * x - (5.0 + 2.0 * e + 5.0 * e2) / 2.0 * x2 + (3.0 + e + e2 + 3.0 * e3) / 4.0 * x3 -
                      (3.0 + 3.0 * e2 + 2.0 * e4) / 4.0 * x4);
    set_symmetric(mat, 0, 2,
                  (5.0 + (4.0 - 6.0 * c2) * e + 5.0 * e2) / 8.0 * x2 -
                      (9.0 + (5.0 - 6.0 * c2) * e * (1.0 + e) + 9.0 * e3) / 8.0 * x3 -
                      (9.0 + 10.0 * e2 + 9.0 * e4 - 6.0 * e * (1.0 + e2) * c2) / 16.0 * x4);
    set_symmetric(mat, 0, 3,
                  3.0 * (1.0 + e) * fringe / 16.0 * x3 - 3.0 * (1.0 + e2) * fringe / 16.0 * x4);
    set_symmetric(mat, 0, 4, 3.0 / 128.0 * (1.0 + e) * fringe * fringe * x4);
    set_symmetric(mat, 1, 1,
                  (5.0 + 6.0 * c2 * e + 5.0 * e2) / 8.0 * x2 -
                      (9.0 + (1.0 + 6.0 * c2) * e * (1.0 + e) + 9.0 * e3) / 8.0 * x3 -
                      (9.0 + 2.0 * e2 + 9.0 * e4 + 6.0 * e * (1.0 + e2) * c2) / 16.0 * x4);
    set_symmetric(mat, 1, 2,
                  (9.0 + e + e2 + 9.0 * e3 + 6.0 * e * (1.0 + e) * c2) / 16.0 * x3 +
                      (9.0 + 2.0 * e2 + 9.0 * e4 + 6.0 * e * (1.0 + e2) * c2) / 16.0 * x4);
    // The reference factor reads (1 + eta^4 - 2 eta cos 2phi); kept as printed.
    set_symmetric(mat, 1, 3, 3.0 / 32.0 * (1.0 + e4 - 2.0 * e * c2) * x4);
    set_symmetric(mat, 2, 2,
                  (9.0 + 4.0 * e2 + 9.0 * e4 + 12.0 * (e + e3) * c2 + 18.0 * e2 * c4) / 64.0 * x4);
    return mat;
}

double closed_form_f1(double phi, double eta_p, double eta, double eta_d) {
    const double s2 = std::sin(2.0 * phi);
    const double e2 = eta * eta;
    const double num = 8.0 * eta_p * eta_p * eta_d * eta_d * e2 * (1.0 + e2) * s2 * s2;
    const double den = 1.0 + e2 * e2 - 2.0 * e2 * std::cos(4.0 * phi);
    if(num == 0.0) return 0.0;
    return num / den;
}

std::vector<EntryDiscrepancy> P2Report::failing(double tol) const {
    std::vector<EntryDiscrepancy> out;
    for(const auto &e : entries)
        if(e.max_abs_error > tol) out.push_back(e);
    return out;
}

P2Report compare_p2(const std::vector<double> &phis, const std::vector<double> &efficiencies) {
    P2Report report;
    std::map<Outcome, EntryDiscrepancy> worst;
    for(int m = 0; m <= 4; ++m)
        for(int k = m; m + k <= 4; ++k) worst[Outcome{m, k}] = EntryDiscrepancy{Outcome{m, k}};
    for(double phi : phis) {
        for(double eta_p : efficiencies) {
            for(double eta : efficiencies) {
                for(double eta_d : efficiencies) {
                    optics::PipelineConfig cfg;
                    cfg.n = 2;
                    cfg.phi = phi;
                    cfg.eta_p = eta_p;
                    cfg.eta = eta;
                    cfg.eta_d = eta_d;
                    const auto sim = pipeline::run_pipeline(cfg);
                    const auto table = closed_form_p2(phi, eta_p, eta, eta_d);
                    ++report.grid_points;
                    report.max_simulated_normalization_error =
                        std::max(report.max_simulated_normalization_error, std::abs(sim.total_probability() - 1.0));
                    report.max_closed_form_normalization_error =
                        std::max(report.max_closed_form_normalization_error, std::abs(table.sum() - 1.0));
                    for(auto &[o, d] : worst) {
                        const double exact = sim.probability(o.m, o.n);
                        const double printed = table.at(o.m, o.n);
                        const double err = std::abs(exact - printed);
                        if(err > d.max_abs_error || report.grid_points == 1) {
                            d.max_abs_error = std::max(d.max_abs_error, err);
                            d.phi = phi;
                            d.eta_p = eta_p;
                            d.eta = eta;
                            d.eta_d = eta_d;
                            d.closed_form = printed;
                            d.simulated = exact;
                        }
                    }
                }
            }
        }
    }
    for(const auto &[o, d] : worst) {
        report.entries.push_back(d);
        report.max_abs_error = std::max(report.max_abs_error, d.max_abs_error);
    }
    return report;
}

} // namespace fisherlab::closed_forms
