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
#include "fisherlab/optics.hpp"

#include <complex>
#include <vector>

namespace fisherlab::pipeline {

/// Simulates the interferometer end to end:
///
///   |N>|N>  -> preparation loss eta_p on both inputs (exact binomial branches)
///           -> BS1 -> phase phi on mode 0 -> loss eta on mode 0
///           -> BS2 -> detectors of efficiency eta_d
///
/// Phase derivatives are carried alongside the state through every linear
/// stage, so the returned derivatives are analytic.
PhotonNumberDistribution run_pipeline(const optics::PipelineConfig &config);

/// p_mn(phi) of a fixed configuration as an exact trigonometric polynomial.
///
/// Each amplitude is a polynomial in exp(i phi) of degree <= 2N, so every
/// probability is a real trigonometric polynomial of degree <= 2N. The
/// amplitude coefficients are kept rather than the probability harmonics:
/// near a zero of p_mn the squared amplitude keeps its relative accuracy,
/// which a sum of O(1) harmonics does not.
class PhaseSeries {
public:
    explicit PhaseSeries(const optics::PipelineConfig &config);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] PhotonNumberDistribution at(double phi) const;
    /// cfi(at(phi)) without building the distribution.
    [[nodiscard]] double fisher_information(double phi) const;

private:
    struct Term {
        double weight;
        std::vector<std::complex<double>> coeffs; // index k multiplies exp(i k phi)
    };
    struct Entry {
        Outcome outcome; // before detector smearing
        std::vector<Term> terms;
    };
    struct Smear {
        std::size_t source;
        double factor;
    };

    // Final outcomes with their values, detector smearing applied.
    void evaluate(double phi, std::vector<double> &p, std::vector<double> &dp) const;

    int degree_;
    std::vector<Entry> entries_;
    std::vector<Outcome> outcomes_;
    std::vector<std::vector<Smear>> smearing_; // empty when detection is ideal
};

/// Lossless outcome probabilities on the anti-diagonal m + n = 2N, indexed by
/// the count n on the first detector: n! [P_N^(N-n)(cos phi)]^2 / (2N-n)! for
/// n <= N, mirrored by n -> 2N - n.
std::vector<double> lossless_distribution(int n, double phi);

/// <Pi_N> = P_N(cos 2 phi).
double parity_expectation(int n, double phi);

/// Fisher information of the binary measurement {|N>|N>, everything else}
/// with p = [P_N(cos phi)]^2. Throws SingularityError where p = 1.
double single_outcome_fi(int n, double phi);

} // namespace fisherlab::pipeline
