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

#include <compare>
#include <map>

namespace fisherlab {

/// Joint click pattern of the two number-resolving detectors.
struct Outcome {
    int m; // photons counted on the first output mode
    int n; // photons counted on the second output mode
    friend auto operator<=>(const Outcome &, const Outcome &) = default;
};

struct OutcomeValue {
    double probability;
    double derivative; // d p / d phi, per radian
};

/// Outcome probabilities p_mn together with their phase derivatives.
///
/// Construction checks sum(p) = 1 and sum(dp) = 0 within 1e-10 and clamps
/// probabilities in [-1e-12, 0) to zero. Anything more negative is rejected.
class PhotonNumberDistribution {
public:
    PhotonNumberDistribution(double phase, std::map<Outcome, OutcomeValue> entries);

    [[nodiscard]] double phase() const { return phase_; }
    [[nodiscard]] const std::map<Outcome, OutcomeValue> &entries() const { return entries_; }
    [[nodiscard]] double probability(int m, int n) const;
    [[nodiscard]] double derivative(int m, int n) const;
    [[nodiscard]] double total_probability() const;
    [[nodiscard]] double total_derivative() const;

private:
    double phase_;
    std::map<Outcome, OutcomeValue> entries_;
};

} // namespace fisherlab
