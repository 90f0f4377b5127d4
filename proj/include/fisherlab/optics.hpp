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
#include "fisherlab/fock.hpp"

#include <array>
#include <utility>
#include <vector>

namespace fisherlab::optics {

using fock::Complex;

/// Two-mode linear-optical element.
///
/// `matrix[i][j]` is the coefficient of output creation operator j in the
/// image of input creation operator i, where index 0 is `modes.first` and 1 is
/// `modes.second`. Output modes reuse the input mode indices.
class BeamSplitter {
public:
    using Matrix = std::array<std::array<Complex, 2>, 2>;

    BeamSplitter(int first, int second, const Matrix &matrix);

    /// sqrt(2) a^dag -> a^dag + b^dag, sqrt(2) b^dag -> a^dag - b^dag.
    static BeamSplitter balanced(int first, int second);
    /// exp(i theta (a^dag b + a b^dag)) with eta = cos^2(theta):
    /// a^dag -> cos(theta) a^dag + i sin(theta) b^dag.
    static BeamSplitter generator(int first, int second, double eta);

    [[nodiscard]] std::pair<int, int> modes() const { return modes_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] double transmissivity() const { return std::norm(matrix_[0][0]); }
    [[nodiscard]] double theta() const;

private:
    std::pair<int, int> modes_;
    Matrix matrix_;
};

/// c^dag -> sqrt(eta) f^dag + sqrt(1 - eta) e^dag with e an inaccessible
/// environment mode. The surviving mode keeps the index of the target.
struct LossChannel {
    LossChannel(double transmissivity, int target_mode);
    double transmissivity;
    int target_mode;
};

enum class DetectionModel {
    binomial_smearing, // default: classical post-processing of the count distribution
    ancilla_modes,     // explicit vacuum ancillas and beam splitters, traced out
};

/// Full parameterization of the twin-Fock interferometer.
struct PipelineConfig {
    int n = 1;
    double phi = 0.0;
    double eta_p = 1.0; // preparation efficiency, per input mode
    double eta = 1.0;   // transmissivity of the phase arm
    double eta_d = 1.0; // detector efficiency
    BeamSplitter bs1 = BeamSplitter::balanced(0, 1);
    BeamSplitter bs2 = BeamSplitter::balanced(0, 1);
    DetectionModel detection = DetectionModel::binomial_smearing;

    void validate() const;
};

fock::PureState apply_beamsplitter(const fock::PureState &state, const BeamSplitter &bs);

/// Multiplies the amplitude of each label by exp(i phi n_mode).
fock::PureState apply_phase(const fock::PureState &state, int mode, double phi);

/// Splits the state by the number of photons lost from the target mode.
/// Blocks that carry no amplitude are omitted.
fock::BlockDiagonalState apply_loss_blocks(const fock::PureState &state, const LossChannel &channel);

/// A lossy state plus the phase derivatives of its weighted blocks
/// sqrt(w_m)|psi_m>, index-aligned with `blocks.blocks()`.
struct LossyState {
    fock::BlockDiagonalState blocks;
    std::vector<fock::PureState> weighted_derivatives;
};

LossyState apply_loss_with_derivative(const fock::PureState &state, const fock::PureState &deriv,
                                      const LossChannel &channel);

/// Probability of each photon number after a Fock state |N> passes an
/// efficiency-eta_p beam splitter: index n holds C(N,n) eta^n (1-eta)^(N-n).
std::vector<double> binomial_weights(int n, double eta);

/// Single-mode diagonal mixture sum_n C(N,n) eta_p^n (1-eta_p)^(N-n) |n><n|.
fock::DensityOperator binomial_preparation(int n, double eta_p);

/// Detector inefficiency as binomial thinning of both count registers.
PhotonNumberDistribution detector_smearing(const PhotonNumberDistribution &dist, double eta_d);

} // namespace fisherlab::optics
