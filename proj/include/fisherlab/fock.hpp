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

#include <Eigen/Dense>

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fisherlab::fock {

using Complex = std::complex<double>;

inline constexpr double kPruneThreshold = 1e-15;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr int kMaxModes = 8;

/// Photon counts per mode, e.g. |2, 0> on two modes.
class OccupationLabel {
public:
    OccupationLabel() = default;
    OccupationLabel(std::initializer_list<int> counts);
    explicit OccupationLabel(std::span<const int> counts);

    [[nodiscard]] int num_modes() const { return size_; }
    [[nodiscard]] int operator[](int mode) const { return counts_[static_cast<std::size_t>(mode)]; }
    [[nodiscard]] int total() const;
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] OccupationLabel with(int mode, int count) const;
    [[nodiscard]] OccupationLabel appended(int extra_modes) const;

    friend bool operator==(const OccupationLabel &, const OccupationLabel &) = default;
    friend std::strong_ordering operator<=>(const OccupationLabel &a, const OccupationLabel &b);

private:
    std::array<std::uint16_t, kMaxModes> counts_{};
    int size_ = 0;
};

using AmplitudeMap = std::map<OccupationLabel, Complex>;

enum class Normalization { checked, unnormalized };

/// Sparse pure state over occupation labels with a fixed photon cutoff.
///
/// Amplitudes below kPruneThreshold in modulus are dropped on construction.
/// With Normalization::checked the squared norm must equal 1 within
/// kNormTolerance; derivative states are built with Normalization::unnormalized.
class PureState {
public:
    PureState(int num_modes, int cutoff, AmplitudeMap amplitudes,
              Normalization norm = Normalization::checked);

    [[nodiscard]] int num_modes() const { return num_modes_; }
    [[nodiscard]] int cutoff() const { return cutoff_; }
    [[nodiscard]] bool is_normalized() const { return norm_ == Normalization::checked; }
    [[nodiscard]] const AmplitudeMap &amplitudes() const { return amplitudes_; }
    [[nodiscard]] Complex amplitude(const OccupationLabel &label) const;
    [[nodiscard]] double norm_squared() const;
    [[nodiscard]] std::size_t size() const { return amplitudes_.size(); }

    /// Returns this state scaled by `factor`, flagged unnormalized.
    [[nodiscard]] PureState scaled(Complex factor) const;
    /// Returns the state divided by its norm. Throws on the zero vector.
    [[nodiscard]] PureState normalized() const;
    /// Appends `extra` vacuum modes.
    [[nodiscard]] PureState with_vacuum_modes(int extra) const;

private:
    int num_modes_;
    int cutoff_;
    Normalization norm_;
    AmplitudeMap amplitudes_;
};

/// |N>|N>
PureState twin_fock(int n);

/// Holland-Burnett state sum_n A_n |2n, 2N-2n> with A_n real-positive times
/// exp(2 i n phi). The phase is carried by the first mode.
PureState hb_state(int n, double phi);

/// Balanced N00N state (|N,0> + |0,N>)/sqrt(2).
PureState noon_state(int n);

/// Multiplies each amplitude by i * (occupation of `mode`): the phase
/// derivative when the phase enters as exp(i phi n_mode).
PureState number_derivative(const PureState &state, int mode);

/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const PureState &a, const PureState &b);

/// Hermitian trace-one matrix on a lexicographically ordered basis.
class DensityOperator {
public:
    /// Validates hermiticity (1e-12), unit trace (1e-12) and eigenvalues >= -1e-10.
    DensityOperator(std::vector<OccupationLabel> basis, Eigen::MatrixXcd matrix);

    [[nodiscard]] const std::vector<OccupationLabel> &basis() const { return basis_; }
    [[nodiscard]] const Eigen::MatrixXcd &matrix() const { return matrix_; }
    [[nodiscard]] double trace() const { return matrix_.trace().real(); }
    [[nodiscard]] int dimension() const { return static_cast<int>(basis_.size()); }

private:
    std::vector<OccupationLabel> basis_;
    Eigen::MatrixXcd matrix_;
};

/// Hermitian operator on a labelled basis, used for d(rho)/d(phi).
class HermitianOperator {
public:
    HermitianOperator(std::vector<OccupationLabel> basis, Eigen::MatrixXcd matrix);

    [[nodiscard]] const std::vector<OccupationLabel> &basis() const { return basis_; }
    [[nodiscard]] const Eigen::MatrixXcd &matrix() const { return matrix_; }

private:
    std::vector<OccupationLabel> basis_;
    Eigen::MatrixXcd matrix_;
};

DensityOperator to_density(const PureState &state);

/// Convex combination. Operands may live on different bases; the result is
/// expressed on the sorted union. Weights must be >= 0 and sum to 1 within 1e-10.
DensityOperator mix(std::span<const std::pair<double, DensityOperator>> terms);

struct Block {
    double weight;   // probability of this environment outcome
    PureState state; // normalized
    int lost_photons;
};

/// Mixture of pure blocks distinguished by an orthogonal environment record
/// (the number of photons lost).
class BlockDiagonalState {
public:
    explicit BlockDiagonalState(std::vector<Block> blocks);

    [[nodiscard]] const std::vector<Block> &blocks() const { return blocks_; }
    [[nodiscard]] std::size_t size() const { return blocks_.size(); }
    [[nodiscard]] const Block *find(int lost_photons) const;

private:
    std::vector<Block> blocks_;
};

/// Traces out the environment record.
DensityOperator flatten(const BlockDiagonalState &state);

/// rho together with d(rho)/d(phi) on a shared basis.
struct MixedStateWithDerivative {
    DensityOperator rho;
    HermitianOperator drho;
};

/// Builds rho = sum_m |psi_m><psi_m| and its derivative from blocks and the
/// derivatives of the weighted blocks sqrt(w_m)|psi_m>.
MixedStateWithDerivative flatten_with_derivative(const BlockDiagonalState &state,
                                                 std::span<const PureState> weighted_block_derivs);

MixedStateWithDerivative pure_with_derivative(const PureState &state, const PureState &deriv);

} // namespace fisherlab::fock
