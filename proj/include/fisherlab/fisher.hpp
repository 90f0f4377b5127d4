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

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace fisherlab::fisher {

inline constexpr double kEigenCutoff = 1e-10;

/// Raised when a vanishing probability carries a non-vanishing derivative.
/// The Fisher information is then a 0/0 limit; evaluate at an offset phase.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string &what, Outcome outcome) : std::runtime_error(what), outcome_(outcome) {}
    [[nodiscard]] Outcome outcome() const { return outcome_; }

private:
    Outcome outcome_;
};

/// 4 (<d psi|d psi> - |<psi|d psi>|^2) for a normalized state.
double qfi_pure(const fock::PureState &state, const fock::PureState &deriv);

/// QFI of a block-diagonal mixture. `weighted_block_derivs[i]` is the phase
/// derivative of sqrt(w_i)|psi_i>; any phase dependence of the weights
/// contributes its classical Fisher term.
double qfi_block(const fock::BlockDiagonalState &state, std::span<const fock::PureState> weighted_block_derivs);

/// Symmetric-logarithmic-derivative QFI from the eigendecomposition of rho;
/// eigenpairs with lambda_i + lambda_j <= cutoff are skipped.
double qfi_general(const fock::DensityOperator &rho, const fock::HermitianOperator &drho,
                   double cutoff = kEigenCutoff);

/// sum (dp)^2 / p. Outcomes with p < 1e-12 contribute zero when |dp| < 1e-9
/// and raise SingularityError otherwise.
double cfi(const PhotonNumberDistribution &dist);

struct FiniteDifferenceReport {
    double max_abs_error = 0.0;
    Outcome worst{0, 0};
    std::size_t outcomes = 0;
};

using DistributionEvaluator = std::function<PhotonNumberDistribution(double phi)>;

/// Compares analytic derivatives at `phi` with central differences of step h.
FiniteDifferenceReport finite_difference_check(const DistributionEvaluator &evaluate, double phi, double h);

} // namespace fisherlab::fisher
