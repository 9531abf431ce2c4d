// Copyright 2026 The nlsat Authors
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

#include <span>
#include <string_view>
#include <vector>

#include "nlsat/state_vector.hpp"

namespace nlsat {

enum class DriveMode { kIdeal, kIterated };

std::string_view drive_mode_name(DriveMode mode) noexcept;
DriveMode parse_drive_mode(std::string_view name);

/// Parameters of the nonlinear drive toward |0>.
///
/// In iterated mode every step moves a fraction `eta` of the qubit's |1> component
/// onto |0>; epsilon is the rotation offset (radians) that `eta` is derived from.
/// Ideal mode ignores everything but residual_tol.
struct NonlinearConfig {
    DriveMode mode = DriveMode::kIdeal;
    double epsilon = 0.1;
    double eta = 0.09983341664682815;  // sin(0.1)
    int max_steps = 100000;
    double residual_tol = 1e-10;

    static NonlinearConfig ideal();

    /// Iterated mode with eta = sin(epsilon).
    static NonlinearConfig iterated(double epsilon, double residual_tol = 1e-10, int max_steps = 100000);

    /// Throws std::invalid_argument.
    void validate() const;
};

struct DriveStats {
    int steps_used = 0;
    double final_residual = 0.0;
    double prior_norm = 1.0;
};

/// Norm of the qubit=1 component of the normalized state.
double residual(const StateVector &state, unsigned qubit);

/// Writes the state as |0>(x)psi0 + |1>(x)psi1 over `qubit` and replaces it with the
/// renormalized |0>(x)(psi0 + psi1).
DriveStats drive_ideal(StateVector &state, unsigned qubit);

/// Smooth approximation of drive_ideal. Each step maps
///   psi0 <- psi0 + s * psi1,  psi1 <- (1 - s) * psi1
/// and renormalizes. s starts at eta and is enlarged only when the plain step would
/// shrink the residual by less than (1 - eta); with that, the residual after T steps
/// is at most (1 - eta)^T times the initial one. Once the residual is below
/// residual_tol the leftover psi1 is projected away.
DriveStats drive_iterated(StateVector &state, unsigned qubit, const NonlinearConfig &config);

/// One smooth step of drive_iterated (with renormalization). Returns the new residual.
/// Throws DegenerateCancellation when psi0 + psi1 vanishes.
double drive_step(StateVector &state, unsigned qubit, double eta);

/// Dispatches on config.mode.
DriveStats drive(StateVector &state, unsigned qubit, const NonlinearConfig &config);

/// Drives every listed qubit, in ascending index order.
std::vector<DriveStats> drive_register(StateVector &state, std::span<const unsigned> qubits,
                                       const NonlinearConfig &config);

}  // namespace nlsat
