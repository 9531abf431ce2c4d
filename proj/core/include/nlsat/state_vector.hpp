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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlsat/bits.hpp"

namespace nlsat {

using Amplitude = std::complex<double>;

/// Largest register the dense engine will allocate (2^28 amplitudes, 4 GiB).
inline constexpr unsigned kMaxQubits = 28;

/// Public-facing norm tolerance.
inline constexpr double kNormTolerance = 1e-9;

/// Renormalization refuses vectors whose norm is at or below this.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// Dense state vector over `qubit_count` qubits. Bit k of an amplitude's index
/// is the value of qubit k.
class StateVector {
public:
    /// |0...0>. Throws CapExceeded above kMaxQubits and std::invalid_argument for 0.
    explicit StateVector(unsigned qubit_count);

    /// Takes the amplitudes verbatim (no normalization). Size must be 2^qubit_count.
    static StateVector from_amplitudes(unsigned qubit_count, std::vector<Amplitude> amplitudes);

    /// Computational basis state |index>.
    static StateVector basis(unsigned qubit_count, BasisIndex index);

    unsigned qubit_count() const noexcept {
        return qubit_count_;
    }

    std::size_t size() const noexcept {
        return amplitudes_.size();
    }

    std::span<const Amplitude> amplitudes() const noexcept {
        return amplitudes_;
    }

    std::span<Amplitude> amplitudes() noexcept {
        return amplitudes_;
    }

    const Amplitude &operator[](BasisIndex index) const {
        return amplitudes_[index];
    }

    Amplitude &operator[](BasisIndex index) {
        return amplitudes_[index];
    }

    double norm() const noexcept;

    friend bool operator==(const StateVector &, const StateVector &) = default;

private:
    StateVector(unsigned qubit_count, std::vector<Amplitude> amplitudes);

    unsigned qubit_count_;
    std::vector<Amplitude> amplitudes_;
};

StateVector new_state(unsigned qubit_count);

/// Euclidean distance between two states of equal width.
double distance(const StateVector &a, const StateVector &b);

enum class GateKind : std::uint8_t { kX, kH, kCNOT, kCCX, kMCX, kCZ, kCPI };

std::string_view gate_name(GateKind kind) noexcept;

/// Inverse of gate_name; throws std::invalid_argument for unknown names.
GateKind parse_gate_kind(std::string_view name);

/// A gate and the wires it touches.
///
/// Wire order: controlled gates list controls first and the target last.
/// CPI lists (f, u, i): the phase of the three-qubit block is inverted when f and
/// u are both 1, and i passes through.
struct GateOp {
    GateKind kind;
    std::vector<unsigned> qubits;

    static GateOp x(unsigned target);
    static GateOp h(unsigned target);
    static GateOp cnot(unsigned control, unsigned target);
    static GateOp ccx(unsigned c0, unsigned c1, unsigned target);
    static GateOp mcx(std::vector<unsigned> controls, unsigned target);
    static GateOp cz(unsigned a, unsigned b);
    static GateOp cpi(unsigned f, unsigned u, unsigned i);

    /// X with the narrowest kind for the number of controls (X, CNOT, CCX or MCX).
    static GateOp controlled_x(std::span<const unsigned> controls, unsigned target);

    /// Throws BadWiring if arity, distinctness or range against qubit_count fail.
    void validate(unsigned qubit_count) const;

    friend bool operator==(const GateOp &, const GateOp &) = default;
};

struct Circuit {
    unsigned qubit_count = 0;
    std::vector<GateOp> ops;

    void validate() const;

    /// Every supported kind is self-inverse, so the inverse is the reversed op list.
    Circuit inverse() const;

    friend bool operator==(const Circuit &, const Circuit &) = default;
};

/// Applies `op` in place. Throws BadWiring.
void apply_gate(StateVector &state, const GateOp &op);

/// Applies all ops in order. Throws BadWiring on width mismatch or bad ops.
void run_circuit(StateVector &state, const Circuit &circuit);

using Matrix8 = std::array<std::array<Amplitude, 8>, 8>;

/// The controlled-phase-inversion unitary in |f u i> order with f the most
/// significant bit of the block index.
Matrix8 cpi_matrix();

/// Scales the state to unit norm and returns the prior norm.
/// Throws DegenerateCancellation when the prior norm is <= kDegeneracyTolerance.
double renormalize(StateVector &state);

struct QubitValue {
    unsigned qubit;
    bool value;
};

/// Total probability of the basis states consistent with every constraint.
double probability_of(const StateVector &state, std::span<const QubitValue> constraints);

/// Draws one full-register outcome from |a_k|^2. Deterministic for a given seed.
BasisIndex sample_measurement(const StateVector &state, std::uint64_t seed);

class Rng;

/// Precomputed cumulative distribution for repeated draws.
class OutcomeSampler {
public:
    explicit OutcomeSampler(std::span<const double> probabilities);

    BasisIndex draw(Rng &rng) const;

private:
    std::vector<double> cumulative_;
};

}  // namespace nlsat
