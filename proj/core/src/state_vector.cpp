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

#include "nlsat/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "nlsat/error.hpp"
#include "nlsat/rng.hpp"

namespace nlsat {

namespace {

constexpr std::array<std::string_view, 7> kGateNames = {"X", "H", "CNOT", "CCX", "MCX", "CZ", "CPI"};

/// Spreads `k` around a zero inserted at bit `q`.
constexpr BasisIndex insert_zero_bit(BasisIndex k, unsigned q) noexcept {
    const BasisIndex low = k & (bit_mask(q) - 1);
    return ((k >> q) << (q + 1)) | low;
}

void apply_controlled_x(std::span<Amplitude> amps, BasisIndex control_mask, unsigned target) {
    const BasisIndex t = bit_mask(target);
    const BasisIndex half = amps.size() >> 1;
    for (BasisIndex k = 0; k < half; ++k) {
        const BasisIndex i = insert_zero_bit(k, target);
        if ((i & control_mask) == control_mask) {
            std::swap(amps[i], amps[i | t]);
        }
    }
}

void apply_hadamard(std::span<Amplitude> amps, unsigned target) {
    constexpr double s = std::numbers::sqrt2 / 2.0;
    const BasisIndex t = bit_mask(target);
    const BasisIndex half = amps.size() >> 1;
    for (BasisIndex k = 0; k < half; ++k) {
        const BasisIndex i = insert_zero_bit(k, target);
        const Amplitude a0 = amps[i];
        const Amplitude a1 = amps[i | t];
        amps[i] = (a0 + a1) * s;
        amps[i | t] = (a0 - a1) * s;
    }
}

void apply_phase_flip(std::span<Amplitude> amps, BasisIndex mask) {
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

std::size_t expected_arity(GateKind kind) {
    switch (kind) {
        case GateKind::kX:
        case GateKind::kH:
            return 1;
        case GateKind::kCNOT:
        case GateKind::kCZ:
            return 2;
        case GateKind::kCCX:
        case GateKind::kCPI:
            return 3;
        case GateKind::kMCX:
            return 0;
    }
    return 0;
}

}  // namespace

StateVector::StateVector(unsigned qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count == 0) {
        throw std::invalid_argument("state vector needs at least one qubit");
    }
    if (qubit_count > kMaxQubits) {
        throw CapExceeded("dense state of " + std::to_string(qubit_count) + " qubits exceeds the cap of " +
                          std::to_string(kMaxQubits));
    }
    amplitudes_.assign(std::size_t{1} << qubit_count, Amplitude{});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(unsigned qubit_count, std::vector<Amplitude> amplitudes)
    : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
}

StateVector StateVector::from_amplitudes(unsigned qubit_count, std::vector<Amplitude> amplitudes) {
    if (qubit_count == 0 || qubit_count > kMaxQubits) {
        throw CapExceeded("qubit count " + std::to_string(qubit_count) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    }
    if (amplitudes.size() != (std::size_t{1} << qubit_count)) {
        throw std::invalid_argument("amplitude count must be 2^qubit_count");
    }
    return StateVector(qubit_count, std::move(amplitudes));
}

StateVector StateVector::basis(unsigned qubit_count, BasisIndex index) {
    StateVector state(qubit_count);
    if (index >= state.size()) {
        throw std::out_of_range("basis index out of range");
    }
    state.amplitudes_[0] = 0.0;
    state.amplitudes_[index] = 1.0;
    return state;
}

double StateVector::norm() const noexcept {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

StateVector new_state(unsigned qubit_count) {
    return StateVector(qubit_count);
}

double distance(const StateVector &a, const StateVector &b) {
    if (a.qubit_count() != b.qubit_count()) {
        throw std::invalid_argument("distance: width mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += std::norm(a[i] - b[i]);
    }
    return std::sqrt(total);
}

std::string_view gate_name(GateKind kind) noexcept {
    return kGateNames[static_cast<std::size_t>(kind)];
}

GateKind parse_gate_kind(std::string_view name) {
    for (std::size_t k = 0; k < kGateNames.size(); ++k) {
        if (kGateNames[k] == name) {
            return static_cast<GateKind>(k);
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

GateOp GateOp::x(unsigned target) {
    return {GateKind::kX, {target}};
}

GateOp GateOp::h(unsigned target) {
    return {GateKind::kH, {target}};
}

GateOp GateOp::cnot(unsigned control, unsigned target) {
    return {GateKind::kCNOT, {control, target}};
}

GateOp GateOp::ccx(unsigned c0, unsigned c1, unsigned target) {
    return {GateKind::kCCX, {c0, c1, target}};
}

GateOp GateOp::mcx(std::vector<unsigned> controls, unsigned target) {
    controls.push_back(target);
    return {GateKind::kMCX, std::move(controls)};
}

GateOp GateOp::cz(unsigned a, unsigned b) {
    return {GateKind::kCZ, {a, b}};
}

GateOp GateOp::cpi(unsigned f, unsigned u, unsigned i) {
    return {GateKind::kCPI, {f, u, i}};
}

GateOp GateOp::controlled_x(std::span<const unsigned> controls, unsigned target) {
    switch (controls.size()) {
        case 0:
            return x(target);
        case 1:
            return cnot(controls[0], target);
        case 2:
            return ccx(controls[0], controls[1], target);
        default:
            return mcx({controls.begin(), controls.end()}, target);
    }
}

void GateOp::validate(unsigned qubit_count) const {
    const std::size_t arity = expected_arity(kind);
    if (kind == GateKind::kMCX ? qubits.size() < 2 : qubits.size() != arity) {
        throw BadWiring(std::string(gate_name(kind)) + " has wrong arity " + std::to_string(qubits.size()));
    }
    for (std::size_t a = 0; a < qubits.size(); ++a) {
        if (qubits[a] >= qubit_count) {
            throw BadWiring(std::string(gate_name(kind)) + " wire " + std::to_string(qubits[a]) +
                            " outside register of " + std::to_string(qubit_count));
        }
        for (std::size_t b = a + 1; b < qubits.size(); ++b) {
            if (qubits[a] == qubits[b]) {
                throw BadWiring(std::string(gate_name(kind)) + " repeats wire " + std::to_string(qubits[a]));
            }
        }
    }
}

void Circuit::validate() const {
    for (const auto &op : ops) {
        op.validate(qubit_count);
    }
}

Circuit Circuit::inverse() const {
    Circuit out{qubit_count, {ops.rbegin(), ops.rend()}};
    return out;
}

void apply_gate(StateVector &state, const GateOp &op) {
    op.validate(state.qubit_count());
    auto amps = state.amplitudes();
    const auto &q = op.qubits;
    switch (op.kind) {
        case GateKind::kX:
            apply_controlled_x(amps, 0, q[0]);
            break;
        case GateKind::kH:
            apply_hadamard(amps, q[0]);
            break;
        case GateKind::kCNOT:
        case GateKind::kCCX:
        case GateKind::kMCX: {
            BasisIndex mask = 0;
            for (std::size_t k = 0; k + 1 < q.size(); ++k) {
                mask |= bit_mask(q[k]);
            }
            apply_controlled_x(amps, mask, q.back());
            break;
        }
        case GateKind::kCZ:
            apply_phase_flip(amps, bit_mask(q[0]) | bit_mask(q[1]));
            break;
        case GateKind::kCPI:
            // The passthrough wire q[2] does not enter the phase condition.
            apply_phase_flip(amps, bit_mask(q[0]) | bit_mask(q[1]));
            break;
    }
}

void run_circuit(StateVector &state, const Circuit &circuit) {
    if (circuit.qubit_count != state.qubit_count()) {
        throw BadWiring("circuit width " + std::to_string(circuit.qubit_count) + " does not match state width " +
                        std::to_string(state.qubit_count()));
    }
    circuit.validate();
    for (const auto &op : circuit.ops) {
        apply_gate(state, op);
    }
}

Matrix8 cpi_matrix() {
    Matrix8 m{};
    for (std::size_t k = 0; k < 8; ++k) {
        const bool f = (k & 4U) != 0;
        const bool u = (k & 2U) != 0;
        m[k][k] = (f && u) ? -1.0 : 1.0;
    }
    return m;
}

double renormalize(StateVector &state) {
    const double prior = state.norm();
    if (!(prior > kDegeneracyTolerance)) {
        throw DegenerateCancellation("state norm " + std::to_string(prior) + " left nothing to renormalize");
    }
    const double scale = 1.0 / prior;
    for (auto &a : state.amplitudes()) {
        a *= scale;
    }
    return prior;
}

double probability_of(const StateVector &state, std::span<const QubitValue> constraints) {
    BasisIndex mask = 0;
    BasisIndex want = 0;
    for (const auto &c : constraints) {
        if (c.qubit >= state.qubit_count()) {
            throw BadWiring("constraint on qubit " + std::to_string(c.qubit) + " outside register");
        }
        mask |= bit_mask(c.qubit);
        if (c.value) {
            want |= bit_mask(c.qubit);
        }
    }
    double total = 0.0;
    const auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if ((i & mask) == want) {
            total += std::norm(amps[i]);
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

BasisIndex sample_measurement(const StateVector &state, std::uint64_t seed) {
    Rng rng(seed);
    const double target = rng.uniform() * state.norm() * state.norm();
    double acc = 0.0;
    BasisIndex last_nonzero = 0;
    const auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) {
            continue;
        }
        acc += p;
        last_nonzero = i;
        if (target < acc) {
            return i;
        }
    }
    return last_nonzero;
}

OutcomeSampler::OutcomeSampler(std::span<const double> probabilities) {
    if (probabilities.empty()) {
        throw std::invalid_argument("OutcomeSampler: empty distribution");
    }
    cumulative_.reserve(probabilities.size());
    double acc = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) {
            throw std::invalid_argument("OutcomeSampler: negative probability");
        }
        acc += p;
        cumulative_.push_back(acc);
    }
    if (!(acc > 0.0)) {
        throw std::invalid_argument("OutcomeSampler: distribution has no mass");
    }
}

BasisIndex OutcomeSampler::draw(Rng &rng) const {
    const double target = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) {
        --it;
    }
    // Skip zero-mass entries that share the same cumulative value.
    while (it != cumulative_.begin() && *it == *(it - 1)) {
        --it;
    }
    return static_cast<BasisIndex>(it - cumulative_.begin());
}

}  // namespace nlsat
