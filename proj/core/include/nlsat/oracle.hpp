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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlsat/bits.hpp"
#include "nlsat/cnf.hpp"
#include "nlsat/state_vector.hpp"

namespace nlsat {

/// Equality oracle of width n accepting exactly `target` (target[k] is input bit k).
struct OneHitSpec {
    unsigned n = 0;
    Bits target;

    static OneHitSpec from_string(std::string_view target);
    void validate() const;
};

/// Widest oracle input register a truth function can enumerate.
inline constexpr unsigned kMaxOracleInputs = 63;

/// Widest circuit the synthesizers will emit.
inline constexpr unsigned kMaxOracleWires = 1U << 16;

/// Exhaustive verification budget.
inline constexpr unsigned kMaxVerifyWires = 20;

/// The inverse oracle function f evaluated directly from its definition, without gates.
///
/// Equality oracles: f(e) = 0 iff e == target.
/// 3SAT oracles: input bits 0..n-1 are x and bit n is the extra bit t;
///   f(x, t=0) = NOT phi(x), f(x, t=1) = NOT AND(x).
class TruthFunction {
public:
    static TruthFunction equality(OneHitSpec spec);
    static TruthFunction sat(CnfFormula formula);

    unsigned input_count() const noexcept {
        return input_count_;
    }

    bool is_sat() const noexcept {
        return std::holds_alternative<CnfFormula>(definition_);
    }

    /// Formula of a 3SAT oracle, nullptr for equality oracles.
    const CnfFormula *formula() const noexcept {
        return std::get_if<CnfFormula>(&definition_);
    }

    bool operator()(BasisIndex input) const;

    /// Inputs with f = 0, ascending.
    std::vector<BasisIndex> zeros() const;

private:
    struct Masks {
        std::uint64_t positive;
        std::uint64_t negative;
    };

    TruthFunction() = default;

    std::variant<OneHitSpec, CnfFormula> definition_;
    unsigned input_count_ = 0;
    BasisIndex target_ = 0;
    std::vector<Masks> clause_masks_;
};

/// A reversible circuit that XORs f(inputs) into output_wire and leaves every
/// ancilla as it found it. Wires are local to the program: inputs first, then the
/// output, then ancillas.
struct OracleProgram {
    Circuit circuit;
    std::vector<unsigned> input_wires;
    unsigned output_wire = 0;
    std::vector<unsigned> ancilla_wires;
    std::string description;
    std::optional<TruthFunction> truth;

    unsigned wire_count() const noexcept {
        return circuit.qubit_count;
    }
};

/// X on the inputs where the target bit is 0, a multi-controlled X of all inputs
/// onto the output, X on the output, then the input X gates again.
OracleProgram synth_equality_inverse_oracle(const OneHitSpec &spec);

/// Clause ORs into one ancilla per clause, their AND into a phi wire, AND(x) into a
/// second wire, a t-controlled multiplexer onto the output, then the mirror image
/// of everything before the multiplexer.
OracleProgram synth_sat_inverse_oracle(const CnfFormula &formula);

/// Returns the truth function attached to the program. Throws std::invalid_argument
/// for programs read back from text, which carry none.
const TruthFunction &truth_function(const OracleProgram &program);

/// Runs a classical-reversible circuit (X, CNOT, CCX, MCX) on one basis state.
/// Needs qubit_count <= 64.
BasisIndex apply_classical(const Circuit &circuit, BasisIndex basis);

/// Same for circuits of any width; `wires` holds one 0/1 byte per wire.
void apply_classical(const Circuit &circuit, std::vector<std::uint8_t> &wires);

/// f on every input, computed by running the gates with clean output and ancillas.
/// Throws IntegrityError if a run leaves an ancilla dirty or changes an input.
std::vector<std::uint8_t> evaluate_oracle_table(const OracleProgram &program);

struct SynthesisViolation {
    BasisIndex row;
    BasisIndex result;
    std::string reason;
};

struct VerificationReport {
    std::uint64_t rows_checked = 0;
    bool bijective = true;
    std::size_t violation_count = 0;
    /// First violations found (at most 64 are kept).
    std::vector<SynthesisViolation> violations;

    bool ok() const noexcept {
        return bijective && violation_count == 0;
    }
};

/// Runs the circuit on every basis state of its wires. Rows with clean output and
/// ancillas must yield output = f(input) with inputs and ancillas unchanged; all
/// rows together must form a permutation. Throws CapExceeded above kMaxVerifyWires.
VerificationReport verify_synthesis(const OracleProgram &program);

struct GateCensus {
    std::map<GateKind, std::size_t> counts;
    std::size_t total = 0;
    std::size_t ancillas = 0;
    /// Layers of a greedy schedule where gates sharing a wire cannot overlap.
    std::size_t depth = 0;
};

GateCensus gate_census(const OracleProgram &program);

/// Rewrites every MCX with k > 2 controls as a ladder of 2(k-2)+1 CCX gates using
/// k-2 extra clean ancillas, shared by all ladders.
OracleProgram lower_multi_controls(const OracleProgram &program);

/// Text listing: "# description", a header
///   wires K inputs i0 i1 ... output o ancilla a0 a1 ...
/// and one "GATE q0 q1 ..." line per op. '#' starts a comment.
std::string write_circuit_text(const OracleProgram &program);

/// Parses write_circuit_text output. The result carries no truth function.
/// Throws ParseError.
OracleProgram read_circuit_text(std::string_view text);

}  // namespace nlsat
