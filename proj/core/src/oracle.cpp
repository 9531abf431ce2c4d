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

#include "nlsat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "nlsat/error.hpp"

namespace nlsat {

namespace {

/// A classical gate as (control mask, target mask).
struct ClassicalOp {
    BasisIndex controls;
    BasisIndex target;
};

bool is_classical(GateKind kind) {
    return kind == GateKind::kX || kind == GateKind::kCNOT || kind == GateKind::kCCX || kind == GateKind::kMCX;
}

void require_classical(const GateOp &op) {
    if (!is_classical(op.kind)) {
        throw std::invalid_argument("gate " + std::string(gate_name(op.kind)) + " is not classical-reversible");
    }
}

std::vector<ClassicalOp> compile_classical(const Circuit &circuit) {
    if (circuit.qubit_count > 64) {
        throw CapExceeded("packed classical simulation supports at most 64 wires");
    }
    circuit.validate();
    std::vector<ClassicalOp> ops;
    ops.reserve(circuit.ops.size());
    for (const auto &op : circuit.ops) {
        require_classical(op);
        BasisIndex controls = 0;
        for (std::size_t k = 0; k + 1 < op.qubits.size(); ++k) {
            controls |= bit_mask(op.qubits[k]);
        }
        ops.push_back({controls, bit_mask(op.qubits.back())});
    }
    return ops;
}

BasisIndex run_compiled(std::span<const ClassicalOp> ops, BasisIndex basis) {
    for (const auto &op : ops) {
        if ((basis & op.controls) == op.controls) {
            basis ^= op.target;
        }
    }
    return basis;
}

void check_wire_budget(unsigned wires) {
    if (wires > kMaxOracleWires) {
        throw CapExceeded("oracle needs " + std::to_string(wires) + " wires, above the synthesis cap of " +
                          std::to_string(kMaxOracleWires));
    }
}

std::vector<unsigned> iota_wires(unsigned first, unsigned count) {
    std::vector<unsigned> wires(count);
    for (unsigned k = 0; k < count; ++k) {
        wires[k] = first + k;
    }
    return wires;
}

/// Ops that leave OR(clause) on `target` (clean on entry), with inputs restored.
void emit_clause_or(const Clause &clause, unsigned target, std::vector<GateOp> &ops) {
    std::vector<Literal> literals;
    for (const auto &lit : clause) {
        auto same_var = std::find_if(literals.begin(), literals.end(), [&](const Literal &l) { return l.var == lit.var; });
        if (same_var == literals.end()) {
            literals.push_back(lit);
        } else if (same_var->negated != lit.negated) {
            // x OR NOT x: constant true.
            ops.push_back(GateOp::x(target));
            return;
        }
    }
    std::vector<unsigned> controls;
    for (const auto &lit : literals) {
        controls.push_back(lit.var);
        if (!lit.negated) {
            ops.push_back(GateOp::x(lit.var));
        }
    }
    // Controls now read "literal is false"; their AND is NOT clause.
    ops.push_back(GateOp::controlled_x(controls, target));
    ops.push_back(GateOp::x(target));
    for (const auto &lit : literals) {
        if (!lit.negated) {
            ops.push_back(GateOp::x(lit.var));
        }
    }
}

}  // namespace

OneHitSpec OneHitSpec::from_string(std::string_view target) {
    OneHitSpec spec{static_cast<unsigned>(target.size()), parse_bits(target)};
    spec.validate();
    return spec;
}

void OneHitSpec::validate() const {
    if (n == 0) {
        throw std::invalid_argument("one-hit oracle needs at least one input");
    }
    if (target.size() != n) {
        throw std::invalid_argument("target has " + std::to_string(target.size()) + " bits, expected " +
                                    std::to_string(n));
    }
    if (n > kMaxOracleInputs) {
        throw CapExceeded("one-hit oracle wider than " + std::to_string(kMaxOracleInputs) + " inputs");
    }
    for (auto b : target) {
        if (b > 1) {
            throw std::invalid_argument("target bits must be 0 or 1");
        }
    }
}

TruthFunction TruthFunction::equality(OneHitSpec spec) {
    spec.validate();
    TruthFunction f;
    f.input_count_ = spec.n;
    f.target_ = encode_basis(spec.target);
    f.definition_ = std::move(spec);
    return f;
}

TruthFunction TruthFunction::sat(CnfFormula formula) {
    formula.validate();
    if (formula.var_count + 1 > kMaxOracleInputs) {
        throw CapExceeded("3SAT oracle with " + std::to_string(formula.var_count) + " variables exceeds " +
                          std::to_string(kMaxOracleInputs) + " oracle inputs");
    }
    TruthFunction f;
    f.input_count_ = formula.var_count + 1;
    for (const auto &clause : formula.clauses) {
        Masks m{0, 0};
        for (const auto &lit : clause) {
            (lit.negated ? m.negative : m.positive) |= bit_mask(lit.var);
        }
        f.clause_masks_.push_back(m);
    }
    f.definition_ = std::move(formula);
    return f;
}

bool TruthFunction::operator()(BasisIndex input) const {
    if (!is_sat()) {
        return input != target_;
    }
    const unsigned n = input_count_ - 1;
    const BasisIndex x = input & (bit_mask(n) - 1);
    if (test_bit(input, n)) {
        return x != bit_mask(n) - 1;
    }
    for (const auto &m : clause_masks_) {
        if (((x & m.positive) | (~x & m.negative)) == 0) {
            return true;  // phi false
        }
    }
    return false;
}

std::vector<BasisIndex> TruthFunction::zeros() const {
    if (input_count_ > kMaxBruteForceVars) {
        throw CapExceeded("enumerating " + std::to_string(input_count_) + " oracle inputs exceeds the cap of " +
                          std::to_string(kMaxBruteForceVars));
    }
    std::vector<BasisIndex> out;
    const BasisIndex limit = bit_mask(input_count_);
    for (BasisIndex e = 0; e < limit; ++e) {
        if (!(*this)(e)) {
            out.push_back(e);
        }
    }
    return out;
}

OracleProgram synth_equality_inverse_oracle(const OneHitSpec &spec) {
    spec.validate();
    const unsigned n = spec.n;
    check_wire_budget(n + 1);

    OracleProgram program;
    program.input_wires = iota_wires(0, n);
    program.output_wire = n;
    program.circuit.qubit_count = n + 1;
    program.description = "equality inverse oracle n=" + std::to_string(n) + " target=" + bits_to_string(spec.target);

    auto &ops = program.circuit.ops;
    std::vector<GateOp> flips;
    for (unsigned k = 0; k < n; ++k) {
        if (spec.target[k] == 0) {
            flips.push_back(GateOp::x(k));
        }
    }
    ops.insert(ops.end(), flips.begin(), flips.end());
    ops.push_back(GateOp::controlled_x(program.input_wires, program.output_wire));
    ops.push_back(GateOp::x(program.output_wire));
    ops.insert(ops.end(), flips.rbegin(), flips.rend());

    program.truth = TruthFunction::equality(spec);
    return program;
}

OracleProgram synth_sat_inverse_oracle(const CnfFormula &formula) {
    auto truth = TruthFunction::sat(formula);
    const unsigned n = formula.var_count;
    const auto m = static_cast<unsigned>(formula.clauses.size());
    const unsigned t = n;
    const unsigned out = n + 1;
    const unsigned first_clause = n + 2;
    const unsigned phi = first_clause + m;
    const unsigned all_ones = phi + 1;
    check_wire_budget(all_ones + 1);

    OracleProgram program;
    program.input_wires = iota_wires(0, n + 1);
    program.output_wire = out;
    program.ancilla_wires = iota_wires(first_clause, m + 2);
    program.circuit.qubit_count = all_ones + 1;
    program.description = "3SAT inverse oracle vars=" + std::to_string(n) + " clauses=" + std::to_string(m);

    std::vector<GateOp> compute;
    for (unsigned j = 0; j < m; ++j) {
        emit_clause_or(formula.clauses[j], first_clause + j, compute);
    }
    const auto clause_wires = iota_wires(first_clause, m);
    compute.push_back(GateOp::controlled_x(clause_wires, phi));
    const auto x_wires = iota_wires(0, n);
    compute.push_back(GateOp::controlled_x(x_wires, all_ones));

    auto &ops = program.circuit.ops;
    ops = compute;
    // out <- NOT (t ? AND(x) : phi)
    ops.push_back(GateOp::x(t));
    ops.push_back(GateOp::ccx(t, phi, out));
    ops.push_back(GateOp::x(t));
    ops.push_back(GateOp::ccx(t, all_ones, out));
    ops.push_back(GateOp::x(out));
    ops.insert(ops.end(), compute.rbegin(), compute.rend());

    program.truth = std::move(truth);
    return program;
}

const TruthFunction &truth_function(const OracleProgram &program) {
    if (!program.truth) {
        throw std::invalid_argument("oracle program '" + program.description + "' carries no truth function");
    }
    return *program.truth;
}

BasisIndex apply_classical(const Circuit &circuit, BasisIndex basis) {
    const auto ops = compile_classical(circuit);
    return run_compiled(ops, basis);
}

void apply_classical(const Circuit &circuit, std::vector<std::uint8_t> &wires) {
    if (wires.size() != circuit.qubit_count) {
        throw BadWiring("wire vector length does not match circuit width");
    }
    circuit.validate();
    for (const auto &op : circuit.ops) {
        require_classical(op);
        bool fire = true;
        for (std::size_t k = 0; k + 1 < op.qubits.size() && fire; ++k) {
            fire = wires[op.qubits[k]] != 0;
        }
        if (fire) {
            wires[op.qubits.back()] ^= 1;
        }
    }
}

std::vector<std::uint8_t> evaluate_oracle_table(const OracleProgram &program) {
    const auto n = static_cast<unsigned>(program.input_wires.size());
    if (n > kMaxBruteForceVars) {
        throw CapExceeded("oracle table over " + std::to_string(n) + " inputs exceeds the cap of " +
                          std::to_string(kMaxBruteForceVars));
    }
    const BasisIndex rows = bit_mask(n);
    std::vector<std::uint8_t> table(rows);

    auto fail = [&](BasisIndex e) {
        throw IntegrityError("oracle '" + program.description + "' disturbed inputs or ancillas on input " +
                             basis_to_string(e, n));
    };

    if (program.wire_count() <= 64) {
        const auto ops = compile_classical(program.circuit);
        for (BasisIndex e = 0; e < rows; ++e) {
            BasisIndex in = 0;
            for (unsigned k = 0; k < n; ++k) {
                if (test_bit(e, k)) {
                    in |= bit_mask(program.input_wires[k]);
                }
            }
            const BasisIndex result = run_compiled(ops, in);
            const BasisIndex residue = result & ~bit_mask(program.output_wire);
            if (residue != in) {
                fail(e);
            }
            table[e] = test_bit(result, program.output_wire) ? 1 : 0;
        }
        return table;
    }

    std::vector<std::uint8_t> wires(program.wire_count());
    for (BasisIndex e = 0; e < rows; ++e) {
        std::fill(wires.begin(), wires.end(), 0);
        for (unsigned k = 0; k < n; ++k) {
            wires[program.input_wires[k]] = test_bit(e, k) ? 1 : 0;
        }
        const auto before = wires;
        apply_classical(program.circuit, wires);
        table[e] = wires[program.output_wire];
        wires[program.output_wire] = 0;
        if (wires != before) {
            fail(e);
        }
    }
    return table;
}

VerificationReport verify_synthesis(const OracleProgram &program) {
    const unsigned width = program.wire_count();
    if (width > kMaxVerifyWires) {
        throw CapExceeded("exhaustive verification of " + std::to_string(width) + " wires exceeds the budget of " +
                          std::to_string(kMaxVerifyWires));
    }
    const auto &f = truth_function(program);
    const auto ops = compile_classical(program.circuit);

    BasisIndex scratch_mask = bit_mask(program.output_wire);
    for (unsigned a : program.ancilla_wires) {
        scratch_mask |= bit_mask(a);
    }
    BasisIndex input_mask = 0;
    for (unsigned w : program.input_wires) {
        input_mask |= bit_mask(w);
    }

    VerificationReport report;
    const BasisIndex rows = bit_mask(width);
    std::vector<bool> seen(rows, false);
    auto record = [&](BasisIndex row, BasisIndex result, std::string reason) {
        ++report.violation_count;
        if (report.violations.size() < 64) {
            report.violations.push_back({row, result, std::move(reason)});
        }
    };

    for (BasisIndex row = 0; row < rows; ++row) {
        const BasisIndex result = run_compiled(ops, row);
        ++report.rows_checked;
        if (seen[result]) {
            report.bijective = false;
        }
        seen[result] = true;
        if ((row & scratch_mask) != 0) {
            continue;
        }
        const BasisIndex input = gather_bits(row, program.input_wires);
        const BasisIndex expected = row | (f(input) ? bit_mask(program.output_wire) : 0);
        if (result == expected) {
            continue;
        }
        if ((result & input_mask) != (row & input_mask)) {
            record(row, result, "inputs changed");
        } else if ((result & ~input_mask & ~bit_mask(program.output_wire)) != 0) {
            record(row, result, "ancilla left dirty");
        } else {
            record(row, result, "output differs from truth function");
        }
    }
    return report;
}

GateCensus gate_census(const OracleProgram &program) {
    GateCensus census;
    census.ancillas = program.ancilla_wires.size();
    std::vector<std::size_t> level(program.wire_count(), 0);
    for (const auto &op : program.circuit.ops) {
        ++census.counts[op.kind];
        ++census.total;
        std::size_t layer = 0;
        for (unsigned q : op.qubits) {
            layer = std::max(layer, level[q]);
        }
        ++layer;
        for (unsigned q : op.qubits) {
            level[q] = layer;
        }
        census.depth = std::max(census.depth, layer);
    }
    return census;
}

OracleProgram lower_multi_controls(const OracleProgram &program) {
    std::size_t pool = 0;
    for (const auto &op : program.circuit.ops) {
        if (op.kind == GateKind::kMCX && op.qubits.size() > 3) {
            pool = std::max(pool, op.qubits.size() - 3);
        }
    }
    OracleProgram lowered = program;
    const unsigned first_extra = program.wire_count();
    const auto extra = iota_wires(first_extra, static_cast<unsigned>(pool));
    lowered.ancilla_wires.insert(lowered.ancilla_wires.end(), extra.begin(), extra.end());
    lowered.circuit.qubit_count = first_extra + static_cast<unsigned>(pool);
    check_wire_budget(lowered.circuit.qubit_count);
    if (pool > 0) {
        lowered.description += " (MCX lowered to CCX)";
    }

    auto &ops = lowered.circuit.ops;
    ops.clear();
    for (const auto &op : program.circuit.ops) {
        if (op.kind != GateKind::kMCX || op.qubits.size() <= 3) {
            ops.push_back(op.kind == GateKind::kMCX
                              ? GateOp::controlled_x(std::span(op.qubits).first(op.qubits.size() - 1), op.qubits.back())
                              : op);
            continue;
        }
        const std::size_t k = op.qubits.size() - 1;
        const auto &c = op.qubits;
        const unsigned target = op.qubits.back();
        std::vector<GateOp> ladder;
        ladder.push_back(GateOp::ccx(c[0], c[1], extra[0]));
        for (std::size_t i = 2; i + 1 < k; ++i) {
            ladder.push_back(GateOp::ccx(c[i], extra[i - 2], extra[i - 1]));
        }
        ops.insert(ops.end(), ladder.begin(), ladder.end());
        ops.push_back(GateOp::ccx(c[k - 1], extra[k - 3], target));
        ops.insert(ops.end(), ladder.rbegin(), ladder.rend());
    }
    return lowered;
}

}  // namespace nlsat
