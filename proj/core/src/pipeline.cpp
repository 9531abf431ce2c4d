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

#include "nlsat/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "nlsat/error.hpp"
#include "nlsat/rng.hpp"

namespace nlsat {

namespace {

std::vector<unsigned> wire_range(unsigned first, unsigned count) {
    std::vector<unsigned> wires(count);
    std::iota(wires.begin(), wires.end(), first);
    return wires;
}

void check_distribution(const std::vector<double> &dist, const char *where) {
    const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw IntegrityError(std::string(where) + ": outcome distribution sums to " + std::to_string(total));
    }
}

PipelineOutcome run_dense(const OracleProgram &program, const NonlinearConfig &nl) {
    const auto layout = RegisterLayout::for_program(program);
    if (layout.total_wires() > kMaxQubits) {
        throw CapExceeded("dense backend needs " + std::to_string(layout.total_wires()) + " qubits, cap is " +
                          std::to_string(kMaxQubits));
    }
    auto state = prepare_input_state(layout);
    apply_oracle_phase_stage(state, program, layout);

    PipelineOutcome out;
    out.backend = Backend::kDense;
    out.n = layout.n;
    out.drive_stats = drive_register(state, layout.u, nl);
    out.e2_distribution.assign(std::size_t{1} << layout.n, 0.0);
    const auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p != 0.0) {
            out.e2_distribution[gather_bits(i, layout.e2)] += p;
        }
    }
    return out;
}

PipelineOutcome run_structured(const OracleProgram &program, const NonlinearConfig &nl) {
    const auto n = static_cast<unsigned>(program.input_wires.size());
    if (2 * n > kMaxQubits) {
        throw CapExceeded("structured backend needs a 2N = " + std::to_string(2 * n) + " qubit table, cap is " +
                          std::to_string(kMaxQubits));
    }
    const auto f = evaluate_oracle_table(program);

    // Table qubits: e in [0, N), u in [N, 2N).
    auto state = StateVector::from_amplitudes(2 * n, std::vector<Amplitude>(std::size_t{1} << (2 * n)));
    const double amplitude = std::ldexp(1.0, -static_cast<int>(n));
    const BasisIndex e_mask = bit_mask(n) - 1;
    auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        const BasisIndex e = i & e_mask;
        const BasisIndex u = i >> n;
        const bool flip = f[e] != 0 && (std::popcount(u) & 1) != 0;
        amps[i] = flip ? -amplitude : amplitude;
    }

    PipelineOutcome out;
    out.backend = Backend::kStructured;
    out.n = n;
    const auto u_wires = wire_range(n, n);
    out.drive_stats = drive_register(state, u_wires, nl);
    out.e2_distribution.assign(std::size_t{1} << n, 0.0);
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        out.e2_distribution[i & e_mask] += std::norm(amps[i]);
    }
    return out;
}

PipelineOutcome run_analytic(const OracleProgram &program) {
    const auto result = analytic_outcome(truth_function(program));
    PipelineOutcome out;
    out.backend = Backend::kAnalytic;
    out.n = static_cast<unsigned>(program.input_wires.size());
    out.e2_distribution = result.distribution;
    out.zeros = result.zeros;
    return out;
}

SatTrial sample_trial(const CnfFormula &formula, const OutcomeSampler &sampler, std::uint64_t seed) {
    Rng rng(seed);
    const unsigned n = formula.var_count;
    SatTrial trial;
    trial.outcome = sampler.draw(rng);
    trial.t = test_bit(trial.outcome, n);
    trial.x = decode_basis(trial.outcome & (bit_mask(n) - 1), n);
    if (!trial.t && !eval_formula(formula, trial.x)) {
        throw IntegrityError("measured t=0 with non-satisfying x=" + bits_to_string(trial.x));
    }
    return trial;
}

std::string format_amplitude(Amplitude a) {
    char buf[96];
    if (std::abs(a.imag()) <= 1e-12) {
        std::snprintf(buf, sizeof buf, "%+.9f", a.real());
    } else {
        std::snprintf(buf, sizeof buf, "(%+.9f%+.9fi)", a.real(), a.imag());
    }
    return buf;
}

}  // namespace

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
        case Backend::kDense:
            return "dense";
        case Backend::kStructured:
            return "structured";
        case Backend::kAnalytic:
            return "analytic";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    for (auto b : {Backend::kDense, Backend::kStructured, Backend::kAnalytic}) {
        if (backend_name(b) == name) {
            return b;
        }
    }
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

RegisterLayout RegisterLayout::for_program(const OracleProgram &program) {
    const auto n = static_cast<unsigned>(program.input_wires.size());
    RegisterLayout layout;
    layout.n = n;
    layout.e1 = wire_range(0, n);
    layout.e2 = wire_range(n, n);
    layout.u = wire_range(2 * n, n);
    layout.oracle_out = 3 * n;
    layout.oracle_ancillas = wire_range(3 * n + 1, static_cast<unsigned>(program.ancilla_wires.size()));
    return layout;
}

void RegisterLayout::validate() const {
    if (e1.size() != n || e2.size() != n || u.size() != n) {
        throw BadWiring("register sizes do not match N");
    }
    std::vector<unsigned> all;
    all.insert(all.end(), e1.begin(), e1.end());
    all.insert(all.end(), e2.begin(), e2.end());
    all.insert(all.end(), u.begin(), u.end());
    all.push_back(oracle_out);
    all.insert(all.end(), oracle_ancillas.begin(), oracle_ancillas.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw BadWiring("register layout repeats a wire");
    }
    if (!all.empty() && all.back() >= total_wires()) {
        throw BadWiring("register layout wire outside the register");
    }
}

Circuit embed_oracle(const OracleProgram &program, const RegisterLayout &layout) {
    layout.validate();
    if (program.input_wires.size() != layout.n || program.ancilla_wires.size() != layout.oracle_ancillas.size()) {
        throw BadWiring("oracle does not fit the register layout");
    }
    std::vector<unsigned> map(program.wire_count(), ~0U);
    for (unsigned k = 0; k < layout.n; ++k) {
        map[program.input_wires[k]] = layout.e1[k];
    }
    map[program.output_wire] = layout.oracle_out;
    for (std::size_t k = 0; k < program.ancilla_wires.size(); ++k) {
        map[program.ancilla_wires[k]] = layout.oracle_ancillas[k];
    }
    Circuit out{layout.total_wires(), {}};
    out.ops.reserve(program.circuit.ops.size());
    for (const auto &op : program.circuit.ops) {
        GateOp mapped{op.kind, {}};
        for (unsigned q : op.qubits) {
            if (q >= map.size() || map[q] == ~0U) {
                throw BadWiring("oracle gate touches an unassigned wire " + std::to_string(q));
            }
            mapped.qubits.push_back(map[q]);
        }
        out.ops.push_back(std::move(mapped));
    }
    return out;
}

StateVector prepare_input_state(const RegisterLayout &layout) {
    layout.validate();
    StateVector state(layout.total_wires());
    Circuit prep{layout.total_wires(), {}};
    for (unsigned k = 0; k < layout.n; ++k) {
        prep.ops.push_back(GateOp::h(layout.e1[k]));
        prep.ops.push_back(GateOp::cnot(layout.e1[k], layout.e2[k]));
    }
    for (unsigned k = 0; k < layout.n; ++k) {
        prep.ops.push_back(GateOp::h(layout.u[k]));
    }
    run_circuit(state, prep);
    return state;
}

void apply_cpi_layer(StateVector &state, const RegisterLayout &layout) {
    for (unsigned k = 0; k < layout.n; ++k) {
        apply_gate(state, GateOp::cpi(layout.oracle_out, layout.u[k], layout.e2[k]));
    }
}

void apply_oracle_phase_stage(StateVector &state, const OracleProgram &program, const RegisterLayout &layout) {
    const auto compute = embed_oracle(program, layout);
    run_circuit(state, compute);
    apply_cpi_layer(state, layout);
    run_circuit(state, compute.inverse());
}

double GlobalUnitary::unitarity_residual() const {
    const Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
    return (gram - identity).cwiseAbs().maxCoeff();
}

GlobalUnitary build_global_unitary(const OneHitSpec &spec) {
    spec.validate();
    if (spec.n > kMaxGlobalUnitaryN) {
        throw CapExceeded("global unitary for N=" + std::to_string(spec.n) + " exceeds the cap of N=" +
                          std::to_string(kMaxGlobalUnitaryN));
    }
    const unsigned n = spec.n;
    const BasisIndex c = encode_basis(spec.target);
    const BasisIndex mask = bit_mask(n) - 1;
    const Eigen::Index dim = Eigen::Index{1} << (3 * n);
    GlobalUnitary u{n, Eigen::MatrixXcd::Zero(dim, dim)};
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto idx = static_cast<BasisIndex>(i);
        const BasisIndex e1 = idx & mask;
        const BasisIndex uu = (idx >> (2 * n)) & mask;
        const bool odd = (std::popcount(uu) % 2) == 1;
        u.matrix(i, i) = (e1 != c && odd) ? -1.0 : 1.0;
    }
    return u;
}

PipelineOutcome run_pipeline(const OracleProgram &program, const NonlinearConfig &nl, Backend backend) {
    nl.validate();
    PipelineOutcome out;
    switch (backend) {
        case Backend::kDense:
            out = run_dense(program, nl);
            break;
        case Backend::kStructured:
            out = run_structured(program, nl);
            break;
        case Backend::kAnalytic:
            out = run_analytic(program);
            break;
    }
    check_distribution(out.e2_distribution, "run_pipeline");
    return out;
}

OneHitResult run_onehit(const OneHitSpec &spec, const NonlinearConfig &nl, Backend backend) {
    const auto program = synth_equality_inverse_oracle(spec);
    auto outcome = run_pipeline(program, nl, backend);
    OneHitResult result;
    result.backend = backend;
    result.success_probability = outcome.e2_distribution[encode_basis(spec.target)];
    result.e2_distribution = std::move(outcome.e2_distribution);
    result.drive_stats = std::move(outcome.drive_stats);
    return result;
}

AnalyticOutcome analytic_outcome(const TruthFunction &f) {
    const auto zeros = f.zeros();
    if (zeros.empty()) {
        throw DegenerateCancellation("inverse oracle function has no zeros; every amplitude cancels");
    }
    AnalyticOutcome out;
    out.distribution.assign(std::size_t{1} << f.input_count(), 0.0);
    const double p = 1.0 / static_cast<double>(zeros.size());
    for (auto z : zeros) {
        out.distribution[z] = p;
    }
    out.zeros = zeros.size();
    // A 3SAT oracle always has the all-ones / t=1 zero on top of its satisfying set.
    out.satisfying = f.is_sat() ? zeros.size() - 1 : zeros.size();
    return out;
}

SatTrial run_sat_trial(const CnfFormula &formula, const NonlinearConfig &nl, std::uint64_t seed,
                       Backend backend) {
    const auto program = synth_sat_inverse_oracle(formula);
    const auto outcome = run_pipeline(program, nl, backend);
    const OutcomeSampler sampler(outcome.e2_distribution);
    return sample_trial(formula, sampler, seed);
}

double unsat_confidence(unsigned repetitions) {
    return 1.0 - std::ldexp(1.0, -static_cast<int>(repetitions));
}

SatVerdict solve_sat(const CnfFormula &formula, unsigned repetitions, const NonlinearConfig &nl,
                     std::uint64_t seed, Backend backend) {
    if (repetitions == 0) {
        throw std::invalid_argument("solve_sat needs at least one repetition");
    }
    const auto program = synth_sat_inverse_oracle(formula);
    // The pipeline is deterministic up to the measurement, so one run serves every trial.
    const auto outcome = run_pipeline(program, nl, backend);
    const OutcomeSampler sampler(outcome.e2_distribution);

    SatVerdict verdict;
    verdict.repetitions = repetitions;
    verdict.seed = seed;
    if (outcome.zeros) {
        verdict.zeros_count = *outcome.zeros - 1;
    }
    for (unsigned i = 0; i < repetitions; ++i) {
        const auto trial = sample_trial(formula, sampler, derive_seed(seed, i));
        verdict.t_history.push_back(trial.t ? 1 : 0);
        if (!trial.t) {
            verdict.verdict = Verdict::kSat;
            verdict.witness = trial.x;
            verdict.confidence = 1.0;
            return verdict;
        }
    }
    verdict.verdict = Verdict::kUnsat;
    verdict.confidence = unsat_confidence(repetitions);
    return verdict;
}

std::vector<TraceStage> trace_onehit(const OneHitSpec &spec, const NonlinearConfig &nl) {
    const auto program = synth_equality_inverse_oracle(spec);
    const auto layout = RegisterLayout::for_program(program);
    const auto compute = embed_oracle(program, layout);

    std::vector<TraceStage> stages;
    auto state = prepare_input_state(layout);
    stages.push_back({"prepared", state});
    run_circuit(state, compute);
    stages.push_back({"oracle", state});
    apply_cpi_layer(state, layout);
    stages.push_back({"post-phase", state});
    // The drive acts on u only, so it commutes with the uncompute that follows.
    drive_register(state, layout.u, nl);
    stages.push_back({"post-drive", state});
    run_circuit(state, compute.inverse());
    stages.push_back({"uncomputed", state});
    return stages;
}

std::string format_ket(const StateVector &state, std::span<const unsigned> display_wires) {
    struct Term {
        std::string label;
        Amplitude amplitude;
    };
    std::vector<Term> terms;
    const auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) <= 1e-12) {
            continue;
        }
        std::string label;
        for (unsigned w : display_wires) {
            label.push_back(test_bit(i, w) ? '1' : '0');
        }
        terms.push_back({std::move(label), amps[i]});
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.label < b.label; });
    std::string out;
    for (const auto &term : terms) {
        if (!out.empty()) {
            out += ' ';
        }
        out += format_amplitude(term.amplitude) + "|" + term.label + ">";
    }
    return out;
}

}  // namespace nlsat
