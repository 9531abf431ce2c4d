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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nlsat/cnf.hpp"
#include "nlsat/nonlinear.hpp"
#include "nlsat/oracle.hpp"
#include "nlsat/state_vector.hpp"

namespace nlsat {

/// dense: full 3N+1+ancilla state vector, gate-level oracle.
/// structured: (e, u) table of 2^(2N) amplitudes. Holds because e1 = e2 on the whole
///   support; the oracle is still evaluated through its gates.
/// analytic: uniform distribution over the zeros of the truth function.
enum class Backend { kDense, kStructured, kAnalytic };

std::string_view backend_name(Backend backend) noexcept;
Backend parse_backend(std::string_view name);

/// Wire assignment for the dense pipeline:
///   e1 = [0, N), e2 = [N, 2N), u = [2N, 3N), oracle_out = 3N, ancillas after that.
struct RegisterLayout {
    unsigned n = 0;
    std::vector<unsigned> e1;
    std::vector<unsigned> e2;
    std::vector<unsigned> u;
    unsigned oracle_out = 0;
    std::vector<unsigned> oracle_ancillas;

    static RegisterLayout for_program(const OracleProgram &program);

    unsigned total_wires() const noexcept {
        return 3 * n + 1 + static_cast<unsigned>(oracle_ancillas.size());
    }

    /// Throws BadWiring when indices repeat or leave the register.
    void validate() const;
};

/// The oracle's circuit with its local wires mapped onto e1, oracle_out and ancillas.
Circuit embed_oracle(const OracleProgram &program, const RegisterLayout &layout);

/// H then CNOT(e1_k -> e2_k) for every pair, H on every u_k. The result has
/// amplitude 1/2^N on each |e, e, u> and nothing elsewhere.
StateVector prepare_input_state(const RegisterLayout &layout);

/// CPI(oracle_out, u_k, e2_k) for k = 0..N-1.
void apply_cpi_layer(StateVector &state, const RegisterLayout &layout);

/// Oracle compute, the CPI layer, oracle uncompute. On a basis state |e1, e2, u>
/// with clean scratch wires the net effect is the sign (-1)^(f(e1) * popcount(u)).
void apply_oracle_phase_stage(StateVector &state, const OracleProgram &program, const RegisterLayout &layout);

/// Dense diagonal operator on |e1; e2; u> (e1 in the low bits):
/// -1 where e1 != c and parity(u) = 1, +1 elsewhere on the diagonal.
struct GlobalUnitary {
    unsigned n = 0;
    Eigen::MatrixXcd matrix;

    /// max |(U^dagger U - I)_ij|
    double unitarity_residual() const;
};

inline constexpr unsigned kMaxGlobalUnitaryN = 3;

/// Throws CapExceeded for N > 3.
GlobalUnitary build_global_unitary(const OneHitSpec &spec);

struct PipelineOutcome {
    Backend backend = Backend::kStructured;
    unsigned n = 0;
    /// Indexed by the packed value of e2 (bit k = e2_k).
    std::vector<double> e2_distribution;
    std::vector<DriveStats> drive_stats;
    /// Number of zeros of f; analytic backend only.
    std::optional<std::uint64_t> zeros;
};

/// prepare -> phase stage -> drive the u register -> exact e2 distribution.
PipelineOutcome run_pipeline(const OracleProgram &program, const NonlinearConfig &nl, Backend backend);

struct OneHitResult {
    Backend backend = Backend::kStructured;
    std::vector<double> e2_distribution;
    double success_probability = 0.0;
    std::vector<DriveStats> drive_stats;
};

OneHitResult run_onehit(const OneHitSpec &spec, const NonlinearConfig &nl, Backend backend);

struct AnalyticOutcome {
    std::vector<double> distribution;
    std::uint64_t zeros = 0;
    /// Zeros with t = 0 (satisfying assignments) for 3SAT oracles, all zeros otherwise.
    std::uint64_t satisfying = 0;
};

/// Uniform distribution over the zeros of f. Throws DegenerateCancellation when f
/// has none.
AnalyticOutcome analytic_outcome(const TruthFunction &f);

struct SatTrial {
    bool t = true;
    Assignment x;
    BasisIndex outcome = 0;
};

/// One full pipeline run with the 3SAT oracle followed by a seeded measurement of e2.
/// Throws IntegrityError if t = 0 comes with an x that does not satisfy the formula.
SatTrial run_sat_trial(const CnfFormula &formula, const NonlinearConfig &nl, std::uint64_t seed,
                       Backend backend);

enum class Verdict { kSat, kUnsat };

struct SatVerdict {
    Verdict verdict = Verdict::kUnsat;
    std::optional<Assignment> witness;
    double confidence = 0.0;
    unsigned repetitions = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> t_history;
    std::optional<std::uint64_t> zeros_count;
};

inline constexpr unsigned kDefaultRepetitions = 20;

/// 1 - 2^-M
double unsat_confidence(unsigned repetitions);

/// Up to M trials; trial i measures with derive_seed(seed, i). Stops at the first
/// t = 0 (SAT, the measured x is the witness); otherwise UNSAT with confidence 1 - 2^-M.
SatVerdict solve_sat(const CnfFormula &formula, unsigned repetitions, const NonlinearConfig &nl,
                     std::uint64_t seed, Backend backend);

struct TraceStage {
    std::string label;
    StateVector state;
};

/// Dense one-hit run keeping the state after each step: prepared, oracle computed,
/// post-phase (CPI layer applied), post-drive, and uncomputed.
std::vector<TraceStage> trace_onehit(const OneHitSpec &spec, const NonlinearConfig &nl);

/// Nonzero amplitudes as "+0.500000000|010>" terms sorted by label, where the label
/// lists the bits of `display_wires` in order.
std::string format_ket(const StateVector &state, std::span<const unsigned> display_wires);

}  // namespace nlsat
