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

#include <benchmark/benchmark.h>

#include "nlsat/cnf.hpp"
#include "nlsat/nonlinear.hpp"
#include "nlsat/oracle.hpp"
#include "nlsat/pipeline.hpp"
#include "nlsat/rng.hpp"
#include "nlsat/state_vector.hpp"

namespace {

using namespace nlsat;

StateVector spread_state(unsigned q) {
    StateVector s(q);
    for (unsigned k = 0; k < q; ++k) {
        apply_gate(s, GateOp::h(k));
    }
    return s;
}

void BM_ApplyGate(benchmark::State &state, GateOp op) {
    const auto q = static_cast<unsigned>(state.range(0));
    auto s = spread_state(q);
    for (auto _ : state) {
        apply_gate(s, op);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK_CAPTURE(BM_ApplyGate, h, GateOp::h(3))->DenseRange(12, 22, 5);
BENCHMARK_CAPTURE(BM_ApplyGate, cnot, GateOp::cnot(1, 7))->DenseRange(12, 22, 5);
BENCHMARK_CAPTURE(BM_ApplyGate, mcx4, GateOp::mcx({0, 2, 4, 6}, 9))->DenseRange(12, 22, 5);
BENCHMARK_CAPTURE(BM_ApplyGate, cpi, GateOp::cpi(10, 5, 0))->DenseRange(12, 22, 5);

void BM_DriveIdeal(benchmark::State &state) {
    const auto q = static_cast<unsigned>(state.range(0));
    const auto input = spread_state(q);
    for (auto _ : state) {
        state.PauseTiming();
        auto s = input;
        state.ResumeTiming();
        drive_ideal(s, q / 2);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_DriveIdeal)->DenseRange(12, 20, 4);

void BM_DriveIterated(benchmark::State &state) {
    const auto config = NonlinearConfig::iterated(0.1, 1e-10);
    const auto input = spread_state(12);
    int steps = 0;
    for (auto _ : state) {
        auto s = input;
        steps = drive_iterated(s, 6, config).steps_used;
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.counters["steps"] = steps;
}
BENCHMARK(BM_DriveIterated);

void BM_OneHit(benchmark::State &state, Backend backend) {
    const auto n = static_cast<unsigned>(state.range(0));
    const OneHitSpec spec{n, Bits(n, 1)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_onehit(spec, NonlinearConfig::ideal(), backend).success_probability);
    }
}
BENCHMARK_CAPTURE(BM_OneHit, dense, Backend::kDense)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OneHit, structured, Backend::kStructured)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

void BM_SolveStructured(benchmark::State &state) {
    Rng rng(42);
    const auto n = static_cast<unsigned>(state.range(0));
    const auto formula = random_3cnf(n, 4 * n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_sat(formula, kDefaultRepetitions, NonlinearConfig::ideal(), 0,
                                           Backend::kStructured).verdict);
    }
}
BENCHMARK(BM_SolveStructured)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_SynthesizeSatOracle(benchmark::State &state) {
    Rng rng(7);
    const auto formula = random_3cnf(20, static_cast<unsigned>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(synth_sat_inverse_oracle(formula).circuit.ops.size());
    }
}
BENCHMARK(BM_SynthesizeSatOracle)->RangeMultiplier(4)->Range(4, 1024);

void BM_VerifySynthesis(benchmark::State &state) {
    Rng rng(9);
    const auto formula = random_3cnf(5, static_cast<unsigned>(state.range(0)), rng);
    const auto program = synth_sat_inverse_oracle(formula);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_synthesis(program).ok());
    }
    state.counters["wires"] = program.wire_count();
}
BENCHMARK(BM_VerifySynthesis)->DenseRange(2, 10, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
