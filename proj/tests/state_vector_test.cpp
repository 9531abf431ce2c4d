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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlsat/error.hpp"
#include "nlsat/rng.hpp"
#include "test_util.hpp"

using namespace nlsat;
using nlsat::testing::random_state;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

StateVector bell_pair() {
    StateVector s(2);
    apply_gate(s, GateOp::h(0));
    apply_gate(s, GateOp::cnot(0, 1));
    return s;
}

std::vector<GateOp> sample_ops(unsigned q) {
    return {GateOp::x(q - 1),
            GateOp::h(0),
            GateOp::cnot(1, 0),
            GateOp::ccx(0, 2, 1),
            GateOp::mcx({0, 1, 3}, 2),
            GateOp::cz(2, 3),
            GateOp::cpi(3, 1, 0)};
}

}  // namespace

TEST(StateVector, new_state_is_all_zeros) {
    auto one = new_state(1);
    ASSERT_EQ(one.size(), 2u);
    EXPECT_EQ(one[0], Amplitude(1.0));
    EXPECT_EQ(one[1], Amplitude(0.0));

    auto three = new_state(3);
    EXPECT_EQ(three[0], Amplitude(1.0));
    for (BasisIndex i = 1; i < 8; ++i) {
        EXPECT_EQ(three[i], Amplitude(0.0));
    }
    EXPECT_THROW(new_state(29), CapExceeded);
    EXPECT_THROW(new_state(0), std::invalid_argument);
}

TEST(StateVector, hadamard_and_pair_preparation) {
    StateVector s(1);
    apply_gate(s, GateOp::h(0));
    EXPECT_NEAR(s[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(s[1].real(), kInvSqrt2, 1e-15);

    auto pair = bell_pair();
    EXPECT_NEAR(pair[0b00].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(pair[0b11].real(), kInvSqrt2, 1e-15);
    EXPECT_EQ(pair[0b01], Amplitude(0.0));
    EXPECT_EQ(pair[0b10], Amplitude(0.0));
}

TEST(StateVector, bad_wiring) {
    StateVector s(3);
    EXPECT_THROW(apply_gate(s, GateOp::cnot(1, 1)), BadWiring);
    EXPECT_THROW(apply_gate(s, GateOp::x(3)), BadWiring);
    EXPECT_THROW(apply_gate(s, GateOp{GateKind::kCCX, {0, 1}}), BadWiring);
    EXPECT_THROW(apply_gate(s, GateOp{GateKind::kMCX, {0}}), BadWiring);
    EXPECT_THROW(apply_gate(s, GateOp::cpi(0, 1, 0)), BadWiring);
    Circuit wide{4, {}};
    EXPECT_THROW(run_circuit(s, wide), BadWiring);
}

TEST(StateVector, cpi_matrix_listing) {
    const auto m = cpi_matrix();
    EXPECT_EQ(m[6][6], Amplitude(-1.0));
    EXPECT_EQ(m[5][5], Amplitude(1.0));
    const double expected_diag[8] = {1, 1, 1, 1, 1, 1, -1, -1};
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            EXPECT_EQ(m[r][c], Amplitude(r == c ? expected_diag[r] : 0.0)) << r << "," << c;
        }
    }
    // Involution.
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            Amplitude acc = 0;
            for (int k = 0; k < 8; ++k) {
                acc += m[r][k] * m[k][c];
            }
            EXPECT_EQ(acc, Amplitude(r == c ? 1.0 : 0.0));
        }
    }
}

TEST(StateVector, cpi_gate_matches_matrix_and_is_local) {
    const auto m = cpi_matrix();
    // f on qubit 2, u on qubit 1, i on qubit 0 makes the block index equal the basis index.
    for (BasisIndex k = 0; k < 8; ++k) {
        auto s = StateVector::basis(3, k);
        apply_gate(s, GateOp::cpi(2, 1, 0));
        EXPECT_EQ(s[k], m[k][k]) << k;
    }
    // Same law with a scrambled wiring inside a wider register.
    for (BasisIndex k = 0; k < 32; ++k) {
        auto s = StateVector::basis(5, k);
        apply_gate(s, GateOp::cpi(4, 0, 2));
        const bool flips = test_bit(k, 4) && test_bit(k, 0);
        EXPECT_EQ(s[k], Amplitude(flips ? -1.0 : 1.0)) << k;
    }
}

TEST(StateVector, renormalize) {
    auto s = StateVector::from_amplitudes(1, {2.0, 0.0});
    EXPECT_DOUBLE_EQ(renormalize(s), 2.0);
    EXPECT_EQ(s[0], Amplitude(1.0));

    auto zero = StateVector::from_amplitudes(1, {0.0, 0.0});
    EXPECT_THROW(renormalize(zero), DegenerateCancellation);

    // (1/2) * (2|000> + 0|101>)
    std::vector<Amplitude> amps(8);
    amps[0b000] = 0.5 * 2.0;
    amps[0b101] = 0.5 * 0.0;
    auto driven = StateVector::from_amplitudes(3, amps);
    EXPECT_NEAR(renormalize(driven), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(driven[0] - 1.0), 0.0, 1e-12);
}

TEST(StateVector, probability_of) {
    StateVector s(1);
    apply_gate(s, GateOp::h(0));
    EXPECT_NEAR(probability_of(s, std::array{QubitValue{0, false}}), 0.5, 1e-15);
    EXPECT_NEAR(probability_of(s, std::span<const QubitValue>{}), 1.0, 1e-15);

    auto driven = StateVector::basis(3, 0);
    EXPECT_DOUBLE_EQ(probability_of(driven, std::array{QubitValue{0, false}}), 1.0);

    auto pair = bell_pair();
    EXPECT_NEAR(probability_of(pair, std::array{QubitValue{0, true}, QubitValue{1, false}}), 0.0, 1e-15);
    EXPECT_THROW(probability_of(pair, std::array{QubitValue{2, true}}), BadWiring);
}

TEST(StateVector, sampling_is_deterministic_and_respects_zeros) {
    StateVector zero(3);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        EXPECT_EQ(sample_measurement(zero, seed), 0u);
    }

    auto pair = bell_pair();
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const auto outcome = sample_measurement(pair, seed);
        ASSERT_TRUE(outcome == 0b00 || outcome == 0b11) << outcome;
    }
    EXPECT_EQ(sample_measurement(pair, 1234), sample_measurement(pair, 1234));
}

TEST(StateVector, sampling_uniform_chi_square) {
    StateVector s(2);
    apply_gate(s, GateOp::h(0));
    apply_gate(s, GateOp::h(1));
    constexpr int kSamples = 100000;
    std::array<int, 4> counts{};
    for (int k = 0; k < kSamples; ++k) {
        ++counts[sample_measurement(s, derive_seed(42, k))];
    }
    double chi2 = 0.0;
    for (int c : counts) {
        EXPECT_NEAR(c / double(kSamples), 0.25, 0.01);
        const double expected = kSamples / 4.0;
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // 3 degrees of freedom, p = 0.001.
    EXPECT_LT(chi2, 16.27);
}

TEST(StateVector, outcome_sampler_skips_zero_mass) {
    const std::vector<double> probs{0.0, 0.5, 0.0, 0.5, 0.0};
    OutcomeSampler sampler(probs);
    Rng rng(3);
    for (int k = 0; k < 5000; ++k) {
        const auto o = sampler.draw(rng);
        ASSERT_TRUE(o == 1 || o == 3);
    }
    EXPECT_THROW(OutcomeSampler(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(StateVector, run_circuit_identity_and_reversal) {
    Rng rng(7);
    const auto input = random_state(6, rng);

    auto same = input;
    run_circuit(same, Circuit{6, {}});
    EXPECT_EQ(same, input);

    Circuit c{6, {}};
    for (int k = 0; k < 1000; ++k) {
        std::vector<unsigned> wires{0, 1, 2, 3, 4, 5};
        for (unsigned i = 5; i > 0; --i) {
            std::swap(wires[i], wires[rng.below(i + 1)]);
        }
        switch (rng.below(7)) {
            case 0: c.ops.push_back(GateOp::x(wires[0])); break;
            case 1: c.ops.push_back(GateOp::h(wires[0])); break;
            case 2: c.ops.push_back(GateOp::cnot(wires[0], wires[1])); break;
            case 3: c.ops.push_back(GateOp::ccx(wires[0], wires[1], wires[2])); break;
            case 4: c.ops.push_back(GateOp::mcx({wires[0], wires[1], wires[2], wires[3]}, wires[4])); break;
            case 5: c.ops.push_back(GateOp::cz(wires[0], wires[1])); break;
            default: c.ops.push_back(GateOp::cpi(wires[0], wires[1], wires[2])); break;
        }
    }
    auto s = input;
    run_circuit(s, c);
    run_circuit(s, c.inverse());
    EXPECT_LT(distance(s, input), 1e-10);
}

TEST(StateVector, every_gate_is_self_inverse_and_norm_preserving) {
    Rng rng(11);
    for (const auto &op : sample_ops(5)) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto input = random_state(5, rng);
            auto s = input;
            apply_gate(s, op);
            EXPECT_NEAR(s.norm(), 1.0, 1e-12) << gate_name(op.kind);
            apply_gate(s, op);
            ASSERT_LT(distance(s, input), 1e-12) << gate_name(op.kind);
        }
    }
}

TEST(StateVector, norm_preserved_over_many_gates) {
    Rng rng(5);
    auto s = random_state(10, rng);
    const auto ops = sample_ops(10);
    for (int k = 0; k < 100000; ++k) {
        apply_gate(s, ops[rng.below(ops.size())]);
    }
    EXPECT_NEAR(s.norm(), 1.0, 1e-9);
}

TEST(StateVector, basis_index_round_trip) {
    for (unsigned q = 1; q <= 10; ++q) {
        for (BasisIndex k = 0; k < (BasisIndex{1} << q); ++k) {
            ASSERT_EQ(encode_basis(decode_basis(k, q)), k);
        }
    }
    EXPECT_EQ(bits_to_string(decode_basis(0b001, 3)), "100");
    EXPECT_EQ(encode_basis(parse_bits("101")), 0b101u);
    EXPECT_THROW(parse_bits("10x"), std::invalid_argument);
}

TEST(StateVector, gate_names_round_trip) {
    for (auto kind : {GateKind::kX, GateKind::kH, GateKind::kCNOT, GateKind::kCCX, GateKind::kMCX, GateKind::kCZ,
                      GateKind::kCPI}) {
        EXPECT_EQ(parse_gate_kind(gate_name(kind)), kind);
    }
    EXPECT_THROW(parse_gate_kind("SWAP"), std::invalid_argument);
}
