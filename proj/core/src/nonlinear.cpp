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

#include "nlsat/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nlsat/error.hpp"

namespace nlsat {

namespace {

void check_qubit(const StateVector &state, unsigned qubit) {
    if (qubit >= state.qubit_count()) {
        throw BadWiring("drive qubit " + std::to_string(qubit) + " outside register of " +
                        std::to_string(state.qubit_count()));
    }
}

/// Sums over the pairs (i, i|bit) with bit clear: |psi0|^2, |psi1|^2, |psi0+psi1|^2
/// and Re<psi0+psi1, psi1>.
struct SplitMoments {
    double p0 = 0.0;
    double p1 = 0.0;
    double merged = 0.0;
    double overlap = 0.0;
};

SplitMoments split_moments(const StateVector &state, unsigned qubit) {
    SplitMoments m;
    const BasisIndex b = bit_mask(qubit);
    const auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (i & b) {
            continue;
        }
        const Amplitude a0 = amps[i];
        const Amplitude a1 = amps[i | b];
        const Amplitude sum = a0 + a1;
        m.p0 += std::norm(a0);
        m.p1 += std::norm(a1);
        m.merged += std::norm(sum);
        m.overlap += (std::conj(sum) * a1).real();
    }
    return m;
}

/// Squared residual after a step with retention factor `keep` (= 1 - s), relative to
/// the current normalized state: keep^2 p1 / (|A|^2 - 2 keep c + 2 keep^2 p1).
double stepped_residual_sq(const SplitMoments &m, double keep) {
    const double denom = m.merged - 2.0 * keep * m.overlap + 2.0 * keep * keep * m.p1;
    return keep * keep * m.p1 / denom;
}

/// Largest keep <= 1 - eta whose step contracts the residual by at least (1 - eta).
double choose_keep(const SplitMoments &m, double eta) {
    const double base = 1.0 - eta;
    const double goal = base * base * m.p1;  // (1 - eta)^2 * residual^2, state normalized
    if (stepped_residual_sq(m, base) <= goal) {
        return base;
    }
    // The stepped residual is 0 at keep = 0 and too large at keep = base; the
    // constraint is a quadratic in keep with one sign change on that interval.
    double lo = 0.0;
    double hi = base;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (stepped_residual_sq(m, mid) <= goal) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

void merge_step(StateVector &state, unsigned qubit, double keep) {
    const BasisIndex b = bit_mask(qubit);
    const double moved = 1.0 - keep;
    auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (i & b) {
            continue;
        }
        amps[i] += moved * amps[i | b];
        amps[i | b] *= keep;
    }
}

void project_out_one(StateVector &state, unsigned qubit) {
    const BasisIndex b = bit_mask(qubit);
    auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (i & b) {
            amps[i] = 0.0;
        }
    }
}

}  // namespace

std::string_view drive_mode_name(DriveMode mode) noexcept {
    return mode == DriveMode::kIdeal ? "ideal" : "iterated";
}

DriveMode parse_drive_mode(std::string_view name) {
    if (name == "ideal") {
        return DriveMode::kIdeal;
    }
    if (name == "iterated") {
        return DriveMode::kIterated;
    }
    throw std::invalid_argument("unknown drive mode '" + std::string(name) + "'");
}

NonlinearConfig NonlinearConfig::ideal() {
    return {};
}

NonlinearConfig NonlinearConfig::iterated(double epsilon, double residual_tol, int max_steps) {
    NonlinearConfig c;
    c.mode = DriveMode::kIterated;
    c.epsilon = epsilon;
    c.eta = std::sin(epsilon);
    c.residual_tol = residual_tol;
    c.max_steps = max_steps;
    c.validate();
    return c;
}

void NonlinearConfig::validate() const {
    if (!(residual_tol > 0.0)) {
        throw std::invalid_argument("residual_tol must be positive");
    }
    if (max_steps < 1) {
        throw std::invalid_argument("max_steps must be at least 1");
    }
    if (mode == DriveMode::kIdeal) {
        return;
    }
    if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 4)) {
        throw std::invalid_argument("epsilon must lie in (0, pi/4)");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in (0, 1]");
    }
}

double residual(const StateVector &state, unsigned qubit) {
    check_qubit(state, qubit);
    const BasisIndex b = bit_mask(qubit);
    double total = 0.0;
    double ones = 0.0;
    const auto amps = state.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        total += p;
        if (i & b) {
            ones += p;
        }
    }
    return total > 0.0 ? std::sqrt(ones / total) : 0.0;
}

DriveStats drive_ideal(StateVector &state, unsigned qubit) {
    check_qubit(state, qubit);
    const BasisIndex b = bit_mask(qubit);
    auto amps = state.amplitudes();
    DriveStats stats;
    // Already an eigenstate: leave it bit-for-bit alone so the drive is idempotent.
    bool any_one = false;
    for (BasisIndex i = 0; i < amps.size() && !any_one; ++i) {
        any_one = (i & b) != 0 && amps[i] != Amplitude(0.0);
    }
    if (!any_one) {
        stats.prior_norm = state.norm();
        if (!(stats.prior_norm > 0.0)) {
            throw DegenerateCancellation("drive on a zero vector");
        }
        return stats;
    }
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (i & b) {
            continue;
        }
        amps[i] += amps[i | b];
        amps[i | b] = 0.0;
    }
    stats.prior_norm = renormalize(state);
    return stats;
}

DriveStats drive_iterated(StateVector &state, unsigned qubit, const NonlinearConfig &config) {
    check_qubit(state, qubit);
    config.validate();
    renormalize(state);

    SplitMoments m = split_moments(state, qubit);
    if (!(std::sqrt(m.merged) > kDegeneracyTolerance)) {
        throw DegenerateCancellation("qubit " + std::to_string(qubit) +
                                     ": |0> and |1> components cancel completely");
    }

    DriveStats stats;
    double res = std::sqrt(m.p1);
    while (res > config.residual_tol && stats.steps_used < config.max_steps) {
        merge_step(state, qubit, choose_keep(m, config.eta));
        renormalize(state);
        m = split_moments(state, qubit);
        res = std::sqrt(m.p1);
        ++stats.steps_used;
    }
    if (res > config.residual_tol) {
        throw BudgetExhausted("qubit " + std::to_string(qubit) + ": residual " + std::to_string(res) +
                              " above tolerance after " + std::to_string(stats.steps_used) + " steps");
    }
    stats.final_residual = res;
    project_out_one(state, qubit);
    stats.prior_norm = renormalize(state);
    return stats;
}

double drive_step(StateVector &state, unsigned qubit, double eta) {
    check_qubit(state, qubit);
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in (0, 1]");
    }
    renormalize(state);
    const SplitMoments m = split_moments(state, qubit);
    if (!(std::sqrt(m.merged) > kDegeneracyTolerance)) {
        throw DegenerateCancellation("qubit " + std::to_string(qubit) +
                                     ": |0> and |1> components cancel completely");
    }
    if (m.p1 == 0.0) {
        return 0.0;
    }
    merge_step(state, qubit, choose_keep(m, eta));
    renormalize(state);
    return residual(state, qubit);
}

DriveStats drive(StateVector &state, unsigned qubit, const NonlinearConfig &config) {
    return config.mode == DriveMode::kIdeal ? drive_ideal(state, qubit) : drive_iterated(state, qubit, config);
}

std::vector<DriveStats> drive_register(StateVector &state, std::span<const unsigned> qubits,
                                       const NonlinearConfig &config) {
    std::vector<unsigned> order(qubits.begin(), qubits.end());
    std::sort(order.begin(), order.end());
    if (std::adjacent_find(order.begin(), order.end()) != order.end()) {
        throw BadWiring("drive_register: repeated qubit");
    }
    std::vector<DriveStats> stats;
    stats.reserve(order.size());
    for (unsigned q : order) {
        stats.push_back(drive(state, q, config));
    }
    return stats;
}

}  // namespace nlsat
