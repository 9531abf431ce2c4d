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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlsat/bits.hpp"

namespace nlsat {

class Rng;

/// Variable `var` is 0-based; DIMACS literal k maps to var |k| - 1.
struct Literal {
    unsigned var = 0;
    bool negated = false;

    static Literal from_dimacs(int literal);
    int to_dimacs() const;

    friend bool operator==(const Literal &, const Literal &) = default;
};

using Clause = std::vector<Literal>;

/// Assignment bit k is the value of variable k (DIMACS variable k + 1).
using Assignment = Bits;

inline constexpr std::size_t kMaxClauseWidth = 3;

/// Largest variable count for exhaustive enumeration.
inline constexpr unsigned kMaxBruteForceVars = 24;

struct CnfFormula {
    unsigned var_count = 0;
    std::vector<Clause> clauses;

    /// Throws std::invalid_argument when a clause is empty, wider than 3, or
    /// mentions a variable outside [0, var_count).
    void validate() const;

    friend bool operator==(const CnfFormula &, const CnfFormula &) = default;
};

/// Parses DIMACS CNF: 'c' comment lines, a single "p cnf <vars> <clauses>" header,
/// then zero-terminated clauses of 1-3 literals that may span lines. Exactly the
/// declared number of clauses must follow. Throws ParseError.
CnfFormula parse_dimacs(std::string_view text);

/// Reads and parses a file. Throws Error if it cannot be read.
CnfFormula load_dimacs(const std::filesystem::path &path);

/// Canonical DIMACS: header line then one clause per line.
std::string emit_dimacs(const CnfFormula &formula);

/// FNV-1a over the canonical DIMACS text.
std::uint64_t formula_hash(const CnfFormula &formula);

bool eval_formula(const CnfFormula &formula, std::span<const std::uint8_t> assignment);

/// Packed evaluation: bit k of `packed` is variable k. Needs var_count <= 64.
bool eval_packed(const CnfFormula &formula, std::uint64_t packed);

/// Exact number of satisfying assignments. Throws CapExceeded above kMaxBruteForceVars.
std::uint64_t count_satisfying(const CnfFormula &formula);

struct BruteForceResult {
    bool satisfiable = false;
    std::optional<Assignment> witness;
};

/// Exhaustive search. The witness is the lexicographically first satisfying
/// assignment, reading variables in order 1..n with 0 < 1.
BruteForceResult brute_force_sat(const CnfFormula &formula);

/// m clauses over n variables, each with min(3, n) distinct variables and random signs.
CnfFormula random_3cnf(unsigned var_count, unsigned clause_count, Rng &rng);

}  // namespace nlsat
