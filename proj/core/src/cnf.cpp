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

#include "nlsat/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nlsat/error.hpp"
#include "nlsat/rng.hpp"

namespace nlsat {

namespace {

struct ClauseMasks {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
};

std::vector<ClauseMasks> clause_masks(const CnfFormula &formula) {
    std::vector<ClauseMasks> masks;
    masks.reserve(formula.clauses.size());
    for (const auto &clause : formula.clauses) {
        ClauseMasks m;
        for (const auto &lit : clause) {
            (lit.negated ? m.negative : m.positive) |= std::uint64_t{1} << lit.var;
        }
        masks.push_back(m);
    }
    return masks;
}

bool eval_masks(std::span<const ClauseMasks> masks, std::uint64_t x) {
    for (const auto &m : masks) {
        if (((x & m.positive) | (~x & m.negative)) == 0) {
            return false;
        }
    }
    return true;
}

void check_brute_force_cap(const CnfFormula &formula) {
    if (formula.var_count > kMaxBruteForceVars) {
        throw CapExceeded(std::to_string(formula.var_count) + " variables exceed the enumeration cap of " +
                          std::to_string(kMaxBruteForceVars));
    }
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
        }
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) {
            ++end;
        }
        if (end > pos) {
            tokens.push_back(line.substr(pos, end - pos));
        }
        pos = end;
    }
    return tokens;
}

std::optional<long long> parse_integer(std::string_view token) {
    long long value = 0;
    const char *first = token.data();
    const char *last = token.data() + token.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

Literal Literal::from_dimacs(int literal) {
    if (literal == 0) {
        throw std::invalid_argument("DIMACS literal 0 is the clause terminator");
    }
    return {static_cast<unsigned>(std::abs(literal)) - 1, literal < 0};
}

int Literal::to_dimacs() const {
    const int v = static_cast<int>(var) + 1;
    return negated ? -v : v;
}

void CnfFormula::validate() const {
    if (var_count == 0) {
        throw std::invalid_argument("formula needs at least one variable");
    }
    if (clauses.empty()) {
        throw std::invalid_argument("formula needs at least one clause");
    }
    for (const auto &clause : clauses) {
        if (clause.empty() || clause.size() > kMaxClauseWidth) {
            throw std::invalid_argument("clauses must hold 1 to 3 literals");
        }
        for (const auto &lit : clause) {
            if (lit.var >= var_count) {
                throw std::invalid_argument("literal variable out of range");
            }
        }
    }
}

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula formula;
    bool header_seen = false;
    long long declared_clauses = 0;
    Clause current;
    std::size_t line_no = 0;
    std::size_t last_line = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        const auto tokens = split_tokens(line);
        if (tokens.empty()) {
            if (eol == text.size()) {
                break;
            }
            continue;
        }
        last_line = line_no;
        if (tokens[0].front() == 'c') {
            continue;
        }
        if (tokens[0] == "p") {
            if (header_seen) {
                throw ParseError(line_no, "duplicate problem line");
            }
            if (tokens.size() != 4 || tokens[1] != "cnf") {
                throw ParseError(line_no, "expected 'p cnf <variables> <clauses>'");
            }
            const auto vars = parse_integer(tokens[2]);
            const auto count = parse_integer(tokens[3]);
            if (!vars || !count || *vars < 0 || *count < 0) {
                throw ParseError(line_no, "malformed counts in problem line");
            }
            if (*vars < 1 || *vars > 0x7FFFFFFF) {
                throw ParseError(line_no, "variable count must be at least 1");
            }
            if (*count == 0) {
                throw ParseError(line_no, "formula declares zero clauses");
            }
            formula.var_count = static_cast<unsigned>(*vars);
            declared_clauses = *count;
            header_seen = true;
            continue;
        }
        if (!header_seen) {
            throw ParseError(line_no, "clause data before the 'p cnf' header");
        }
        for (auto token : tokens) {
            const auto lit = parse_integer(token);
            if (!lit) {
                throw ParseError(line_no, "unexpected token '" + std::string(token) + "'");
            }
            if (static_cast<long long>(formula.clauses.size()) == declared_clauses) {
                throw ParseError(line_no, "trailing data after the declared " + std::to_string(declared_clauses) +
                                              " clauses");
            }
            if (*lit == 0) {
                if (current.empty()) {
                    throw ParseError(line_no, "empty clause");
                }
                formula.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (std::llabs(*lit) > static_cast<long long>(formula.var_count)) {
                throw ParseError(line_no, "literal " + std::string(token) + " out of range for " +
                                              std::to_string(formula.var_count) + " variables");
            }
            if (current.size() == kMaxClauseWidth) {
                throw ParseError(line_no, "clause longer than 3 literals");
            }
            current.push_back(Literal::from_dimacs(static_cast<int>(*lit)));
        }
    }

    const std::size_t end_line = std::max<std::size_t>(last_line, 1);
    if (!header_seen) {
        throw ParseError(end_line, "missing 'p cnf' header");
    }
    if (!current.empty()) {
        throw ParseError(end_line, "unterminated clause at end of input");
    }
    if (static_cast<long long>(formula.clauses.size()) != declared_clauses) {
        throw ParseError(end_line, "expected " + std::to_string(declared_clauses) + " clauses, found " +
                                       std::to_string(formula.clauses.size()));
    }
    return formula;
}

CnfFormula load_dimacs(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dimacs(buffer.str());
}

std::string emit_dimacs(const CnfFormula &formula) {
    std::string out = "p cnf " + std::to_string(formula.var_count) + " " + std::to_string(formula.clauses.size()) + "\n";
    for (const auto &clause : formula.clauses) {
        for (const auto &lit : clause) {
            out += std::to_string(lit.to_dimacs());
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

std::uint64_t formula_hash(const CnfFormula &formula) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : emit_dimacs(formula)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool eval_formula(const CnfFormula &formula, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != formula.var_count) {
        throw std::invalid_argument("assignment length " + std::to_string(assignment.size()) + " != variable count " +
                                    std::to_string(formula.var_count));
    }
    return std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const Clause &clause) {
        return std::any_of(clause.begin(), clause.end(), [&](const Literal &lit) {
            return (assignment[lit.var] != 0) != lit.negated;
        });
    });
}

bool eval_packed(const CnfFormula &formula, std::uint64_t packed) {
    if (formula.var_count > 64) {
        throw CapExceeded("packed evaluation supports at most 64 variables");
    }
    const auto masks = clause_masks(formula);
    return eval_masks(masks, packed);
}

std::uint64_t count_satisfying(const CnfFormula &formula) {
    check_brute_force_cap(formula);
    const auto masks = clause_masks(formula);
    const std::uint64_t limit = std::uint64_t{1} << formula.var_count;
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < limit; ++x) {
        count += eval_masks(masks, x) ? 1 : 0;
    }
    return count;
}

BruteForceResult brute_force_sat(const CnfFormula &formula) {
    check_brute_force_cap(formula);
    const auto masks = clause_masks(formula);
    const unsigned n = formula.var_count;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t k = 0; k < limit; ++k) {
        // Counter bit n-1-i is variable i, so variable 1 is the most significant.
        std::uint64_t x = 0;
        for (unsigned i = 0; i < n; ++i) {
            if ((k >> (n - 1 - i)) & 1U) {
                x |= std::uint64_t{1} << i;
            }
        }
        if (eval_masks(masks, x)) {
            return {true, decode_basis(x, n)};
        }
    }
    return {false, std::nullopt};
}

CnfFormula random_3cnf(unsigned var_count, unsigned clause_count, Rng &rng) {
    if (var_count == 0) {
        throw std::invalid_argument("random_3cnf: need at least one variable");
    }
    CnfFormula formula;
    formula.var_count = var_count;
    const unsigned width = std::min<unsigned>(3, var_count);
    formula.clauses.reserve(clause_count);
    for (unsigned c = 0; c < clause_count; ++c) {
        Clause clause;
        while (clause.size() < width) {
            const auto var = static_cast<unsigned>(rng.below(var_count));
            const bool taken = std::any_of(clause.begin(), clause.end(), [&](const Literal &l) { return l.var == var; });
            if (!taken) {
                clause.push_back({var, rng.coin()});
            }
        }
        formula.clauses.push_back(std::move(clause));
    }
    return formula;
}

}  // namespace nlsat
