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

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "nlsat/cnf.hpp"
#include "nlsat/error.hpp"
#include "nlsat/nonlinear.hpp"
#include "nlsat/oracle.hpp"
#include "nlsat/pipeline.hpp"
#include "nlsat/report.hpp"
#include "nlsat/rng.hpp"

namespace nlsat::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DriveFlags {
    std::string backend = "structured";
    std::string nonlinear = "ideal";
    double epsilon = 0.1;
    double tol = 1e-10;

    void attach(CLI::App *cmd) {
        cmd->add_option("--backend", backend, "dense | structured | analytic")
            ->check(CLI::IsMember({"dense", "structured", "analytic"}))
            ->capture_default_str();
        cmd->add_option("--nonlinear", nonlinear, "ideal | iterated")
            ->check(CLI::IsMember({"ideal", "iterated"}))
            ->capture_default_str();
        cmd->add_option("--epsilon", epsilon, "rotation offset in radians (iterated drive)")->capture_default_str();
        cmd->add_option("--tol", tol, "residual tolerance of the drive")->capture_default_str();
    }

    NonlinearConfig config() const {
        if (parse_drive_mode(nonlinear) == DriveMode::kIdeal) {
            auto c = NonlinearConfig::ideal();
            c.residual_tol = tol;
            return c;
        }
        return NonlinearConfig::iterated(epsilon, tol);
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error("cannot write '" + path + "'");
    }
    file << text;
    if (!file) {
        throw Error("error writing '" + path + "'");
    }
}

/// An empty path means standard output.
void emit_json(const std::string &path, const std::string &json, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << json << '\n';
    } else {
        write_text(path, json + "\n");
    }
}

std::string format_double(const char *fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

OneHitSpec onehit_spec(unsigned n, const std::string &target) {
    if (n == 0) {
        throw UsageError("--n must be at least 1");
    }
    const std::string bits = target.empty() ? std::string(n, '0') : target;
    if (bits.size() != n) {
        throw UsageError("--target has " + std::to_string(bits.size()) + " bits but --n is " + std::to_string(n));
    }
    try {
        return OneHitSpec::from_string(bits);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

std::string display_header(unsigned n) {
    if (n == 1) {
        return "[f u i]";
    }
    std::string h = "[f";
    for (unsigned k = 0; k < n; ++k) {
        h += " u" + std::to_string(k);
    }
    for (unsigned k = 0; k < n; ++k) {
        h += " i" + std::to_string(k);
    }
    return h + "]";
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"nonlinear one-hit oracle and 3SAT simulator", "nlsat"};
    app.require_subcommand(1);

    // solve
    auto *solve = app.add_subcommand("solve", "decide a DIMACS CNF formula by repeated pipeline runs");
    std::string solve_path;
    unsigned reps = kDefaultRepetitions;
    std::uint64_t seed = 0;
    std::string json_path;
    std::string emit_circuit;
    DriveFlags solve_drive;
    solve->add_option("path", solve_path, "DIMACS CNF file")->required();
    solve->add_option("--reps", reps, "repetitions M")->capture_default_str();
    solve->add_option("--seed", seed, "measurement seed")->capture_default_str();
    auto *solve_json = solve->add_option("--json", json_path, "write the JSON report to PATH (stdout if omitted)")
                           ->expected(0, 1);
    solve->add_option("--emit-circuit", emit_circuit, "write the oracle circuit listing to PATH");
    solve_drive.attach(solve);

    // onehit
    auto *onehit = app.add_subcommand("onehit", "run the one-hit oracle construction");
    unsigned n = 0;
    std::string target;
    bool trace = false;
    DriveFlags onehit_drive;
    onehit->add_option("--n", n, "oracle width N")->required();
    onehit->add_option("--target", target, "accepted input c, bit 0 first (default all zeros)");
    onehit->add_flag("--trace", trace, "print the state after each stage (N <= 3)");
    auto *onehit_json = onehit->add_option("--json", json_path, "write the JSON report to PATH (stdout if omitted)")
                            ->expected(0, 1);
    onehit_drive.attach(onehit);

    // verify-oracle
    auto *verify = app.add_subcommand("verify-oracle", "exhaustively check the synthesized 3SAT oracle");
    std::string verify_path;
    long long drop_gate = -1;
    verify->add_option("path", verify_path, "DIMACS CNF file")->required();
    verify->add_option("--emit-circuit", emit_circuit, "write the oracle circuit listing to PATH");
    verify->add_option("--drop-gate", drop_gate, "remove gate K before checking (mutation test hook)")
        ->group("");

    // matrix
    auto *matrix = app.add_subcommand("matrix", "dump the diagonal of the global phase operator U");
    unsigned matrix_n = 0;
    std::string matrix_target;
    matrix->add_option("--n", matrix_n, "oracle width N (<= 3)")->required();
    matrix->add_option("--target", matrix_target, "accepted input c, bit 0 first (default all zeros)");

    // scaling
    auto *scaling = app.add_subcommand("scaling", "emit oracle gate counts against clause count as CSV");
    unsigned vars = 5;
    unsigned clauses_max = 50;
    std::string csv_path;
    bool lowered = false;
    scaling->add_option("--vars", vars, "variables per formula")->capture_default_str();
    scaling->add_option("--clauses-max", clauses_max, "largest clause count m")->capture_default_str();
    scaling->add_option("--out", csv_path, "CSV path (stdout if omitted)");
    scaling->add_option("--seed", seed, "formula seed")->capture_default_str();
    scaling->add_flag("--lower", lowered, "count gates after lowering MCX to CCX ladders");

    std::vector<const char *> argv{"nlsat"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitError;
    }

    try {
        if (solve->parsed()) {
            const auto start = std::chrono::steady_clock::now();
            if (reps == 0) {
                throw UsageError("--reps must be at least 1");
            }
            const auto formula = load_dimacs(solve_path);
            const auto nl = solve_drive.config();
            const auto backend = parse_backend(solve_drive.backend);
            if (!emit_circuit.empty()) {
                write_text(emit_circuit, write_circuit_text(synth_sat_inverse_oracle(formula)));
            }
            const auto verdict = solve_sat(formula, reps, nl, seed, backend);
            if (verdict.verdict == Verdict::kSat) {
                out << "SAT " << bits_to_string(*verdict.witness) << '\n';
            } else {
                out << "UNSAT confidence=" << format_double("%.17g", verdict.confidence) << '\n';
            }
            if (solve_json->count() > 0) {
                emit_json(json_path, solve_report_json(formula, verdict, backend, nl, seconds_since(start)), out);
            }
            return verdict.verdict == Verdict::kSat ? kExitOk : kExitUnsat;
        }

        if (onehit->parsed()) {
            const auto start = std::chrono::steady_clock::now();
            const auto spec = onehit_spec(n, target);
            const auto nl = onehit_drive.config();
            const auto backend = parse_backend(onehit_drive.backend);
            if (trace) {
                if (n > 3) {
                    throw UsageError("--trace supports N <= 3");
                }
                const auto stages = trace_onehit(spec, nl);
                const auto layout = RegisterLayout::for_program(synth_equality_inverse_oracle(spec));
                std::vector<unsigned> display{layout.oracle_out};
                display.insert(display.end(), layout.u.begin(), layout.u.end());
                display.insert(display.end(), layout.e2.begin(), layout.e2.end());
                const auto header = display_header(n);
                for (const auto &stage : stages) {
                    out << stage.label << ' ' << header << ": " << format_ket(stage.state, display) << '\n';
                }
            }
            const auto result = run_onehit(spec, nl, backend);
            out << "P(e2=" << bits_to_string(spec.target) << ") = " << format_double("%.9f", result.success_probability)
                << '\n';
            if (onehit_json->count() > 0) {
                emit_json(json_path, onehit_report_json(spec, result, nl, seconds_since(start)), out);
            }
            return kExitOk;
        }

        if (verify->parsed()) {
            const auto formula = load_dimacs(verify_path);
            auto program = synth_sat_inverse_oracle(formula);
            if (drop_gate >= 0) {
                if (static_cast<std::size_t>(drop_gate) >= program.circuit.ops.size()) {
                    throw UsageError("--drop-gate index out of range");
                }
                program.circuit.ops.erase(program.circuit.ops.begin() + drop_gate);
            }
            if (!emit_circuit.empty()) {
                write_text(emit_circuit, write_circuit_text(program));
            }
            const auto report = verify_synthesis(program);
            const unsigned width = program.wire_count();
            out << "wires=" << width << " rows=" << report.rows_checked
                << " bijective=" << (report.bijective ? "yes" : "no") << " violations=" << report.violation_count
                << '\n';
            for (const auto &v : report.violations) {
                out << "violation row=" << basis_to_string(v.row, width)
                    << " result=" << basis_to_string(v.result, width) << " (" << v.reason << ")\n";
            }
            out << (report.ok() ? "OK" : "FAIL") << '\n';
            return report.ok() ? kExitOk : kExitFailure;
        }

        if (matrix->parsed()) {
            const auto spec = onehit_spec(matrix_n, matrix_target);
            const auto u = build_global_unitary(spec);
            const unsigned w = spec.n;
            const auto dim = static_cast<BasisIndex>(u.matrix.rows());
            const BasisIndex mask = bit_mask(w) - 1;
            out << "# U diagonal n=" << w << " target=" << bits_to_string(spec.target) << " dim=" << dim
                << " (index bits e1;e2;u, bit 0 first)\n";
            std::size_t negatives = 0;
            for (BasisIndex i = 0; i < dim; ++i) {
                const double d = u.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
                negatives += d < 0 ? 1 : 0;
                out << i << ' ' << basis_to_string(i & mask, w) << ';' << basis_to_string((i >> w) & mask, w) << ';'
                    << basis_to_string((i >> (2 * w)) & mask, w) << ' ' << (d < 0 ? "-1" : "+1") << '\n';
            }
            out << "negative_entries=" << negatives << '\n';
            out << "unitarity_residual=" << format_double("%.3g", u.unitarity_residual()) << '\n';
            return kExitOk;
        }

        if (scaling->parsed()) {
            if (clauses_max == 0) {
                throw UsageError("--clauses-max must be at least 1");
            }
            if (vars == 0) {
                throw UsageError("--vars must be at least 1");
            }
            Rng rng(seed);
            // Each row's formula extends the previous one by one clause.
            const auto pool = random_3cnf(vars, clauses_max, rng);
            std::string csv = "clauses,gates,ancillas,depth\n";
            for (unsigned m = 1; m <= clauses_max; ++m) {
                CnfFormula formula{vars, {pool.clauses.begin(), pool.clauses.begin() + m}};
                auto program = synth_sat_inverse_oracle(formula);
                if (lowered) {
                    program = lower_multi_controls(program);
                }
                const auto census = gate_census(program);
                csv += std::to_string(m) + "," + std::to_string(census.total) + "," +
                       std::to_string(census.ancillas) + "," + std::to_string(census.depth) + "\n";
            }
            if (csv_path.empty()) {
                out << csv;
            } else {
                write_text(csv_path, csv);
            }
            return kExitOk;
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return kExitError;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return kExitError;
    } catch (const CapExceeded &e) {
        err << "capacity exceeded: " << e.what() << '\n';
        return kExitError;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::invalid_argument &e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace nlsat::cli
