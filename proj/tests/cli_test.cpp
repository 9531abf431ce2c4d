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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nlsat/cnf.hpp"
#include "nlsat/oracle.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = nlsat::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data_file(const std::string &name) {
    return std::string(NLSAT_TEST_DATA_DIR) + "/" + name;
}

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        lines.push_back(line);
    }
    return lines;
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("nlsat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    fs::path dir_;
};

// Drops the one timing field so two reports can be compared byte for byte.
std::string without_timing(const std::string &text) {
    auto doc = json::parse(text);
    doc.erase("wall_time_s");
    return doc.dump();
}

}  // namespace

TEST(Cli, solve_contradiction) {
    const auto r = run({"solve", data_file("contradiction.cnf"), "--reps", "8"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "UNSAT confidence=0.99609375\n");
}

TEST(Cli, solve_unit) {
    const auto r = run({"solve", data_file("unit.cnf"), "--seed", "7"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "SAT 1\n");
}

TEST(Cli, solve_missing_file) {
    const auto r = run({"solve", "/nonexistent/missing.cnf"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("missing.cnf"), std::string::npos);
}

TEST(Cli, solve_agrees_with_brute_force_on_every_backend) {
    const auto formula = nlsat::load_dimacs(data_file("small4.cnf"));
    const bool sat = nlsat::brute_force_sat(formula).satisfiable;
    for (std::string backend : {"dense", "structured", "analytic"}) {
        const auto r = run({"solve", data_file("small4.cnf"), "--backend", backend});
        EXPECT_EQ(r.code, sat ? 0 : 1) << backend;
        if (sat) {
            ASSERT_EQ(r.out.rfind("SAT ", 0), 0u);
            const auto witness = nlsat::parse_bits(lines_of(r.out)[0].substr(4));
            EXPECT_TRUE(nlsat::eval_formula(formula, witness));
        }
    }
    const auto iterated = run({"solve", data_file("unit.cnf"), "--nonlinear", "iterated", "--epsilon", "0.2"});
    EXPECT_EQ(iterated.code, 0);
}

TEST(Cli, solve_rejects_bad_input) {
    EXPECT_EQ(run({"solve", data_file("unit.cnf"), "--reps", "0"}).code, 2);
    EXPECT_EQ(run({"solve", data_file("unit.cnf"), "--backend", "gpu"}).code, 2);
    EXPECT_EQ(run({"solve", data_file("unit.cnf"), "--bogus"}).code, 2);
    EXPECT_EQ(run({"solve"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliFiles, solve_reports_parse_errors_with_line) {
    const auto path = dir_ / "bad.cnf";
    std::ofstream(path) << "p cnf 2 1\n1 3 0\n";
    const auto r = run({"solve", path.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliFiles, solve_json_report) {
    const auto path = dir_ / "report.json";
    const auto r = run({"solve", data_file("or2.cnf"), "--seed", "3", "--json", path.string(), "--backend", "analytic"});
    ASSERT_EQ(r.code, 0);
    const auto doc = json::parse(slurp(path));
    EXPECT_EQ(doc.at("schema"), 1);
    EXPECT_EQ(doc.at("command"), "solve");
    EXPECT_EQ(doc.at("verdict"), "SAT");
    EXPECT_EQ(doc.at("seed"), 3);
    EXPECT_EQ(doc.at("repetitions"), 20);
    EXPECT_EQ(doc.at("backend"), "analytic");
    EXPECT_EQ(doc.at("variables"), 2);
    EXPECT_EQ(doc.at("clauses"), 1);
    EXPECT_EQ(doc.at("satisfying_count"), 3);
    EXPECT_EQ(doc.at("confidence"), 1.0);
    EXPECT_TRUE(doc.at("wall_time_s").is_number());
    EXPECT_EQ(doc.at("t_history").back(), 0);
    EXPECT_EQ(doc.at("nonlinear").at("mode"), "ideal");
    EXPECT_EQ("SAT " + doc.at("witness").get<std::string>() + "\n", r.out);

    const auto unsat = run({"solve", data_file("contradiction.cnf"), "--reps", "3", "--json"});
    ASSERT_EQ(unsat.code, 1);
    const auto lines = lines_of(unsat.out);
    ASSERT_EQ(lines.size(), 2u);
    const auto udoc = json::parse(lines[1]);
    EXPECT_EQ(udoc.at("verdict"), "UNSAT");
    EXPECT_TRUE(udoc.at("witness").is_null());
    EXPECT_EQ(udoc.at("t_history"), json::array({1, 1, 1}));
    EXPECT_EQ(udoc.at("confidence"), 0.875);
}

TEST(Cli, json_reports_are_deterministic) {
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"solve", data_file("random6.cnf"), "--seed", "11", "--json"},
             {"solve", data_file("small4.cnf"), "--seed", "5", "--json", "--nonlinear", "iterated"},
             {"onehit", "--n", "3", "--target", "110", "--json"}}) {
        const auto a = run(args);
        const auto b = run(args);
        const auto la = lines_of(a.out);
        const auto lb = lines_of(b.out);
        ASSERT_EQ(la.size(), lb.size());
        EXPECT_EQ(la.front(), lb.front());
        EXPECT_EQ(without_timing(la.back()), without_timing(lb.back()));
    }
}

TEST_F(CliFiles, emitted_circuit_reingests) {
    const auto path = dir_ / "oracle.txt";
    const auto r = run({"solve", data_file("small4.cnf"), "--emit-circuit", path.string()});
    ASSERT_NE(r.code, 2) << r.err;
    const auto program = nlsat::read_circuit_text(slurp(path));
    const auto expected = nlsat::synth_sat_inverse_oracle(nlsat::load_dimacs(data_file("small4.cnf")));
    EXPECT_EQ(program.circuit, expected.circuit);
    EXPECT_EQ(program.input_wires, expected.input_wires);
    EXPECT_EQ(program.output_wire, expected.output_wire);
    EXPECT_EQ(program.ancilla_wires, expected.ancilla_wires);
}

TEST(Cli, onehit_examples) {
    const auto r = run({"onehit", "--n", "3", "--target", "101"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "P(e2=101) = 1.000000000\n");

    EXPECT_EQ(run({"onehit", "--n", "1", "--target", "01"}).code, 2);
    EXPECT_EQ(run({"onehit", "--n", "0"}).code, 2);
    EXPECT_EQ(run({"onehit", "--n", "2", "--target", "1x"}).code, 2);
    EXPECT_EQ(run({"onehit", "--n", "4", "--trace"}).code, 2);

    for (std::string backend : {"dense", "structured", "analytic"}) {
        const auto b = run({"onehit", "--n", "2", "--target", "01", "--backend", backend});
        EXPECT_EQ(b.out, "P(e2=01) = 1.000000000\n") << backend;
    }
    const auto it = run({"onehit", "--n", "2", "--target", "11", "--nonlinear", "iterated", "--tol", "1e-8"});
    EXPECT_EQ(it.out, "P(e2=11) = 1.000000000\n");
}

TEST(Cli, onehit_trace_matches_worked_examples) {
    const auto case1 = lines_of(run({"onehit", "--n", "1", "--target", "0", "--trace"}).out);
    ASSERT_EQ(case1.size(), 6u);
    EXPECT_EQ(case1[1], "oracle [f u i]: +0.500000000|000> +0.500000000|010> +0.500000000|101> +0.500000000|111>");
    EXPECT_EQ(case1[2],
              "post-phase [f u i]: +0.500000000|000> +0.500000000|010> +0.500000000|101> -0.500000000|111>");
    EXPECT_EQ(case1[3], "post-drive [f u i]: +1.000000000|000>");
    EXPECT_EQ(case1[5], "P(e2=0) = 1.000000000");

    const auto case2 = lines_of(run({"onehit", "--n", "1", "--target", "1", "--trace"}).out);
    ASSERT_EQ(case2.size(), 6u);
    EXPECT_EQ(case2[1], "oracle [f u i]: +0.500000000|001> +0.500000000|011> +0.500000000|100> +0.500000000|110>");
    EXPECT_EQ(case2[2],
              "post-phase [f u i]: +0.500000000|001> +0.500000000|011> +0.500000000|100> -0.500000000|110>");
    EXPECT_EQ(case2[3], "post-drive [f u i]: +1.000000000|001>");
    EXPECT_EQ(case2[5], "P(e2=1) = 1.000000000");
}

TEST(Cli, onehit_json) {
    const auto r = run({"onehit", "--n", "2", "--target", "10", "--json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = json::parse(lines_of(r.out).back());
    EXPECT_EQ(doc.at("command"), "onehit");
    EXPECT_EQ(doc.at("target"), "10");
    EXPECT_EQ(doc.at("success_probability"), 1.0);
    EXPECT_EQ(doc.at("e2_distribution").at("10"), 1.0);
}

TEST(Cli, matrix_examples) {
    const auto one = run({"matrix", "--n", "1", "--target", "0"});
    EXPECT_EQ(one.code, 0);
    const auto lines = lines_of(one.out);
    ASSERT_EQ(lines.size(), 1u + 8u + 2u);
    EXPECT_EQ(lines[1], "0 0;0;0 +1");
    EXPECT_EQ(lines[6], "5 1;0;1 -1");
    EXPECT_EQ(lines[9], "negative_entries=2");
    EXPECT_EQ(lines[10], "unitarity_residual=0");

    const auto two = run({"matrix", "--n", "2", "--target", "11"});
    EXPECT_EQ(two.code, 0);
    EXPECT_EQ(lines_of(two.out).size(), 1u + 64u + 2u);
    EXPECT_NE(two.out.find("negative_entries=24\n"), std::string::npos);

    const auto four = run({"matrix", "--n", "4"});
    EXPECT_EQ(four.code, 2);
    EXPECT_NE(four.err.find("capacity"), std::string::npos);
}

TEST_F(CliFiles, scaling) {
    const auto r = run({"scaling", "--vars", "5", "--clauses-max", "3"});
    ASSERT_EQ(r.code, 0);
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "clauses,gates,ancillas,depth");
    long previous = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto first = lines[k].find(',');
        const long gates = std::stol(lines[k].substr(first + 1));
        EXPECT_EQ(std::stoul(lines[k].substr(0, first)), k);
        EXPECT_GT(gates, previous);
        previous = gates;
    }

    const auto path = dir_ / "scaling.csv";
    ASSERT_EQ(run({"scaling", "--out", path.string()}).code, 0);
    const auto rows = lines_of(slurp(path));
    ASSERT_EQ(rows.size(), 51u);
    std::vector<double> m;
    std::vector<double> gates;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto first = rows[k].find(',');
        m.push_back(std::stod(rows[k].substr(0, first)));
        gates.push_back(std::stod(rows[k].substr(first + 1)));
    }
    EXPECT_GE(nlsat::testing::linear_r_squared(m, gates), 0.99);

    EXPECT_EQ(run({"scaling", "--clauses-max", "0"}).code, 2);
    EXPECT_EQ(run({"scaling", "--lower", "--clauses-max", "4"}).code, 0);
}

TEST(Cli, verify_oracle) {
    const auto ok = run({"verify-oracle", data_file("small4.cnf")});
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_EQ(lines_of(ok.out).back(), "OK");

    const auto broken = run({"verify-oracle", data_file("small4.cnf"), "--drop-gate", "0"});
    EXPECT_EQ(broken.code, 1);
    EXPECT_NE(broken.out.find("violation row="), std::string::npos);
    EXPECT_EQ(lines_of(broken.out).back(), "FAIL");

    const auto wide = run({"verify-oracle", data_file("wide25.cnf")});
    EXPECT_EQ(wide.code, 2);
    EXPECT_NE(wide.err.find("capacity"), std::string::npos);

    for (std::string name : {"unit.cnf", "contradiction.cnf", "or2.cnf"}) {
        const auto r = run({"verify-oracle", data_file(name)});
        EXPECT_EQ(r.code, 0) << name << r.err;
    }
}
