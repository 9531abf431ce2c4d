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

#include <charconv>
#include <sstream>

#include "nlsat/error.hpp"
#include "nlsat/oracle.hpp"

namespace nlsat {

namespace {

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
            ++pos;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') {
            ++end;
        }
        if (end > pos) {
            out.push_back(line.substr(pos, end - pos));
        }
        pos = end;
    }
    return out;
}

unsigned wire_number(std::string_view token, std::size_t line) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "expected a wire number, got '" + std::string(token) + "'");
    }
    return value;
}

void append_list(std::string &out, std::string_view label, const std::vector<unsigned> &wires) {
    out += ' ';
    out += label;
    for (unsigned w : wires) {
        out += ' ';
        out += std::to_string(w);
    }
}

}  // namespace

std::string write_circuit_text(const OracleProgram &program) {
    std::string out;
    if (!program.description.empty()) {
        out += "# " + program.description + "\n";
    }
    out += "wires " + std::to_string(program.wire_count());
    append_list(out, "inputs", program.input_wires);
    out += " output " + std::to_string(program.output_wire);
    append_list(out, "ancilla", program.ancilla_wires);
    out += '\n';
    for (const auto &op : program.circuit.ops) {
        out += gate_name(op.kind);
        for (unsigned q : op.qubits) {
            out += ' ';
            out += std::to_string(q);
        }
        out += '\n';
    }
    return out;
}

OracleProgram read_circuit_text(std::string_view text) {
    OracleProgram program;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            if (!header_seen && program.description.empty()) {
                auto comment = line.substr(hash + 1);
                while (!comment.empty() && comment.front() == ' ') {
                    comment.remove_prefix(1);
                }
                program.description = std::string(comment);
            }
            line = line.substr(0, hash);
        }
        const auto tokens = tokens_of(line);
        if (tokens.empty()) {
            continue;
        }

        if (!header_seen) {
            if (tokens.size() < 6 || tokens[0] != "wires" || tokens[2] != "inputs") {
                throw ParseError(line_no, "expected header 'wires K inputs ... output O ancilla ...'");
            }
            program.circuit.qubit_count = wire_number(tokens[1], line_no);
            std::size_t k = 3;
            while (k < tokens.size() && tokens[k] != "output") {
                program.input_wires.push_back(wire_number(tokens[k++], line_no));
            }
            if (k + 2 > tokens.size()) {
                throw ParseError(line_no, "header is missing 'output'");
            }
            program.output_wire = wire_number(tokens[k + 1], line_no);
            k += 2;
            if (k >= tokens.size() || tokens[k] != "ancilla") {
                throw ParseError(line_no, "header is missing 'ancilla'");
            }
            for (++k; k < tokens.size(); ++k) {
                program.ancilla_wires.push_back(wire_number(tokens[k], line_no));
            }
            header_seen = true;
            continue;
        }

        GateOp op{};
        try {
            op.kind = parse_gate_kind(tokens[0]);
        } catch (const std::invalid_argument &e) {
            throw ParseError(line_no, e.what());
        }
        for (std::size_t k = 1; k < tokens.size(); ++k) {
            op.qubits.push_back(wire_number(tokens[k], line_no));
        }
        try {
            op.validate(program.circuit.qubit_count);
        } catch (const BadWiring &e) {
            throw ParseError(line_no, e.what());
        }
        program.circuit.ops.push_back(std::move(op));
    }
    if (!header_seen) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing circuit header");
    }
    return program;
}

}  // namespace nlsat
