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

#include "nlsat/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace nlsat {

namespace {

using nlohmann::json;

json nonlinear_json(const NonlinearConfig &nl) {
    json j;
    j["mode"] = std::string(drive_mode_name(nl.mode));
    j["residual_tol"] = nl.residual_tol;
    if (nl.mode == DriveMode::kIterated) {
        j["epsilon"] = nl.epsilon;
        j["eta"] = nl.eta;
        j["max_steps"] = nl.max_steps;
    }
    return j;
}

json drive_json(const std::vector<DriveStats> &stats) {
    json arr = json::array();
    for (const auto &s : stats) {
        arr.push_back({{"steps_used", s.steps_used}, {"final_residual", s.final_residual}, {"prior_norm", s.prior_norm}});
    }
    return arr;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

}  // namespace

std::string solve_report_json(const CnfFormula &formula, const SatVerdict &verdict, Backend backend,
                              const NonlinearConfig &nl, double wall_time_s) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "solve";
    j["formula_hash"] = hex64(formula_hash(formula));
    j["variables"] = formula.var_count;
    j["clauses"] = formula.clauses.size();
    j["backend"] = std::string(backend_name(backend));
    j["nonlinear"] = nonlinear_json(nl);
    j["repetitions"] = verdict.repetitions;
    j["seed"] = verdict.seed;
    j["t_history"] = verdict.t_history;
    j["verdict"] = verdict.verdict == Verdict::kSat ? "SAT" : "UNSAT";
    j["confidence"] = verdict.confidence;
    j["witness"] = verdict.witness ? json(bits_to_string(*verdict.witness)) : json(nullptr);
    j["satisfying_count"] = verdict.zeros_count ? json(*verdict.zeros_count) : json(nullptr);
    j["wall_time_s"] = wall_time_s;
    return j.dump();
}

std::string onehit_report_json(const OneHitSpec &spec, const OneHitResult &result, const NonlinearConfig &nl,
                               double wall_time_s) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "onehit";
    j["n"] = spec.n;
    j["target"] = bits_to_string(spec.target);
    j["backend"] = std::string(backend_name(result.backend));
    j["nonlinear"] = nonlinear_json(nl);
    j["success_probability"] = result.success_probability;
    json dist = json::object();
    for (std::size_t e = 0; e < result.e2_distribution.size(); ++e) {
        if (result.e2_distribution[e] > 0.0) {
            dist[basis_to_string(e, spec.n)] = result.e2_distribution[e];
        }
    }
    j["e2_distribution"] = dist;
    j["drive"] = drive_json(result.drive_stats);
    j["wall_time_s"] = wall_time_s;
    return j.dump();
}

}  // namespace nlsat
