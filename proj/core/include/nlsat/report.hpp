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

#include <string>

#include "nlsat/cnf.hpp"
#include "nlsat/nonlinear.hpp"
#include "nlsat/oracle.hpp"
#include "nlsat/pipeline.hpp"

namespace nlsat {

inline constexpr int kReportSchema = 1;

/// Every report is one JSON object with keys in sorted order. "wall_time_s" is the
/// only field that varies between identical invocations.
std::string solve_report_json(const CnfFormula &formula, const SatVerdict &verdict, Backend backend,
                              const NonlinearConfig &nl, double wall_time_s);

std::string onehit_report_json(const OneHitSpec &spec, const OneHitResult &result, const NonlinearConfig &nl,
                               double wall_time_s);

}  // namespace nlsat
