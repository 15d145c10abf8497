// Copyright 2026 The cosetmoe Authors
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

#ifndef COSETMOE_ACCEPTANCE_H
#define COSETMOE_ACCEPTANCE_H

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cosetmoe {

struct AcceptanceOptions {
    uint64_t seed = 2026;
    int threads = 0;
    /// Criteria to run (1-based); empty means all.
    std::vector<int> only;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    nlohmann::json detail;
};

/// Runs the acceptance criteria; `progress` (if set) sees each result as it
/// finishes. Results do not depend on the thread count.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions &opts,
    const std::function<void(const CriterionResult &)> &progress = nullptr);

nlohmann::json acceptance_report(const std::vector<CriterionResult> &results);
/// "criterion <id> <PASS|FAIL> <name>".
std::string criterion_line(const CriterionResult &r);

}  // namespace cosetmoe

#endif
