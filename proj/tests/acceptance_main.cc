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

#include <cstdlib>
#include <iostream>

#include "cosetmoe/acceptance.h"

int main(int argc, char **argv) {
    cosetmoe::AcceptanceOptions opts;
    if (argc > 1) {
        opts.seed = std::strtoull(argv[1], nullptr, 10);
    }
    bool all = true;
    cosetmoe::run_acceptance(opts, [&](const cosetmoe::CriterionResult &r) {
        std::cout << cosetmoe::criterion_line(r) << std::endl;
        all = all && r.pass;
    });
    return all ? 0 : 1;
}
