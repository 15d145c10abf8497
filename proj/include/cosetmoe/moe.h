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

#ifndef COSETMOE_MOE_H
#define COSETMOE_MOE_H

#include <optional>

#include "cosetmoe/strategy.h"

namespace cosetmoe {

struct MoeParams {
    size_t n = 4;
    SubspaceFamily family = SubspaceFamily::kRegister;
    size_t m = 0;   // Bob's acceptance radius
    size_t mp = 0;  // Charlie's acceptance radius
    uint64_t trials = 10000;
    uint64_t seed = 1;
    int threads = 0;
    bool blind_charlie = false;  // Charlie gets a random string instead of Bob's guess

    void validate() const;
    nlohmann::json to_json() const;
};

struct Interval {
    double lo = 0;
    double hi = 1;
};

/// Wilson score interval for k successes in n trials (95% by default).
Interval wilson_interval(uint64_t k, uint64_t n, double z = 1.959963984540054);

struct GameResult {
    uint64_t wins = 0;
    uint64_t trials = 0;
    uint64_t bob_correct = 0;
    uint64_t charlie_correct = 0;
    double estimate = 0;
    Interval ci;

    /// Binomial standard error sqrt(p (1 - p) / trials) at probability p.
    double sigma(double p) const;
    double sigma() const { return sigma(estimate); }
    nlohmann::json to_json() const;
};

struct TrialRecord {
    CosetDescriptor challenge;
    CosetGuess bob;
    Gf2Vec charlie;
    bool bob_ok = false;
    bool charlie_ok = false;
};

/// Wiesner records for register subspaces and classical channels, dense
/// statevectors otherwise.
Backend game_backend(const MoeParams &p, const Strategy &s);

/// One round of the game, randomness drawn from the (seed, trial) stream.
TrialRecord play_trial(const MoeParams &p, const Strategy &s, uint64_t trial);

GameResult play_leaky(const MoeParams &p, const Strategy &s);
/// Same totals computed on one thread without the parallel runner.
GameResult play_leaky_serial(const MoeParams &p, const Strategy &s);

/// Exact winning probability when the strategy has a closed form.
std::optional<double> analytic_win(const StrategySpec &spec, const MoeParams &p);

/// measure_computational by summing over every subspace of the family, every
/// (t, t') and every measurement outcome. Small n only.
double measure_computational_exact(size_t n, SubspaceFamily family, size_t m, size_t mp);

/// Pr[Bin(trials, p) <= k].
double binomial_cdf(size_t k, size_t trials, double p);

}  // namespace cosetmoe

#endif
