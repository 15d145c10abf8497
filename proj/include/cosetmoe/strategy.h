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

#ifndef COSETMOE_STRATEGY_H
#define COSETMOE_STRATEGY_H

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cosetmoe/qsim.h"

namespace cosetmoe {

/// Guess of the coset label (t, t').
struct CosetGuess {
    Gf2Vec t;
    Gf2Vec tp;
};

/// What the splitting channel leaves behind for Bob and Charlie.
struct Split {
    explicit Split(QuantumReg r) : reg(std::move(r)) {}

    QuantumReg reg;                      // ownership marks Bob's and Charlie's qubits
    std::optional<QuantumReg> bob_reg;   // replacement register handed to Bob
    std::vector<Gf2Vec> log;             // classical record of the channel
    std::optional<Gf2Vec> basis;         // bases used by an intercepting measurement
    bool coin = false;
};

/// Adversary for the game and for the protocol attacks: Bob is the party the
/// receiver's answer comes from, Charlie is the eavesdropper.
class Strategy {
  public:
    virtual ~Strategy() = default;

    virtual std::string name() const = 0;
    virtual bool needs_statevector() const { return false; }
    /// Total qubit count the channel needs on an n-qubit input.
    virtual size_t qubits_needed(size_t n) const { return n; }

    virtual Split split(QuantumReg reg, RandomSource &rng) const = 0;
    virtual CosetGuess bob_answer(const Gf2Subspace &a, Split &s, RandomSource &rng) const;
    virtual Gf2Vec charlie_answer(const Gf2Subspace &a, const Gf2Vec &t_bob, Split &s,
                                  RandomSource &rng) const;
};

/// Parsed form of "bob_all", "charlie_all", "mix:<q>", "measure_computational",
/// "measure_wiesner[:random|:<bits>]", "keep_and_substitute[:<bits>]", "cnot_copy".
struct StrategySpec {
    std::string kind;
    double q = 0.5;
    std::optional<Gf2Vec> theta;       // fixed measurement bases
    std::optional<Gf2Vec> substitute;  // computational state sent to Bob

    static StrategySpec parse(const std::string &text);
    std::string to_string() const;
};

std::unique_ptr<Strategy> builtin_strategy(const StrategySpec &spec);
std::unique_ptr<Strategy> builtin_strategy(const std::string &text);

/// Every built-in kind, with default parameters.
std::vector<std::string> builtin_strategy_names();

}  // namespace cosetmoe

#endif
