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

#include "cosetmoe/strategy.h"

#include <stdexcept>

#include "cosetmoe/rng.h"

namespace cosetmoe {

namespace {

std::vector<size_t> first_qubits(size_t n) {
    std::vector<size_t> q(n);
    for (size_t i = 0; i < n; i++) {
        q[i] = i;
    }
    return q;
}

CosetGuess uniform_guess(const Gf2Subspace &a, RandomSource &rng) {
    Gf2Vec t = random_vec(rng, a.ambient() - a.dim());
    Gf2Vec tp = random_vec(rng, a.dim());
    return {std::move(t), std::move(tp)};
}

CosetGuess decompose(const Gf2Subspace &a, const Gf2Vec &v) {
    return {a.solve_coset_membership(v).t, a.complement().solve_coset_membership(v).t};
}

// Computational basis state |bits> on the same backend as `like`.
QuantumReg basis_register(const QuantumReg &like, const Gf2Vec &bits, Party owner) {
    if (like.backend() == Backend::kWiesner) {
        return QuantumReg::from_wiesner({bits, Gf2Vec(bits.size())}, owner);
    }
    return QuantumReg::from_statevector(StateVector::basis(bits.size(), bits.to_uint()), owner);
}

class BobAll final : public Strategy {
  public:
    std::string name() const override { return "bob_all"; }
    Split split(QuantumReg reg, RandomSource &) const override {
        reg.assign_all(Party::kBob);
        return Split(std::move(reg));
    }
};

class CharlieAll final : public Strategy {
  public:
    std::string name() const override { return "charlie_all"; }
    Split split(QuantumReg reg, RandomSource &) const override {
        reg.assign_all(Party::kCharlie);
        return Split(std::move(reg));
    }
};

class Mix final : public Strategy {
  public:
    explicit Mix(double q) : q_(q) {}
    std::string name() const override { return "mix:" + nlohmann::json(q_).dump(); }
    Split split(QuantumReg reg, RandomSource &rng) const override {
        bool to_bob = rng.bernoulli(q_);
        reg.assign_all(to_bob ? Party::kBob : Party::kCharlie);
        Split s{std::move(reg)};
        s.coin = to_bob;
        return s;
    }

  private:
    double q_;
};

// Measures every qubit in fixed or random BB84 bases; both parties get the record.
class MeasureAll final : public Strategy {
  public:
    MeasureAll(bool computational, std::optional<Gf2Vec> theta)
        : computational_(computational), theta_(std::move(theta)) {}

    std::string name() const override {
        if (computational_) {
            return "measure_computational";
        }
        return "measure_wiesner:" + (theta_ ? theta_->to_string() : std::string("random"));
    }

    Split split(QuantumReg reg, RandomSource &rng) const override {
        const size_t n = reg.num_qubits();
        Gf2Vec theta(n);
        if (!computational_) {
            if (theta_) {
                if (theta_->size() != n) {
                    throw std::invalid_argument("measure_wiesner: basis string has wrong length");
                }
                theta = *theta_;
            } else {
                theta = random_vec(rng, n);
            }
        }
        std::vector<size_t> q = first_qubits(n);
        Gf2Vec x = measure_bases(reg, q, theta, rng);
        reg.assign_all(Party::kCharlie);
        Split s{std::move(reg)};
        s.log.push_back(std::move(x));
        s.basis = std::move(theta);
        return s;
    }

    CosetGuess bob_answer(const Gf2Subspace &a, Split &s, RandomSource &) const override {
        return decompose(a, s.log.at(0));
    }
    Gf2Vec charlie_answer(const Gf2Subspace &a, const Gf2Vec &, Split &s,
                          RandomSource &) const override {
        return a.complement().solve_coset_membership(s.log.at(0)).t;
    }

  private:
    bool computational_;
    std::optional<Gf2Vec> theta_;
};

class KeepAndSubstitute final : public Strategy {
  public:
    explicit KeepAndSubstitute(std::optional<Gf2Vec> state) : state_(std::move(state)) {}
    std::string name() const override {
        return "keep_and_substitute" + (state_ ? ":" + state_->to_string() : std::string());
    }
    Split split(QuantumReg reg, RandomSource &) const override {
        const size_t n = reg.num_qubits();
        Gf2Vec bits = state_ ? *state_ : Gf2Vec(n);
        if (bits.size() != n) {
            throw std::invalid_argument("keep_and_substitute: state has wrong length");
        }
        reg.assign_all(Party::kCharlie);
        Split s{std::move(reg)};
        s.bob_reg = basis_register(s.reg, bits, Party::kBob);
        return s;
    }

  private:
    std::optional<Gf2Vec> state_;
};

// Copies every qubit into an ancilla with a CNOT; Bob keeps the data,
// Charlie the copies.
class CnotCopy final : public Strategy {
  public:
    std::string name() const override { return "cnot_copy"; }
    bool needs_statevector() const override { return true; }
    size_t qubits_needed(size_t n) const override { return 2 * n; }
    Split split(QuantumReg reg, RandomSource &rng) const override {
        const size_t n = reg.num_qubits();
        AdversaryChannel ch;
        ch.append_ancillas(n);
        std::vector<size_t> data;
        std::vector<size_t> copies;
        for (size_t i = 0; i < n; i++) {
            ch.cnot(i, n + i);
            data.push_back(i);
            copies.push_back(n + i);
        }
        ch.assign(data, Party::kBob).assign(copies, Party::kCharlie);
        std::vector<Gf2Vec> log = apply_adversary(reg, ch, rng);
        Split s{std::move(reg)};
        s.log = std::move(log);
        return s;
    }
};

}  // namespace

CosetGuess Strategy::bob_answer(const Gf2Subspace &a, Split &s, RandomSource &rng) const {
    if (s.bob_reg) {
        auto [t, tp] = measure_coset_basis(*s.bob_reg, first_qubits(a.ambient()), a, rng);
        return {std::move(t), std::move(tp)};
    }
    std::vector<size_t> q = s.reg.qubits_of(Party::kBob);
    if (q.empty()) {
        return uniform_guess(a, rng);
    }
    auto [t, tp] = measure_coset_basis(s.reg, q, a, rng);
    return {std::move(t), std::move(tp)};
}

Gf2Vec Strategy::charlie_answer(const Gf2Subspace &a, const Gf2Vec &, Split &s,
                                RandomSource &rng) const {
    std::vector<size_t> q = s.reg.qubits_of(Party::kCharlie);
    if (q.empty()) {
        return random_vec(rng, a.dim());
    }
    return measure_coset_basis(s.reg, q, a, rng).second;
}

StrategySpec StrategySpec::parse(const std::string &text) {
    StrategySpec s;
    size_t colon = text.find(':');
    s.kind = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    bool has_arg = colon != std::string::npos;
    if (s.kind == "mix") {
        if (!has_arg) {
            throw std::invalid_argument("mix needs a probability, e.g. mix:0.5");
        }
        size_t used = 0;
        s.q = std::stod(arg, &used);
        if (used != arg.size() || !(s.q >= 0 && s.q <= 1)) {
            throw std::invalid_argument("mix: q must lie in [0, 1]");
        }
    } else if (s.kind == "measure_wiesner") {
        if (has_arg && arg != "random") {
            s.theta = Gf2Vec::from_string(arg);
        }
    } else if (s.kind == "keep_and_substitute") {
        if (has_arg) {
            s.substitute = Gf2Vec::from_string(arg);
        }
    } else if (s.kind == "bob_all" || s.kind == "charlie_all" ||
               s.kind == "measure_computational" || s.kind == "cnot_copy") {
        if (has_arg) {
            throw std::invalid_argument(s.kind + " takes no parameter");
        }
    } else {
        throw std::invalid_argument("unknown strategy: " + text);
    }
    return s;
}

std::string StrategySpec::to_string() const { return builtin_strategy(*this)->name(); }

std::unique_ptr<Strategy> builtin_strategy(const StrategySpec &spec) {
    if (spec.kind == "bob_all") {
        return std::make_unique<BobAll>();
    }
    if (spec.kind == "charlie_all") {
        return std::make_unique<CharlieAll>();
    }
    if (spec.kind == "mix") {
        if (!(spec.q >= 0 && spec.q <= 1)) {
            throw std::invalid_argument("mix: q must lie in [0, 1]");
        }
        return std::make_unique<Mix>(spec.q);
    }
    if (spec.kind == "measure_computational") {
        return std::make_unique<MeasureAll>(true, std::nullopt);
    }
    if (spec.kind == "measure_wiesner") {
        return std::make_unique<MeasureAll>(false, spec.theta);
    }
    if (spec.kind == "keep_and_substitute") {
        return std::make_unique<KeepAndSubstitute>(spec.substitute);
    }
    if (spec.kind == "cnot_copy") {
        return std::make_unique<CnotCopy>();
    }
    throw std::invalid_argument("unknown strategy: " + spec.kind);
}

std::unique_ptr<Strategy> builtin_strategy(const std::string &text) {
    return builtin_strategy(StrategySpec::parse(text));
}

std::vector<std::string> builtin_strategy_names() {
    return {"bob_all",         "charlie_all",         "mix:0.5",  "measure_computational",
            "measure_wiesner", "keep_and_substitute", "cnot_copy"};
}

}  // namespace cosetmoe
