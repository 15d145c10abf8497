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

#include "cosetmoe/moe.h"

#include <cmath>
#include <stdexcept>

#include "cosetmoe/info.h"
#include "cosetmoe/rng.h"
#include "cosetmoe/trials.h"

namespace cosetmoe {

namespace {

constexpr uint64_t kBlindStream = 0x6b1d5eedULL;

double ball_fraction(size_t n, size_t m) {
    return to_double(ball_volume(n, std::min(m, n))) / std::exp2(static_cast<double>(n));
}

double choose(size_t n, size_t k) { return to_double(binomial(n, k)); }

GameResult summarize(uint64_t trials, const std::array<uint64_t, 3> &c) {
    GameResult r;
    r.trials = trials;
    r.wins = c[0];
    r.bob_correct = c[1];
    r.charlie_correct = c[2];
    r.estimate = trials == 0 ? 0 : static_cast<double>(r.wins) / static_cast<double>(trials);
    r.ci = wilson_interval(r.wins, trials);
    return r;
}

}  // namespace

void MoeParams::validate() const {
    if (n == 0 || n % 2 != 0) {
        throw std::invalid_argument("moe: n must be a positive even integer");
    }
    if (m > n / 2 || mp > n / 2) {
        throw std::invalid_argument("moe: radii must not exceed n/2");
    }
}

nlohmann::json MoeParams::to_json() const {
    return {{"n", n},
            {"family", std::string(family_name(family))},
            {"m", m},
            {"mp", mp},
            {"trials", trials},
            {"seed", seed},
            {"blind_charlie", blind_charlie}};
}

Interval wilson_interval(uint64_t k, uint64_t n, double z) {
    if (n == 0) {
        return {0, 1};
    }
    double nn = static_cast<double>(n);
    double p = static_cast<double>(k) / nn;
    double z2 = z * z;
    double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
    double half = z / (1 + z2 / nn) * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double GameResult::sigma(double p) const {
    if (trials == 0) {
        return 0;
    }
    return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

nlohmann::json GameResult::to_json() const {
    return {{"wins", wins},
            {"trials", trials},
            {"estimate", estimate},
            {"ci95", {ci.lo, ci.hi}},
            {"bob_correct", bob_correct},
            {"charlie_correct", charlie_correct},
            {"sigma", sigma()}};
}

Backend game_backend(const MoeParams &p, const Strategy &s) {
    if (p.family == SubspaceFamily::kRegister && !s.needs_statevector()) {
        return Backend::kWiesner;
    }
    return Backend::kStatevector;
}

TrialRecord play_trial(const MoeParams &p, const Strategy &s, uint64_t trial) {
    const size_t n = p.n;
    const size_t half = n / 2;
    Backend backend = game_backend(p, s);
    if (backend == Backend::kStatevector && s.qubits_needed(n) > StateVector::kMaxQubits) {
        throw std::invalid_argument("moe: strategy " + s.name() + " needs " +
                                    std::to_string(s.qubits_needed(n)) +
                                    " qubits, above the statevector limit");
    }
    TrialRng rng(p.seed, trial);
    TrialRecord rec;
    rec.challenge.a = sample_subspace(n, p.family, rng);
    rec.challenge.t = random_vec(rng, half);
    rec.challenge.tp = random_vec(rng, half);
    Split split = s.split(prepare_coset_state(rec.challenge, backend), rng);
    const Gf2Subspace &a = rec.challenge.a;
    rec.bob = s.bob_answer(a, split, rng);
    Gf2Vec leak = rec.bob.t;
    if (p.blind_charlie) {
        TrialRng blind(p.seed ^ kBlindStream, trial);
        leak = random_vec(blind, half);
    }
    rec.charlie = s.charlie_answer(a, leak, split, rng);
    rec.bob_ok = hamming(rec.bob.t, rec.challenge.t) <= p.m;
    rec.charlie_ok = hamming(rec.charlie, rec.challenge.tp) <= p.mp;
    return rec;
}

GameResult play_leaky(const MoeParams &p, const Strategy &s) {
    p.validate();
    auto c = count_trials<3>(p.trials, p.threads, [&](uint64_t i, std::array<uint64_t, 3> &acc) {
        TrialRecord r = play_trial(p, s, i);
        acc[0] += r.bob_ok && r.charlie_ok;
        acc[1] += r.bob_ok;
        acc[2] += r.charlie_ok;
    });
    return summarize(p.trials, c);
}

GameResult play_leaky_serial(const MoeParams &p, const Strategy &s) {
    p.validate();
    auto c = count_trials_serial<3>(p.trials, [&](uint64_t i, std::array<uint64_t, 3> &acc) {
        TrialRecord r = play_trial(p, s, i);
        acc[0] += r.bob_ok && r.charlie_ok;
        acc[1] += r.bob_ok;
        acc[2] += r.charlie_ok;
    });
    return summarize(p.trials, c);
}

double binomial_cdf(size_t k, size_t trials, double p) {
    double total = 0;
    for (size_t i = 0; i <= std::min(k, trials); i++) {
        total += choose(trials, i) * std::pow(p, static_cast<double>(i)) *
                 std::pow(1 - p, static_cast<double>(trials - i));
    }
    return std::min(1.0, total);
}

double measure_computational_exact(size_t n, SubspaceFamily family, size_t m, size_t mp) {
    if (n > 6 || n % 2 != 0) {
        throw std::invalid_argument("measure_computational_exact: n must be even and at most 6");
    }
    const size_t half = n / 2;
    std::vector<Gf2Subspace> subspaces = enumerate_subspaces(n, half, family);
    double total = 0;
    for (const Gf2Subspace &a : subspaces) {
        Gf2Subspace perp = a.complement();
        std::vector<Gf2Vec> members = a.elements();
        for (uint64_t t = 0; t < (uint64_t{1} << half); t++) {
            Gf2Vec tv = Gf2Vec::from_uint(half, t);
            Gf2Vec shift = a.coset_rep(tv);
            for (uint64_t tp = 0; tp < (uint64_t{1} << half); tp++) {
                Gf2Vec tpv = Gf2Vec::from_uint(half, tp);
                // Computational outcomes are uniform on the coset t_a + a.
                for (const Gf2Vec &u : members) {
                    Gf2Vec v = u ^ shift;
                    bool bob = hamming(a.solve_coset_membership(v).t, tv) <= m;
                    bool charlie = hamming(perp.solve_coset_membership(v).t, tpv) <= mp;
                    total += bob && charlie;
                }
            }
        }
    }
    double count = static_cast<double>(subspaces.size()) * std::exp2(2.0 * half) *
                   static_cast<double>(uint64_t{1} << half);
    return total / count;
}

std::optional<double> analytic_win(const StrategySpec &spec, const MoeParams &p) {
    p.validate();
    const size_t n = p.n;
    const size_t half = n / 2;
    const bool reg = p.family == SubspaceFamily::kRegister;
    double bob_all = ball_fraction(half, p.mp);
    double charlie_all = ball_fraction(half, p.m);
    if (spec.kind == "bob_all") {
        return bob_all;
    }
    if (spec.kind == "charlie_all" || spec.kind == "keep_and_substitute") {
        return charlie_all;
    }
    if (spec.kind == "mix") {
        return spec.q * bob_all + (1 - spec.q) * charlie_all;
    }
    if (spec.kind == "measure_computational") {
        if (reg) {
            return bob_all;
        }
        if (n <= 6) {
            return measure_computational_exact(n, p.family, p.m, p.mp);
        }
        return std::nullopt;
    }
    if (spec.kind == "measure_wiesner" && reg) {
        if (!spec.theta) {
            return binomial_cdf(p.m, half, 0.25) * binomial_cdf(p.mp, half, 0.25);
        }
        if (spec.theta->size() != n) {
            return std::nullopt;
        }
        // k of the w Hadamard-basis guesses land outside a.
        const size_t w = spec.theta->weight();
        double total = 0;
        for (size_t k = 0; k <= std::min(w, half); k++) {
            if (w - k > half) {
                continue;
            }
            double pk = choose(w, k) * choose(n - w, half - k) / choose(n, half);
            total += pk * binomial_cdf(p.m, k, 0.5) * binomial_cdf(p.mp, half - (w - k), 0.5);
        }
        return total;
    }
    return std::nullopt;
}

}  // namespace cosetmoe
