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

#include <gtest/gtest.h>

#include "cosetmoe/info.h"
#include "cosetmoe/moe.h"
#include "cosetmoe/strategy.h"
#include "test_support.h"

namespace cosetmoe {
namespace {

using testing::oracle;

MoeParams params(size_t n, uint64_t trials, uint64_t seed = 7) {
    MoeParams p;
    p.n = n;
    p.trials = trials;
    p.seed = seed;
    return p;
}

double run(const std::string &strategy, const MoeParams &p) {
    return play_leaky(p, *builtin_strategy(strategy)).estimate;
}

double tol(double q, uint64_t trials) { return testing::three_sigma(q, trials) + 1e-12; }

TEST(Moe, BobTakesAll) {
    MoeParams p = params(4, 100000);
    EXPECT_NEAR(run("bob_all", p), 0.25, tol(0.25, p.trials));
    GameResult r = play_leaky(p, *builtin_strategy("bob_all"));
    EXPECT_EQ(r.bob_correct, r.trials);
}

TEST(Moe, CharlieTakesAll) {
    MoeParams p = params(4, 100000);
    EXPECT_NEAR(run("charlie_all", p), 0.25, tol(0.25, p.trials));
}

TEST(Moe, MeasureWiesnerMatchesEnumeration) {
    const auto &table = oracle()["measure_wiesner_n4"];
    for (auto it = table.begin(); it != table.end(); ++it) {
        MoeParams p = params(4, 20000, 11);
        StrategySpec spec = StrategySpec::parse("measure_wiesner:" + it.key());
        double want = it.value().get<double>();
        ASSERT_TRUE(analytic_win(spec, p));
        EXPECT_NEAR(*analytic_win(spec, p), want, 1e-12) << it.key();
        EXPECT_NEAR(play_leaky(p, *builtin_strategy(spec)).estimate, want, tol(want, p.trials))
            << it.key();
    }
    MoeParams p = params(4, 20000, 12);
    double want = oracle()["measure_wiesner_random_n4"].get<double>();
    EXPECT_NEAR(*analytic_win(StrategySpec::parse("measure_wiesner"), p), want, 1e-12);
    EXPECT_NEAR(run("measure_wiesner", p), want, tol(want, p.trials));
}

TEST(Moe, MeasureComputationalMatchesEnumeration) {
    for (SubspaceFamily fam : {SubspaceFamily::kAll, SubspaceFamily::kRegister}) {
        MoeParams p = params(4, 40000, 13);
        p.family = fam;
        double want = oracle()[fam == SubspaceFamily::kAll ? "measure_computational_n4_all"
                                                           : "measure_computational_n4_register"]
                          .get<double>();
        EXPECT_NEAR(measure_computational_exact(4, fam, 0, 0), want, 1e-12);
        EXPECT_NEAR(run("measure_computational", p), want, tol(want, p.trials));
    }
}

TEST(Moe, DegenerateMixtureIsBobAll) {
    MoeParams p = params(6, 100000, 14);
    double mix = run("mix:1", p);
    double bob = run("bob_all", p);
    EXPECT_NEAR(mix, bob, 2 * tol(0.125, p.trials));
    EXPECT_THROW(builtin_strategy("mix:1.5"), std::invalid_argument);
}

TEST(Moe, MixtureIsConvex) {
    MoeParams p = params(4, 100000, 15);
    p.m = 1;
    StrategySpec spec = StrategySpec::parse("mix:0.3");
    double want = 0.3 * *analytic_win(StrategySpec::parse("bob_all"), p) +
                  0.7 * *analytic_win(StrategySpec::parse("charlie_all"), p);
    EXPECT_NEAR(*analytic_win(spec, p), want, 1e-15);
    EXPECT_NEAR(run("mix:0.3", p), want, tol(want, p.trials));
}

TEST(Moe, RobustBallCounts) {
    MoeParams p = params(8, 100000, 16);
    p.m = 1;
    // Bob's acceptance is already certain; Charlie still guesses uniformly.
    EXPECT_NEAR(*analytic_win(StrategySpec::parse("bob_all"), p), 1.0 / 16, 1e-15);
    EXPECT_NEAR(run("bob_all", p), 1.0 / 16, tol(1.0 / 16, p.trials));
    p.m = 0;
    p.mp = 1;
    double ball = to_double(ball_volume(4, 1)) / 16;
    EXPECT_NEAR(*analytic_win(StrategySpec::parse("bob_all"), p), ball, 1e-15);
    EXPECT_NEAR(run("bob_all", p), ball, tol(ball, p.trials));
}

TEST(Moe, VacuousBobRadius) {
    // m = n/2 accepts every guess of Bob, so only Charlie's marginal counts.
    MoeParams p = params(6, 50000, 17);
    p.m = 3;
    EXPECT_DOUBLE_EQ(run("charlie_all", p), 1.0);
    p.mp = 1;
    double ball = to_double(ball_volume(3, 1)) / 8;
    EXPECT_NEAR(run("bob_all", p), ball, tol(ball, p.trials));
    EXPECT_NEAR(*analytic_win(StrategySpec::parse("measure_wiesner"), p),
                binomial_cdf(1, 3, 0.25), 1e-15);
}

TEST(Moe, BuiltinsRespectBound) {
    for (size_t n : {4, 8}) {
        for (const std::string &name : builtin_strategy_names()) {
            if (name == "cnot_copy" && n > 4) {
                continue;
            }
            MoeParams p = params(n, 20000, 18);
            GameResult r = play_leaky(p, *builtin_strategy(name));
            double bound = std::min(moe_bound(n), 1.0);
            EXPECT_LE(r.estimate, bound + 3 * r.sigma(bound)) << name << " " << n;
        }
    }
}

TEST(Moe, LeakDoesNotHurt) {
    for (std::string name : {"measure_wiesner", "measure_computational", "mix:0.5"}) {
        MoeParams p = params(4, 100000, 19);
        double leaked = run(name, p);
        p.blind_charlie = true;
        double blind = run(name, p);
        EXPECT_GE(leaked, blind - 3 * std::sqrt(2 * blind * (1 - blind) / 100000.0)) << name;
    }
}

TEST(Moe, ReproducibleAcrossSchedules) {
    for (std::string name : {"measure_wiesner", "cnot_copy", "mix:0.4"}) {
        MoeParams p = params(4, 3000, 20);
        auto s = builtin_strategy(name);
        GameResult a = play_leaky(p, *s);
        GameResult b = play_leaky_serial(p, *s);
        p.threads = 1;
        GameResult c = play_leaky(p, *s);
        EXPECT_EQ(a.to_json(), b.to_json()) << name;
        EXPECT_EQ(a.to_json(), c.to_json()) << name;
        TrialRecord x = play_trial(p, *s, 17);
        TrialRecord y = play_trial(p, *s, 17);
        EXPECT_EQ(x.challenge.t, y.challenge.t);
        EXPECT_EQ(x.charlie, y.charlie);
    }
}

TEST(Moe, BackendChoice) {
    MoeParams p = params(4, 10);
    EXPECT_EQ(game_backend(p, *builtin_strategy("bob_all")), Backend::kWiesner);
    EXPECT_EQ(game_backend(p, *builtin_strategy("cnot_copy")), Backend::kStatevector);
    p.family = SubspaceFamily::kAll;
    EXPECT_EQ(game_backend(p, *builtin_strategy("bob_all")), Backend::kStatevector);
}

TEST(Moe, RejectsBadParams) {
    MoeParams p = params(5, 10);
    EXPECT_THROW(play_leaky(p, *builtin_strategy("bob_all")), std::invalid_argument);
    p = params(4, 10);
    p.m = 3;
    EXPECT_THROW(play_leaky(p, *builtin_strategy("bob_all")), std::invalid_argument);
    EXPECT_THROW(builtin_strategy("no_such_strategy"), std::invalid_argument);
}

TEST(Moe, StrategySpecRoundTrip) {
    for (std::string text : {"bob_all", "mix:0.25", "measure_wiesner:0101", "cnot_copy"}) {
        EXPECT_EQ(StrategySpec::parse(StrategySpec::parse(text).to_string()).to_string(),
                  StrategySpec::parse(text).to_string());
    }
}

TEST(Wilson, Interval) {
    Interval zero = wilson_interval(0, 100);
    EXPECT_NEAR(zero.lo, 0, 1e-15);
    EXPECT_GT(zero.hi, 0);
    Interval all = wilson_interval(100, 100);
    EXPECT_LT(all.lo, 1);
    EXPECT_NEAR(all.hi, 1, 1e-15);
    Interval mid = wilson_interval(50, 100);
    EXPECT_NEAR(mid.lo + mid.hi, 1, 1e-12);
    EXPECT_NEAR(mid.hi - 0.5, 0.0962, 1e-3);
    GameResult r = play_leaky(params(4, 1000), *builtin_strategy("bob_all"));
    EXPECT_LE(r.ci.lo, r.estimate);
    EXPECT_GE(r.ci.hi, r.estimate);
    EXPECT_DOUBLE_EQ(r.estimate, double(r.wins) / double(r.trials));
}

}  // namespace
}  // namespace cosetmoe
