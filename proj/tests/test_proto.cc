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

#include "cosetmoe/commitment.h"
#include "cosetmoe/info.h"
#include "cosetmoe/proto.h"
#include "cosetmoe/rng.h"
#include "test_support.h"

namespace cosetmoe {
namespace {

using testing::oracle;
using testing::three_sigma;

TEST(Commitment, IdealOpensOnlyToCommittedValue) {
    TrialRng rng(1, 0);
    for (int i = 0; i < 10000; i++) {
        Gf2Vec v = random_vec(rng, 6);
        Commitment c = base_commit(CommitmentKind::kIdeal, v, rng);
        ASSERT_TRUE(base_verify(c.token, v, c.opening));
        Gf2Vec w = v;
        w.flip(rng.below(6));
        Opening forged = c.opening;
        forged.value = w;
        ASSERT_FALSE(base_verify(c.token, w, forged));
    }
}

TEST(Commitment, HashDigest) {
    TrialRng rng(2, 0);
    Gf2Vec v = Gf2Vec::from_string("10110011");
    Commitment c = base_commit(CommitmentKind::kHash, v, rng);
    EXPECT_EQ(c.token.digest().size(), 64u);
    EXPECT_EQ(c.token.digest(), commitment_digest(v, c.opening.nonce));
    EXPECT_TRUE(base_verify(c.token, v, c.opening));
    Opening tampered = c.opening;
    tampered.nonce[5] ^= 1;
    EXPECT_FALSE(base_verify(c.token, v, tampered));
    Opening wrong_size{Gf2Vec(3), c.opening.nonce};
    EXPECT_THROW(base_verify(c.token, v, wrong_size), std::invalid_argument);
    // Fresh nonces hide equal values.
    EXPECT_NE(base_commit(CommitmentKind::kHash, v, rng).token.digest(), c.token.digest());
}

TEST(Transcript, JsonLines) {
    Transcript tr;
    tr.send("alice", "bob", "x", Gf2Vec::from_string("1010"));
    tr.send_quantum("alice", "bob", "state", "V");
    tr.send_json("bob", "alice", "flag", 1);
    EXPECT_EQ(tr.messages().size(), 3u);
    EXPECT_EQ(tr.messages()[2].idx, 2u);
    ASSERT_NE(tr.find("x"), nullptr);
    EXPECT_EQ(*tr.find("x")->payload_hex, "a");
    EXPECT_EQ(tr.find("missing"), nullptr);
    std::string jsonl = tr.to_jsonl();
    size_t lines = 0;
    size_t start = 0;
    for (size_t pos; (pos = jsonl.find('\n', start)) != std::string::npos; start = pos + 1) {
        nlohmann::json line = nlohmann::json::parse(jsonl.substr(start, pos - start));
        EXPECT_EQ(line["idx"], lines);
        EXPECT_TRUE(line["eve_visible"].get<bool>());
        lines++;
    }
    EXPECT_EQ(lines, 3u);
    EXPECT_EQ(nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')))["payload_hex"], "a");
}

TEST(Qecm, HonestRunsAreCorrect) {
    QecmParams p;
    for (uint64_t i = 0; i < 2000; i++) {
        TrialRng rng(3, i);
        Gf2Vec m = random_vec(rng, p.ell);
        QecmOutcome o = run_qecm_id(p, nullptr, m, rng);
        ASSERT_TRUE(o.f);
        ASSERT_TRUE(o.m_hat_present);
        ASSERT_EQ(o.m_hat, o.m);
        ASSERT_FALSE(o.m_check);
    }
}

TEST(Qecm, ReplaysFromSeed) {
    QecmParams p;
    auto eve = builtin_strategy("measure_wiesner");
    TrialRng a(4, 9);
    TrialRng b(4, 9);
    QecmOutcome x = run_qecm_id(p, eve.get(), Gf2Vec::from_string("10"), a);
    QecmOutcome y = run_qecm_id(p, eve.get(), Gf2Vec::from_string("10"), b);
    EXPECT_EQ(x.to_json(), y.to_json());
    EXPECT_EQ(x.transcript.to_jsonl(), y.transcript.to_jsonl());
}

TEST(Qecm, AcceptanceDoesNotDependOnMessage) {
    QecmParams p;
    p.n = 6;
    auto eve = builtin_strategy("measure_wiesner");
    const uint64_t trials = 20000;
    uint64_t acc[2] = {0, 0};
    for (int k = 0; k < 2; k++) {
        Gf2Vec m = Gf2Vec::from_uint(2, k == 0 ? 0 : 3);
        for (uint64_t i = 0; i < trials; i++) {
            TrialRng rng(5 + k, i);
            acc[k] += run_qecm_id(p, eve.get(), m, rng).f;
        }
    }
    double r0 = acc[0] / double(trials);
    double r1 = acc[1] / double(trials);
    EXPECT_NEAR(r0, r1, 3 * std::sqrt(2 * r0 * (1 - r0) / trials) + 1e-12);
}

TEST(Qecm, KeepAllLeavesBobGuessing) {
    QecmExperimentConfig cfg;
    cfg.params.n = 8;
    cfg.adversary = StrategySpec::parse("charlie_all");
    cfg.trials = 20000;
    nlohmann::json rep = qecm_experiment(QecmExperimentKind::kCorrectness, cfg);
    double rate = rep["accept"]["rate"].get<double>();
    EXPECT_NEAR(rate, 0.0625, three_sigma(0.0625, cfg.trials));
}

TEST(Qecm, CorrectnessExperiment) {
    QecmExperimentConfig cfg;
    cfg.trials = 10000;
    nlohmann::json rep = qecm_experiment(QecmExperimentKind::kCorrectness, cfg);
    EXPECT_TRUE(rep["pass"].get<bool>());
    EXPECT_EQ(rep["accept"]["count"].get<uint64_t>(), 10000u);
}

TEST(Qecm, PerfectlyIndistinguishable) {
    for (SubspaceFamily fam : {SubspaceFamily::kRegister, SubspaceFamily::kAll}) {
        QecmParams p;
        p.n = 4;
        p.family = fam;
        EXPECT_LE(qecm_indistinguishability_exact(p, MessageSource::uniform(2)), 1e-9);
        EXPECT_LE(qecm_indistinguishability_exact(p, MessageSource::skewed(2, 0.7)), 1e-9);
    }
}

TEST(Qecm, UncloneableWithSkewedMessages) {
    QecmExperimentConfig cfg;
    cfg.params.n = 6;
    cfg.adversary = StrategySpec::parse("measure_computational");
    cfg.source = MessageSource::skewed(2, 0.5);
    cfg.trials = 20000;
    EXPECT_NEAR(cfg.source.min_entropy(), 1.0, 1e-12);
    nlohmann::json rep = qecm_experiment(QecmExperimentKind::kUncloneable, cfg);
    EXPECT_TRUE(rep["pass"].get<bool>()) << rep.dump();
    nlohmann::json ind = qecm_experiment(QecmExperimentKind::kUncloneableIndist, cfg);
    EXPECT_TRUE(ind["pass"].get<bool>()) << ind.dump();
    cfg.adversary.reset();
    EXPECT_THROW(qecm_experiment(QecmExperimentKind::kUncloneable, cfg), std::invalid_argument);
}

TEST(Qecm, RejectsInconsistentParams) {
    QecmParams p;
    p.n = 7;
    TrialRng rng(6, 0);
    EXPECT_THROW(run_qecm_id(p, nullptr, Gf2Vec(2), rng), std::invalid_argument);
    p.n = 8;
    EXPECT_THROW(run_qecm_id(p, nullptr, Gf2Vec(3), rng), std::invalid_argument);
}

TEST(Urbc, HonestRunsAgree) {
    UrbcParams p;
    LinearCode code = LinearCode::make(p.code);
    std::array<uint64_t, 4> counts{};
    const uint64_t trials = 10000;
    for (CommitmentKind scheme : {CommitmentKind::kIdeal, CommitmentKind::kHash}) {
        p.scheme = scheme;
        for (uint64_t i = 0; i < trials; i++) {
            TrialRng rng(7, i);
            UrbcOutcome o = run_urbc(p, code, nullptr, rng);
            ASSERT_TRUE(o.g && o.f);
            ASSERT_TRUE(o.y_hat);
            ASSERT_EQ(*o.y_hat, o.y);
            if (scheme == CommitmentKind::kIdeal) {
                counts[o.y.to_uint()]++;
            }
        }
    }
    double chi2 = 0;
    for (uint64_t c : counts) {
        double diff = double(c) - trials / 4.0;
        chi2 += diff * diff / (trials / 4.0);
    }
    EXPECT_LT(chi2, 16.27);  // chi-square, 3 dof, p = 0.001
}

TEST(Urbc, RevealOrderInTranscript) {
    UrbcParams p;
    LinearCode code = LinearCode::make(p.code);
    TrialRng rng(8, 0);
    UrbcOutcome o = run_urbc(p, code, nullptr, rng);
    std::vector<std::string> labels;
    for (const Message &m : o.transcript.messages()) {
        labels.push_back(m.label);
        EXPECT_TRUE(m.eve_visible);
    }
    std::vector<std::string> want{"commit",   "coset_state", "subspace",      "t_hat",
                                  "check",    "syndrome",    "subset",        "revealed_bits",
                                  "opening",  "accept"};
    EXPECT_EQ(labels, want);
    // The hash scheme also opens with its nonce.
    p.scheme = CommitmentKind::kHash;
    UrbcOutcome h = run_urbc(p, code, nullptr, rng);
    ASSERT_NE(h.transcript.find("nonce"), nullptr);
    EXPECT_EQ(h.transcript.find("nonce")->idx + 1, h.transcript.find("accept")->idx);
}

TEST(Urbc, BindingAttack) {
    UrbcParams p;
    p.binding_attack = true;
    LinearCode code = LinearCode::make(p.code);
    const uint64_t trials = 30000;
    uint64_t accepted = 0;
    for (uint64_t i = 0; i < trials; i++) {
        TrialRng rng(9, i);
        UrbcOutcome o = run_urbc(p, code, nullptr, rng);
        ASSERT_TRUE(o.y_claimed);
        accepted += o.f;
    }
    double want = oracle()["urbc_binding_acceptance"].get<double>();
    double rate = accepted / double(trials);
    EXPECT_NEAR(rate, want, three_sigma(want, trials));
    EXPECT_LE(rate, oracle()["binding_14_3_2"].get<double>());
}

TEST(Urbc, PerfectlyHiding) {
    UrbcParams p;
    p.n = 4;
    p.code = CodeSpec::repetition(2);
    for (SubspaceFamily fam : {SubspaceFamily::kRegister, SubspaceFamily::kAll}) {
        p.family = fam;
        EXPECT_LE(urbc_hiding_exact(p), 1e-9);
    }
}

TEST(Urbc, RejectsInconsistentParams) {
    UrbcParams p;
    LinearCode wrong = LinearCode::make(CodeSpec::repetition(3));
    TrialRng rng(10, 0);
    EXPECT_THROW(run_urbc(p, wrong, nullptr, rng), std::invalid_argument);
    p.reveal_size = 9;
    EXPECT_THROW(run_urbc(p, LinearCode::make(p.code), nullptr, rng), std::invalid_argument);
}

TEST(Qkd, HonestNoiselessRuns) {
    QkdParams p;
    LinearCode code = LinearCode::make(p.code);
    for (uint64_t i = 0; i < 1000; i++) {
        TrialRng rng(11, i);
        QkdOutcome o = run_riqkd(p, code, nullptr, rng);
        ASSERT_TRUE(o.f);
        ASSERT_TRUE(o.k && o.k_hat);
        ASSERT_EQ(*o.k, *o.k_hat);
        ASSERT_EQ(o.k->size(), p.ell);
        ASSERT_FALSE(o.eve_guess);
    }
}

TEST(Qkd, AcceptanceMatchesTranscriptChecks) {
    QkdParams p;
    p.gamma = 0.25;
    p.dx = 0.05;
    p.dz = 0.05;
    p.reveal_size = 3;
    LinearCode code = LinearCode::make(p.code);
    uint64_t aborts = 0;
    for (uint64_t i = 0; i < 3000; i++) {
        TrialRng rng(12, i);
        QkdOutcome o = run_riqkd(p, code, nullptr, rng);
        ASSERT_EQ(o.pe_distance, hamming(o.t, o.t_hat));
        ASSERT_EQ(o.pe_pass, 2.0 * double(o.pe_distance) <= p.gamma * double(p.n));
        if (o.pe_pass) {
            ASSERT_TRUE(o.tp_bar);
            ASSERT_EQ(*o.tp_bar, code.align_correction(o.tp, code.syndrome(o.tp_hat)));
            bool same = o.tp_hat.select(o.j.indices) == o.tp_bar->select(o.j.indices);
            ASSERT_EQ(o.ir_pass, same);
        }
        ASSERT_EQ(o.f, o.pe_pass && o.ir_pass);
        ASSERT_EQ(o.f, o.k.has_value());
        aborts += !o.f;
    }
    EXPECT_GT(aborts, 0u);
}

TEST(Qkd, DeviceFaultCorrectness) {
    QkdParams p;
    p.n = 14;
    p.code = CodeSpec::hamming74();
    p.fault = DeviceFault::kCodewordShift;
    LinearCode code = LinearCode::make(p.code);
    const uint64_t trials = 30000;
    uint64_t bad = 0;
    for (uint64_t i = 0; i < trials; i++) {
        TrialRng rng(13, i);
        QkdOutcome o = run_riqkd(p, code, nullptr, rng);
        bad += o.f && !(*o.k == *o.k_hat);
    }
    double bound = oracle()["binding_14_3_2"].get<double>();
    EXPECT_LE(bad / double(trials), bound + three_sigma(bound, trials));
}

TEST(Qkd, InterceptResendIsDetected) {
    QkdParams p;
    p.n = 64;
    p.gamma = 0.05;
    p.code = CodeSpec::block_repeat(4, 8);
    LinearCode code = LinearCode::make(p.code);
    auto eve = builtin_strategy("measure_wiesner");
    const uint64_t trials = 20000;
    uint64_t pe = 0;
    uint64_t accepted = 0;
    for (uint64_t i = 0; i < trials; i++) {
        TrialRng rng(14, i);
        QkdOutcome o = run_riqkd(p, code, eve.get(), rng);
        pe += o.pe_pass;
        accepted += o.f;
    }
    double want = oracle()["intercept_resend_pe_pass_64_005"].get<double>();
    EXPECT_NEAR(pe / double(trials), want, three_sigma(want, trials));
    EXPECT_LE(accepted / double(trials), 1e-3 + three_sigma(1e-3, trials));
}

TEST(Qkd, SubstitutionPassesEstimationRarely) {
    QkdParams p;
    p.n = 8;
    p.code = CodeSpec::block_repeat(2, 2);
    p.reveal_size = 1;
    LinearCode code = LinearCode::make(p.code);
    auto eve = builtin_strategy("keep_and_substitute");
    const uint64_t trials = 20000;
    uint64_t pe = 0;
    uint64_t accepted = 0;
    for (uint64_t i = 0; i < trials; i++) {
        TrialRng rng(15, i);
        QkdOutcome o = run_riqkd(p, code, eve.get(), rng);
        pe += o.pe_pass;
        accepted += o.f;
    }
    EXPECT_NEAR(pe / double(trials), 1.0 / 16, three_sigma(1.0 / 16, trials));
    EXPECT_LE(accepted, pe);
}

TEST(Qkd, SecrecyProbeWithoutEve) {
    SecrecyProbeConfig cfg;
    cfg.trials = 20000;
    nlohmann::json rep = secrecy_probe(cfg);
    EXPECT_EQ(rep["accept"]["count"].get<uint64_t>(), cfg.trials);
    double rate = rep["guess_given_accept"].get<double>();
    EXPECT_NEAR(rate, 0.25, three_sigma(0.25, cfg.trials));
    EXPECT_TRUE(rep["pass"].get<bool>());
}

TEST(Qkd, ExactSecrecyProbe) {
    SecrecyProbeConfig cfg;
    cfg.params.n = 6;
    cfg.params.ell = 1;
    cfg.params.code = CodeSpec::repetition(3);
    cfg.params.reveal_size = 1;
    cfg.exact = true;
    nlohmann::json rep = secrecy_probe(cfg);
    EXPECT_NEAR(rep["accept_probability"].get<double>(), 1.0, 1e-9);
    double dist = rep["trace_distance"].get<double>();
    EXPECT_GE(dist, 0);
    EXPECT_LE(dist, 1 + 1e-12);
    cfg.params.n = 8;
    cfg.params.code = CodeSpec::block_repeat(2, 2);
    EXPECT_THROW(secrecy_probe(cfg), std::invalid_argument);
}

TEST(Qkd, RejectsWrongCodeLength) {
    QkdParams p;
    TrialRng rng(16, 0);
    EXPECT_THROW(run_riqkd(p, LinearCode::make(CodeSpec::hamming74()), nullptr, rng),
                 std::invalid_argument);
}

TEST(Tfkw, HonestRunsAgree) {
    TfkwParams p;
    LinearCode code = LinearCode::make(p.code);
    for (uint64_t i = 0; i < 200; i++) {
        TrialRng rng(17, i);
        QkdOutcome o = run_tfkw(p, code, rng);
        ASSERT_TRUE(o.f);
        ASSERT_EQ(*o.k, *o.k_hat);
    }
}

TEST(Tfkw, SubstitutionBreaksTheProtocol) {
    TfkwParams p;
    p.eve = TfkwEve::kSubstituteZero;
    LinearCode code = LinearCode::make(p.code);
    for (bool check : {false, true}) {
        p.device_check = check;
        for (uint64_t i = 0; i < 100; i++) {
            TrialRng rng(18, i);
            QkdOutcome o = run_tfkw(p, code, rng);
            ASSERT_TRUE(o.f);
            ASSERT_TRUE(o.eve_guess);
            ASSERT_EQ(*o.eve_guess, *o.k_hat);
        }
    }
}

}  // namespace
}  // namespace cosetmoe
