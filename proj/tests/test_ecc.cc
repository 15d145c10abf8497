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

#include <set>

#include "cosetmoe/ecc.h"
#include "cosetmoe/rng.h"
#include "test_support.h"

namespace cosetmoe {
namespace {

using testing::oracle;

size_t enumerated_distance(const LinearCode &c) {
    size_t best = c.length();
    for (const Gf2Vec &w : c.codewords()) {
        if (!w.is_zero()) {
            best = std::min(best, w.weight());
        }
    }
    return best;
}

TEST(Code, Hamming74) {
    LinearCode c = LinearCode::make(CodeSpec::hamming74());
    const auto &want = oracle()["hamming74"];
    EXPECT_EQ(c.length(), 7u);
    EXPECT_EQ(c.dimension(), 4u);
    EXPECT_EQ(c.redundancy(), 3u);
    EXPECT_EQ(c.distance(), want["distance"].get<size_t>());
    EXPECT_EQ(c.codewords().size(), want["codewords"].get<size_t>());
    EXPECT_EQ(enumerated_distance(c), 3u);
    for (size_t r = 0; r < 3; r++) {
        EXPECT_EQ(c.parity_check().row(r).to_string(), want["H"][r].get<std::string>());
    }
    EXPECT_EQ(c.min_weight_codeword().to_string(), want["min_weight_codeword"].get<std::string>());
    // codeword + e_i -> i-th column of H, all distinct and nonzero.
    std::set<std::string> seen;
    for (size_t i = 0; i < 7; i++) {
        Gf2Vec s = c.syndrome(Gf2Vec::unit(7, i));
        EXPECT_EQ(s.to_string(), want["columns"][i].get<std::string>());
        EXPECT_FALSE(s.is_zero());
        seen.insert(s.to_string());
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Code, RepetitionAndBlocks) {
    LinearCode rep = LinearCode::make(CodeSpec::repetition(5));
    EXPECT_EQ(rep.distance(), 5u);
    EXPECT_EQ(rep.dimension(), 1u);
    LinearCode br = LinearCode::make(CodeSpec::block_repeat(3, 2));
    EXPECT_EQ(br.codewords().size(), oracle()["block_repeat_3_2"]["codewords"].get<size_t>());
    EXPECT_EQ(br.distance(), oracle()["block_repeat_3_2"]["distance"].get<size_t>());
    EXPECT_EQ(br.length(), 6u);
    LinearCode big = LinearCode::make(CodeSpec::block_repeat(63, 30));
    EXPECT_EQ(big.length(), 1890u);
    EXPECT_EQ(big.distance(), 63u);
    EXPECT_TRUE(big.has_leaders());
    EXPECT_THROW(LinearCode::make(CodeSpec::repetition(0)), std::invalid_argument);
}

TEST(Code, GeneratorIsOrthogonalToParityCheck) {
    for (const CodeSpec &spec : {CodeSpec::hamming74(), CodeSpec::repetition(4),
                                 CodeSpec::block_repeat(3, 3), CodeSpec::random_linear(12, 6, 7)}) {
        LinearCode c = LinearCode::make(spec);
        for (size_t r = 0; r < c.generator().rows(); r++) {
            EXPECT_TRUE(c.syndrome(c.generator().row(r)).is_zero()) << spec.kind;
        }
        EXPECT_EQ(c.distance(), enumerated_distance(c)) << spec.kind;
    }
}

TEST(Code, SyndromeIsLinear) {
    TrialRng rng(1, 0);
    LinearCode c = LinearCode::make(CodeSpec::random_linear(16, 8, 3));
    for (int i = 0; i < 100; i++) {
        Gf2Vec x = random_vec(rng, 16);
        Gf2Vec y = random_vec(rng, 16);
        EXPECT_EQ(c.syndrome(x ^ y), c.syndrome(x) ^ c.syndrome(y));
    }
    EXPECT_THROW(c.syndrome(Gf2Vec(15)), std::invalid_argument);
}

TEST(Code, LeadersHaveMinimalWeight) {
    for (const CodeSpec &spec : {CodeSpec::hamming74(), CodeSpec::block_repeat(3, 2),
                                 CodeSpec::random_linear(10, 4, 5)}) {
        LinearCode c = LinearCode::make(spec);
        auto words = c.codewords();
        const size_t n = c.length();
        for (uint64_t v = 0; v < (uint64_t{1} << n); v++) {
            Gf2Vec x = Gf2Vec::from_uint(n, v);
            Gf2Vec lead = c.leader(c.syndrome(x));
            EXPECT_EQ(c.syndrome(lead), c.syndrome(x));
            size_t best = n;
            for (const Gf2Vec &w : words) {
                best = std::min(best, (x ^ w).weight());
            }
            ASSERT_EQ(lead.weight(), best) << spec.kind << " " << x.to_string();
            Gf2Vec corr = c.correct(x);
            EXPECT_TRUE(c.syndrome(corr).is_zero());
            EXPECT_EQ(hamming(x, corr), best);
        }
    }
}

TEST(Correct, Examples) {
    LinearCode c = LinearCode::make(CodeSpec::hamming74());
    TrialRng rng(2, 0);
    auto words = c.codewords();
    for (const Gf2Vec &w : words) {
        EXPECT_EQ(c.correct(w), w);
        for (size_t i = 0; i < 7; i++) {
            Gf2Vec x = w;
            x.flip(i);
            EXPECT_EQ(c.correct(x), w);
        }
    }
    for (int i = 0; i < 100; i++) {
        Gf2Vec x = random_vec(rng, 7);
        const Gf2Vec &w = words[rng.below(words.size())];
        EXPECT_EQ(c.correct(x ^ w), c.correct(x) ^ w);
    }
    EXPECT_THROW(LinearCode::make(CodeSpec::random_linear(40, 10, 1)).correct(Gf2Vec(40)),
                 std::logic_error);
}

TEST(Align, Examples) {
    LinearCode c = LinearCode::make(CodeSpec::hamming74());
    TrialRng rng(3, 0);
    for (int i = 0; i < 50; i++) {
        Gf2Vec tp = random_vec(rng, 7);
        EXPECT_EQ(c.align_correction(tp, c.syndrome(tp)), tp);
    }
    for (const Gf2Vec &w : c.codewords()) {
        for (size_t i = 0; i < 7; i++) {
            Gf2Vec e = Gf2Vec::unit(7, i);
            EXPECT_EQ(c.align_correction(w, c.syndrome(e)), w ^ e);
            EXPECT_EQ(c.fiber_correction(w, c.syndrome(e)), w ^ e);
        }
    }
}

void check_close_strings_align(const LinearCode &c, const Gf2Vec &tp, const Gf2Vec &that) {
    const size_t radius = (c.distance() - 1) / 2;
    if (hamming(tp, that) <= radius) {
        ASSERT_EQ(c.align_correction(tp, c.syndrome(that)), that);
    }
}

TEST(Align, RecoversCloseStringsExhaustively) {
    LinearCode c = LinearCode::make(CodeSpec::hamming74());
    for (uint64_t a = 0; a < 128; a++) {
        for (uint64_t b = 0; b < 128; b++) {
            check_close_strings_align(c, Gf2Vec::from_uint(7, a), Gf2Vec::from_uint(7, b));
        }
    }
}

TEST(Align, RecoversCloseStringsSampled) {
    LinearCode c = LinearCode::make(CodeSpec::block_repeat(7, 6));
    TrialRng rng(4, 0);
    for (int i = 0; i < 2000; i++) {
        Gf2Vec tp = random_vec(rng, 42);
        Gf2Vec that = tp;
        size_t flips = rng.below(4);
        for (size_t f = 0; f < flips; f++) {
            that.flip(rng.below(42));
        }
        check_close_strings_align(c, tp, that);
    }
}

TEST(Align, DistinctSameSyndromeStringsAreFar) {
    TrialRng rng(5, 0);
    for (const CodeSpec &spec : {CodeSpec::hamming74(), CodeSpec::block_repeat(5, 4)}) {
        LinearCode c = LinearCode::make(spec);
        const size_t n = c.length();
        for (int i = 0; i < 1000; i++) {
            Gf2Vec tp = random_vec(rng, n);
            Gf2Vec that = random_vec(rng, n);
            Gf2Vec bar = c.align_correction(tp, c.syndrome(that));
            EXPECT_EQ(c.syndrome(bar), c.syndrome(that));
            if (bar != that) {
                EXPECT_GE(hamming(bar, that), c.distance());
            }
        }
    }
}

TEST(Fiber, Postconditions) {
    LinearCode c = LinearCode::make(CodeSpec::hamming74());
    TrialRng rng(6, 0);
    for (int i = 0; i < 1000; i++) {
        Gf2Vec tp = random_vec(rng, 7);
        Gf2Vec target = random_vec(rng, 3);
        Gf2Vec bar = c.fiber_correction(tp, target);
        EXPECT_EQ(c.syndrome(bar), target);
        EXPECT_EQ(c.correct(bar), c.correct(tp));
    }
}

TEST(Fiber, DiffersFromAlignAtDecodingBoundary) {
    // t' = 110 sits next to the boundary of repetition(3): one flip changes corr.
    LinearCode c = LinearCode::make(CodeSpec::repetition(3));
    Gf2Vec tp = Gf2Vec::from_string("110");
    Gf2Vec that = Gf2Vec::from_string("100");
    EXPECT_EQ(c.align_correction(tp, c.syndrome(that)), that);
    EXPECT_NE(c.fiber_correction(tp, c.syndrome(that)), that);
}

TEST(Code, JsonRoundTrip) {
    CodeSpec spec = CodeSpec::block_repeat(4, 3);
    CodeSpec back = CodeSpec::from_json(spec.to_json());
    EXPECT_EQ(back.to_json(), spec.to_json());
    EXPECT_EQ(LinearCode::make(back).length(), 12u);
}

}  // namespace
}  // namespace cosetmoe
