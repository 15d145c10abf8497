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

#include "cosetmoe/ext.h"
#include "cosetmoe/rng.h"
#include "test_support.h"

namespace cosetmoe {
namespace {

using testing::oracle;

TEST(Toeplitz, MatchesExhaustiveTable) {
    ToeplitzExtractor ext(3, 2);
    EXPECT_EQ(ext.seed_length(), 4u);
    size_t rows = 0;
    for (const auto &row : oracle()["toeplitz_3_2"]) {
        Gf2Vec seed = Gf2Vec::from_string(row[0].get<std::string>());
        Gf2Vec x = Gf2Vec::from_string(row[1].get<std::string>());
        EXPECT_EQ(ext.extract(x, seed).to_string(), row[2].get<std::string>());
        rows++;
    }
    EXPECT_EQ(rows, 16u * 8u);
}

TEST(Toeplitz, MatrixLayout) {
    ToeplitzExtractor ext(3, 2);
    Gf2Matrix t = ext.matrix(Gf2Vec::from_string("1000"));
    EXPECT_EQ(t.to_json(), Gf2Matrix::from_strings({"100", "010"}).to_json());
    Gf2Matrix u = ext.matrix(Gf2Vec::from_string("0001"));
    EXPECT_EQ(u.to_json(), Gf2Matrix::from_strings({"000", "100"}).to_json());
}

TEST(Toeplitz, Linear) {
    TrialRng rng(1, 0);
    ToeplitzExtractor ext(40, 12);
    for (int i = 0; i < 100; i++) {
        Gf2Vec seed = random_vec(rng, ext.seed_length());
        Gf2Vec a = random_vec(rng, 40);
        Gf2Vec b = random_vec(rng, 40);
        EXPECT_EQ(ext.extract(a, seed) ^ ext.extract(b, seed), ext.extract(a ^ b, seed));
        EXPECT_TRUE(ext.extract(Gf2Vec(40), seed).is_zero());
    }
}

TEST(Toeplitz, RejectsBadShapes) {
    ToeplitzExtractor ext(5, 2);
    EXPECT_THROW(ext.extract(Gf2Vec(4), Gf2Vec(6)), std::invalid_argument);
    EXPECT_THROW(ext.extract(Gf2Vec(5), Gf2Vec(5)), std::invalid_argument);
}

TEST(Toeplitz, TwoUniversal) {
    for (size_t n_in = 1; n_in <= 5; n_in++) {
        for (size_t ell = 1; ell <= n_in; ell++) {
            ToeplitzExtractor ext(n_in, ell);
            const uint64_t seeds = uint64_t{1} << ext.seed_length();
            for (uint64_t a = 0; a < (uint64_t{1} << n_in); a++) {
                for (uint64_t b = a + 1; b < (uint64_t{1} << n_in); b++) {
                    uint64_t hits = 0;
                    for (uint64_t s = 0; s < seeds; s++) {
                        Gf2Vec seed = Gf2Vec::from_uint(ext.seed_length(), s);
                        hits += ext.extract(Gf2Vec::from_uint(n_in, a), seed) ==
                                ext.extract(Gf2Vec::from_uint(n_in, b), seed);
                    }
                    EXPECT_LE(hits * (uint64_t{1} << ell), seeds);
                }
            }
        }
    }
}

TEST(Lhl, Values) {
    EXPECT_DOUBLE_EQ(lhl_epsilon(10, 4), oracle()["lhl_10_4"].get<double>());
    EXPECT_DOUBLE_EQ(lhl_epsilon(20, 8), oracle()["lhl_20_8"].get<double>());
    EXPECT_NEAR(lhl_epsilon(5, 2), oracle()["lhl_5_2"].get<double>(), 1e-8);
    EXPECT_DOUBLE_EQ(lhl_epsilon(7, 7), 0.5);
}

}  // namespace
}  // namespace cosetmoe
