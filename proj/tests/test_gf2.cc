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

#include <map>
#include <set>

#include "cosetmoe/gf2.h"
#include "cosetmoe/rng.h"
#include "test_support.h"

namespace cosetmoe {
namespace {

using testing::oracle;

std::vector<Gf2Vec> rows_from(const nlohmann::json &list) {
    std::vector<Gf2Vec> out;
    for (const auto &s : list) {
        out.push_back(Gf2Vec::from_string(s.get<std::string>()));
    }
    return out;
}

TEST(Gf2Vec, EncodingsPutCoordinateZeroFirst) {
    Gf2Vec v = Gf2Vec::from_string("1000");
    EXPECT_TRUE(v.get(0));
    EXPECT_EQ(v.to_uint(), 8u);
    EXPECT_EQ(v.to_hex(), "8");
    EXPECT_EQ(Gf2Vec::from_uint(4, 8), v);
    EXPECT_EQ(Gf2Vec::from_hex(4, "8"), v);
    Gf2Vec odd = Gf2Vec::from_string("10110");
    EXPECT_EQ(Gf2Vec::from_hex(5, odd.to_hex()), odd);
}

TEST(Gf2Vec, XorIsSelfInverse) {
    TrialRng rng(1, 0);
    for (int i = 0; i < 50; i++) {
        Gf2Vec x = random_vec(rng, 130);
        EXPECT_TRUE((x ^ x).is_zero());
        EXPECT_EQ((x + Gf2Vec(130)), x);
    }
}

TEST(Gf2Vec, LengthMismatchThrows) {
    EXPECT_THROW(Gf2Vec(3) ^ Gf2Vec(4), std::invalid_argument);
    EXPECT_THROW(hamming(Gf2Vec(3), Gf2Vec(4)), std::invalid_argument);
}

TEST(Gf2Vec, HammingMatchesPopcountOfXor) {
    Gf2Vec x = Gf2Vec::from_string("101");
    EXPECT_EQ(hamming(x, x), 0u);
    Gf2Vec y = x;
    y.flip(1);
    EXPECT_EQ(hamming(x, y), 1u);
    TrialRng rng(2, 0);
    for (int i = 0; i < 200; i++) {
        Gf2Vec a = random_vec(rng, 10);
        Gf2Vec b = random_vec(rng, 10);
        Gf2Vec c = random_vec(rng, 10);
        EXPECT_EQ(hamming(a, b),
                  static_cast<size_t>(__builtin_popcountll(a.to_uint() ^ b.to_uint())));
        EXPECT_LE(hamming(a, c), hamming(a, b) + hamming(b, c));
    }
}

TEST(Rref, Examples) {
    auto dup = rref(Gf2Matrix::from_strings({"11", "11"}));
    EXPECT_EQ(dup.matrix, Gf2Matrix::from_strings({"11"}));
    EXPECT_EQ(dup.pivots, std::vector<size_t>({0}));

    auto id = rref(Gf2Matrix::identity(5));
    EXPECT_EQ(id.matrix, Gf2Matrix::identity(5));
    EXPECT_EQ(id.pivots, std::vector<size_t>({0, 1, 2, 3, 4}));

    const auto &ex = oracle()["rref_example"];
    auto r = rref(Gf2Matrix(rows_from(ex["in"])));
    EXPECT_EQ(r.matrix, Gf2Matrix(rows_from(ex["out"])));
    EXPECT_EQ(r.pivots, ex["pivots"].get<std::vector<size_t>>());
}

TEST(Gf2Subspace, ComplementExamples) {
    std::vector<size_t> low{0, 1, 2};
    std::vector<size_t> high{3, 4, 5};
    EXPECT_EQ(Gf2Subspace::register_span(6, low).complement(),
              Gf2Subspace::register_span(6, high));
    Gf2Subspace diag = Gf2Subspace::span(2, {Gf2Vec::from_string("11")});
    EXPECT_EQ(diag.complement(), diag);
    // a + a^perp is not everything for this one.
    EXPECT_EQ(diag.sum(diag.complement()).dim(), 1u);
}

TEST(Gf2Subspace, ComplementIsOrthogonalAndInvolutive) {
    TrialRng rng(3, 0);
    for (int i = 0; i < 100; i++) {
        Gf2Subspace a = sample_subspace(6, SubspaceFamily::kAll, rng);
        Gf2Subspace b = a.complement();
        EXPECT_EQ(a.dim() + b.dim(), 6u);
        EXPECT_EQ(b.complement(), a);
        for (const Gf2Vec &u : a.elements()) {
            for (const Gf2Vec &v : b.elements()) {
                EXPECT_FALSE(u.dot(v));
            }
        }
        Gf2Subspace r = sample_subspace(6, SubspaceFamily::kRegister, rng);
        EXPECT_EQ(r.sum(r.complement()), Gf2Subspace::full(6));
    }
}

TEST(Gf2Subspace, IntersectionCountsMembers) {
    Gf2Subspace a = Gf2Subspace::register_span(4, std::vector<size_t>{0, 1});
    Gf2Subspace b = Gf2Subspace::register_span(4, std::vector<size_t>{1, 2});
    EXPECT_EQ(a.intersect(b), Gf2Subspace::register_span(4, std::vector<size_t>{1}));
    EXPECT_EQ(a.intersect(a), a);
    EXPECT_THROW(a.intersect(Gf2Subspace::zero(5)), std::invalid_argument);

    TrialRng rng(4, 0);
    for (int i = 0; i < 30; i++) {
        Gf2Subspace x = sample_subspace(8, SubspaceFamily::kAll, rng);
        Gf2Subspace y = sample_subspace(8, SubspaceFamily::kAll, rng);
        size_t both = 0;
        for (uint64_t v = 0; v < 256; v++) {
            Gf2Vec vv = Gf2Vec::from_uint(8, v);
            both += x.contains(vv) && y.contains(vv);
        }
        Gf2Subspace meet = x.intersect(y);
        EXPECT_EQ(both, size_t{1} << meet.dim());
        EXPECT_EQ(meet.dim() + x.sum(y).dim(), x.dim() + y.dim());
    }
}

TEST(Gf2Subspace, CanonicalFormIgnoresGenerators) {
    TrialRng rng(5, 0);
    Gf2Subspace a = sample_subspace(8, SubspaceFamily::kAll, rng);
    auto members = a.elements();
    for (int i = 0; i < 100; i++) {
        std::vector<Gf2Vec> gens;
        size_t count = 4 + rng.below(6);
        for (size_t k = 0; k < count; k++) {
            gens.push_back(members[rng.below(members.size())]);
        }
        // Make sure the generators still span a.
        for (size_t r = 0; r < a.dim(); r++) {
            gens.push_back(a.basis().row(r) ^ gens[rng.below(gens.size())]);
            gens.push_back(gens.back() ^ a.basis().row(r));
        }
        Gf2Subspace b = Gf2Subspace::span(8, gens);
        EXPECT_EQ(b, a);
        EXPECT_EQ(b.to_json(), a.to_json());
    }
}

TEST(Gf2Subspace, CosetRepMatchesOracle) {
    Gf2Subspace perp = Gf2Subspace::register_span(4, std::vector<size_t>{1, 3});
    Gf2Subspace a = perp.complement();
    EXPECT_EQ(a.coset_rep(Gf2Vec::from_string("10")), Gf2Vec::from_string("0100"));
    EXPECT_TRUE(a.coset_rep(Gf2Vec(2)).is_zero());

    for (const auto &c : oracle()["coset_reps_n6"]) {
        Gf2Subspace s = Gf2Subspace::span(6, rows_from(c["basis"]));
        EXPECT_EQ(s.complement(), Gf2Subspace::span(6, rows_from(c["perp"])));
        EXPECT_EQ(s.coset_rep(Gf2Vec::from_string(c["t"].get<std::string>())),
                  Gf2Vec::from_string(c["t_a"].get<std::string>()));
    }
}

TEST(Gf2Subspace, CosetRepIsLinearAndHitsEveryCoset) {
    TrialRng rng(6, 0);
    for (int i = 0; i < 100; i++) {
        Gf2Subspace a = sample_subspace(6, SubspaceFamily::kAll, rng);
        Gf2Vec t1 = random_vec(rng, 3);
        Gf2Vec t2 = random_vec(rng, 3);
        EXPECT_EQ(a.coset_rep(t1 ^ t2), a.coset_rep(t1) ^ a.coset_rep(t2));
    }
    for (int i = 0; i < 20; i++) {
        Gf2Subspace a = sample_subspace(6, SubspaceFamily::kAll, rng);
        for (uint64_t x = 0; x < 8; x++) {
            for (uint64_t y = x + 1; y < 8; y++) {
                Gf2Vec d = a.coset_rep(Gf2Vec::from_uint(3, x)) ^ a.coset_rep(Gf2Vec::from_uint(3, y));
                EXPECT_FALSE(a.contains(d));
            }
        }
    }
}

TEST(Gf2Subspace, SolveCosetMembershipInvertsCosetRep) {
    TrialRng rng(7, 0);
    for (size_t n : {2, 4, 6, 8}) {
        for (int i = 0; i < 10; i++) {
            Gf2Subspace a = sample_subspace(n, SubspaceFamily::kAll, rng);
            auto zero = a.solve_coset_membership(Gf2Vec(n));
            EXPECT_TRUE(zero.t.is_zero());
            EXPECT_TRUE(zero.u.is_zero());
            for (uint64_t t = 0; t < (uint64_t{1} << (n / 2)); t++) {
                Gf2Vec tv = Gf2Vec::from_uint(n / 2, t);
                auto s = a.solve_coset_membership(a.coset_rep(tv));
                EXPECT_EQ(s.t, tv);
                EXPECT_TRUE(s.u.is_zero());
            }
            for (int k = 0; k < 20; k++) {
                Gf2Vec v = random_vec(rng, n);
                auto s = a.solve_coset_membership(v);
                EXPECT_TRUE(a.contains(s.u));
                EXPECT_EQ(a.coset_rep(s.t) ^ s.u, v);
            }
        }
    }
}

TEST(Gf2Subspace, Indicator) {
    Gf2Subspace a = Gf2Subspace::register_span(4, std::vector<size_t>{0, 2});
    EXPECT_EQ(a.indicator(), Gf2Vec::from_string("1010"));
    EXPECT_EQ(Gf2Subspace::full(4).indicator(), Gf2Vec::ones(4));
    EXPECT_THROW(Gf2Subspace::span(2, {Gf2Vec::from_string("11")}).indicator(),
                 std::invalid_argument);
    TrialRng rng(8, 0);
    for (int i = 0; i < 50; i++) {
        Gf2Subspace r = sample_subspace(10, SubspaceFamily::kRegister, rng);
        EXPECT_EQ(r.indicator() ^ r.complement().indicator(), Gf2Vec::ones(10));
    }
}

TEST(Gf2Subspace, JsonRoundTrip) {
    TrialRng rng(9, 0);
    Gf2Subspace a = sample_subspace(10, SubspaceFamily::kAll, rng);
    nlohmann::json j = a.to_json();
    EXPECT_EQ(j["n"], 10);
    EXPECT_EQ(Gf2Subspace::from_json(j), a);
}

TEST(Sampling, AllFamilyIsUniformAtTwoQubits) {
    EXPECT_EQ(enumerate_subspaces(2, 1, SubspaceFamily::kAll).size(),
              oracle()["subspace_count_n2_all"].get<size_t>());
    EXPECT_EQ(enumerate_subspaces(4, 2, SubspaceFamily::kAll).size(),
              oracle()["subspace_count_n4_all"].get<size_t>());
    EXPECT_EQ(enumerate_subspaces(6, 3, SubspaceFamily::kAll).size(),
              oracle()["subspace_count_n6_all"].get<size_t>());
    TrialRng rng(10, 0);
    std::map<std::string, int> counts;
    for (int i = 0; i < 3000; i++) {
        counts[sample_subspace(2, SubspaceFamily::kAll, rng).to_json().dump()]++;
    }
    ASSERT_EQ(counts.size(), 3u);
    for (const auto &[k, c] : counts) {
        EXPECT_NEAR(c, 1000, 3 * std::sqrt(3000 * (1.0 / 3) * (2.0 / 3))) << k;
    }
}

TEST(Sampling, RegisterFamilyAtFourQubits) {
    TrialRng rng(11, 0);
    std::set<std::string> seen;
    for (int i = 0; i < 2000; i++) {
        Gf2Subspace a = sample_subspace(4, SubspaceFamily::kRegister, rng);
        EXPECT_TRUE(a.is_register());
        seen.insert(a.to_json().dump());
    }
    EXPECT_EQ(seen.size(), 6u);
    EXPECT_THROW(sample_subspace(5, SubspaceFamily::kAll, rng), std::invalid_argument);
}

TEST(Sampling, Determinism) {
    TrialRng r1(12, 3);
    TrialRng r2(12, 3);
    EXPECT_EQ(sample_subspace(12, SubspaceFamily::kAll, r1),
              sample_subspace(12, SubspaceFamily::kAll, r2));
    EXPECT_EQ(sample_subset(20, 7, r1), sample_subset(20, 7, r2));
}

TEST(Sampling, SubsetsAreUniform) {
    TrialRng rng(13, 0);
    std::map<std::vector<size_t>, int> counts;
    for (int i = 0; i < 10000; i++) {
        IndexSubset s = sample_subset(5, 2, rng);
        EXPECT_EQ(s.size(), 2u);
        EXPECT_LT(s.indices[0], s.indices[1]);
        counts[s.indices]++;
    }
    ASSERT_EQ(counts.size(), 10u);
    for (const auto &[k, c] : counts) {
        EXPECT_NEAR(c, 1000, 3 * std::sqrt(10000 * 0.1 * 0.9));
    }
    EXPECT_EQ(sample_subset(6, 6, rng).indices, std::vector<size_t>({0, 1, 2, 3, 4, 5}));
    EXPECT_THROW(sample_subset(3, 4, rng), std::invalid_argument);
}

TEST(Gf2Matrix, SolveSquare) {
    TrialRng rng(14, 0);
    for (int i = 0; i < 50; i++) {
        Gf2Matrix m(6, 6);
        do {
            for (size_t r = 0; r < 6; r++) {
                m.row(r) = random_vec(rng, 6);
            }
        } while (m.rank() < 6);
        Gf2Vec b = random_vec(rng, 6);
        EXPECT_EQ(m.apply(solve_square(m, b)), b);
    }
    EXPECT_THROW(solve_square(Gf2Matrix::from_strings({"11", "11"}), Gf2Vec(2)),
                 std::domain_error);
}

}  // namespace
}  // namespace cosetmoe
