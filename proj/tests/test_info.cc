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

#include <numbers>

#include "cosetmoe/info.h"
#include "cosetmoe/rng.h"
#include "test_support.h"

namespace cosetmoe {
namespace {

using testing::oracle;

Matrix random_density(size_t d, TrialRng &rng) {
    Matrix g(d, d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            g(i, j) = std::complex<double>(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
        }
    }
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

TEST(Entropy, BinaryEntropy) {
    EXPECT_EQ(binary_entropy(0), 0);
    EXPECT_EQ(binary_entropy(1), 0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1);
    EXPECT_NEAR(binary_entropy(0.25), oracle()["binary_entropy_quarter"].get<double>(), 1e-15);
    EXPECT_THROW(binary_entropy(1.5), std::domain_error);
}

TEST(Entropy, BallVolume) {
    EXPECT_EQ(ball_volume(9, 0), 1);
    EXPECT_EQ(ball_volume(4, 1), oracle()["ball_volume_4_1"].get<int>());
    EXPECT_EQ(ball_volume(4, 4), 16);
    EXPECT_THROW(ball_volume(3, 4), std::invalid_argument);
    for (uint64_t n = 1; n <= 64; n++) {
        for (uint64_t m = 0; 2 * m <= n; m++) {
            double cap = std::exp2(double(n) * binary_entropy(double(m) / double(n)));
            EXPECT_LE(to_double(ball_volume(n, m)), cap * (1 + 1e-12)) << n << " " << m;
        }
    }
}

TEST(Bounds, MoeBound) {
    EXPECT_NEAR(moe_bound(10), oracle()["moe_bound_10"].get<double>(), 1e-12);
    EXPECT_NEAR(moe_bound(10), 0.747, 1e-3);
    EXPECT_NEAR(moe_bound(8, 1, 0), oracle()["moe_bound_8_1_0"].get<double>(), 1e-10);
    double c2 = oracle()["cos_pi8_squared"].get<double>();
    for (uint64_t n = 2; n <= 40; n += 2) {
        EXPECT_NEAR(moe_bound(n + 2) / moe_bound(n), c2, 1e-12);
    }
    EXPECT_THROW(moe_bound(7), std::invalid_argument);
    EXPECT_THROW(moe_bound(8, 3, 0), std::invalid_argument);
}

TEST(Bounds, CombinatorialSum) {
    const auto &want = oracle()["combinatorial_sum"];
    for (uint64_t n = 2; n <= 60; n += 2) {
        QuadraticSurd s = combinatorial_sum(n);
        EXPECT_NEAR(s.to_double(), want[std::to_string(n)].get<double>(), 1e-12) << n;
        EXPECT_TRUE(combinatorial_sum_within_bound(n)) << n;
        EXPECT_LE(s.to_double(), moe_bound(n)) << n;
    }
    EXPECT_NEAR(combinatorial_sum(2).to_double(), (1 + std::sqrt(0.5)) / 2, 1e-15);
    EXPECT_NEAR(combinatorial_sum(2).to_double(), oracle()["cos_pi8_squared"].get<double>(), 1e-12);
    EXPECT_THROW(combinatorial_sum(3), std::invalid_argument);
}

TEST(Bounds, SurdArithmetic) {
    QuadraticSurd r = pow_inv_sqrt2(1);
    QuadraticSurd sq = r * r;
    EXPECT_EQ(sq.p, Rational(1, 2));
    EXPECT_EQ(sq.q, 0);
    EXPECT_EQ((r - r).sign(), 0);
    EXPECT_EQ((r - QuadraticSurd{Rational(7, 10), 0}).sign(), 1);
    EXPECT_EQ((r - QuadraticSurd{Rational(71, 100), 0}).sign(), -1);
    for (uint64_t n = 0; n <= 20; n += 2) {
        EXPECT_NEAR(cos_pi8_pow_even(n).to_double(), std::pow(std::cos(std::numbers::pi / 8), n),
                    1e-14);
    }
}

TEST(Bounds, ProtocolExamples) {
    BoundsParams p;
    p.n = 14;
    p.d = 3;
    p.eta = 2.0 / 7.0;
    BoundsReport r = protocol_bounds(p);
    ASSERT_TRUE(r.binding_bound);
    EXPECT_NEAR(*r.binding_bound, oracle()["binding_14_3_2"].get<double>(), 1e-12);
    EXPECT_NEAR(*r.binding_bound, 16.0 / 49.0, 1e-12);
    EXPECT_FALSE(r.completeness_bound);

    BoundsParams c;
    c.n = 3780;
    c.d = 63;
    c.gamma = 0.03;
    c.delta = 0.005;
    r = protocol_bounds(c);
    ASSERT_TRUE(r.completeness_bound);
    EXPECT_NEAR(*r.completeness_bound, oracle()["completeness_3780"].get<double>(), 1e-10);
    EXPECT_NEAR(*r.completeness_bound, 0.142, 1e-3);

    c.delta = 0.03;
    c.d = 100;
    r = protocol_bounds(c);
    ASSERT_TRUE(r.completeness_pe_term);
    EXPECT_DOUBLE_EQ(*r.completeness_pe_term, 1.0);
}

TEST(Bounds, KappaAndSecrecy) {
    BoundsParams p;
    p.n = 1000;
    p.s = 20;
    p.eta = 0.01;
    p.ell = 8;
    p.gamma = 0.0;
    BoundsReport r = protocol_bounds(p);
    const double c = oracle()["neg_lg_cos_pi8"].get<double>();
    const double ln2 = std::numbers::ln2;
    ASSERT_TRUE(r.kappa_required_qkd && r.kappa_required_qecm && r.kappa_required_urbc);
    EXPECT_NEAR(*r.kappa_required_qkd, (c - 0.04 - 0.02 - 1 / (2 * ln2 * 1000)) * 500, 1e-9);
    EXPECT_NEAR(*r.kappa_required_qecm, c / 2 * 1000 - 1 / (4 * ln2), 1e-9);
    EXPECT_NEAR(*r.kappa_required_urbc, c / 2 * 1000 - 1 / (4 * ln2) - 20 - 5, 1e-9);
    ASSERT_TRUE(r.secrecy_bound);
    double eps = std::exp2((8 - *r.kappa_required_qkd) / 2 - 1);
    double second = std::exp2(-(c - 1 / (2 * ln2 * 1000)) * 500);
    EXPECT_NEAR(*r.secrecy_bound, std::max(eps, second), 1e-15);
    EXPECT_NEAR(r.gamma_star, oracle()["gamma_star"].get<double>(), 1e-9);
    EXPECT_FALSE(r.extractor_epsilon);
}

TEST(Bounds, NoiseToleranceRoot) {
    double g = gamma_star();
    EXPECT_GE(g, 0.0150);
    EXPECT_LE(g, 0.0156);
    EXPECT_NEAR(g, oracle()["gamma_star"].get<double>(), 1e-9);
    double c = neg_lg_cos_pi8();
    EXPECT_NEAR(binary_entropy(g) - c, 0, 1e-8);
    EXPECT_LT(binary_entropy(g - 0.001), c);
    EXPECT_GT(binary_entropy(g + 0.001), c);
}

TEST(Bounds, Hoeffding) {
    EXPECT_DOUBLE_EQ(hoeffding_tail(0, 10), 1.0);
    EXPECT_NEAR(hoeffding_tail(5, 100), std::exp(-0.5), 1e-15);
    EXPECT_THROW(hoeffding_tail(-1, 10), std::invalid_argument);
}

TEST(MinEntropy, ClassicalExamples) {
    CcDistribution uniform{4, 1, {0.25, 0.25, 0.25, 0.25}};
    EXPECT_NEAR(min_entropy_cc(uniform, false), 2, 1e-15);
    CcDistribution copy{2, 2, {0.5, 0, 0, 0.5}};
    EXPECT_NEAR(min_entropy_cc(copy, true), 0, 1e-15);
    EXPECT_NEAR(min_entropy_cc(copy, false), 1, 1e-15);
    CcDistribution ex{2, 2, {0.5, 0, 0.25, 0.25}};
    EXPECT_NEAR(min_entropy_cc(ex, true), oracle()["min_entropy_example"].get<double>(), 1e-15);
    CcDistribution bad{2, 1, {0.5, 0.6}};
    EXPECT_THROW(min_entropy_cc(bad, false), std::invalid_argument);
    CcDistribution empty{};
    EXPECT_THROW(min_entropy_cc(empty, false), std::invalid_argument);
}

TEST(TraceDistance, Examples) {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 0.6;
    a(1, 1) = 0.4;
    Matrix b = Matrix::Identity(2, 2) / 2.0;
    EXPECT_NEAR(trace_distance(a, b), 0.1, 1e-12);
    EXPECT_NEAR(trace_distance(a, a), 0, 1e-12);
    Matrix p0 = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    Matrix p1 = Matrix::Zero(2, 2);
    p1(1, 1) = 1;
    EXPECT_NEAR(trace_distance(p0, p1), 1, 1e-12);
    EXPECT_THROW(trace_distance(p0, Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST(TraceDistance, TriangleInequality) {
    TrialRng rng(1, 0);
    for (int i = 0; i < 100; i++) {
        size_t d = 2 + rng.below(4);
        Matrix r = random_density(d, rng);
        Matrix s = random_density(d, rng);
        Matrix t = random_density(d, rng);
        double rs = trace_distance(r, s);
        EXPECT_GE(rs, 0);
        EXPECT_LE(rs, 1 + 1e-12);
        EXPECT_LE(trace_distance(r, t), rs + trace_distance(s, t) + 1e-10);
    }
}

TEST(TraceDistance, SqrtAndPovm) {
    TrialRng rng(2, 0);
    Matrix rho = random_density(4, rng);
    Matrix s = psd_sqrt(rho);
    EXPECT_LT((s * s - rho).cwiseAbs().maxCoeff(), 1e-10);
    Matrix half = Matrix::Identity(2, 2) / 2.0;
    EXPECT_TRUE(is_povm({half, half}));
    EXPECT_FALSE(is_povm({half}));
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = -0.5;
    EXPECT_FALSE(is_povm({neg, Matrix::Identity(2, 2) * 1.0 - neg}));
}

Matrix projector(size_t d, size_t i) {
    Matrix m = Matrix::Zero(d, d);
    m(i, i) = 1;
    return m;
}

TEST(Sequential, CopiedRegistersGiveZero) {
    // X, Y uniform bits copied into A and B.
    CqState s;
    s.nx = 2;
    s.ny = 2;
    s.da = 2;
    s.db = 2;
    for (size_t x = 0; x < 2; x++) {
        for (size_t y = 0; y < 2; y++) {
            s.p.push_back(0.25);
            s.rho.push_back(projector(4, 2 * x + y));
        }
    }
    std::vector<Matrix> m{projector(2, 0), projector(2, 1)};
    EXPECT_NEAR(sequential_min_entropy_fixed(s, m, m), 0, 1e-12);
    SequentialEntropy dec = sequential_decomposition(s, m, m);
    EXPECT_NEAR(dec.value, 0, 1e-12);
}

TEST(Sequential, TrivialFirstRegister) {
    // A is one-dimensional: guessing X is a coin flip, Y is read perfectly.
    CqState s;
    s.nx = 2;
    s.ny = 2;
    s.da = 1;
    s.db = 2;
    for (size_t x = 0; x < 2; x++) {
        for (size_t y = 0; y < 2; y++) {
            s.p.push_back(0.25);
            s.rho.push_back(projector(2, y));
        }
    }
    Matrix half = Matrix::Identity(1, 1) / 2.0;
    std::vector<Matrix> m{half, half};
    std::vector<Matrix> n{projector(2, 0), projector(2, 1)};
    EXPECT_NEAR(sequential_min_entropy_fixed(s, m, n), 1, 1e-12);
    SequentialEntropy dec = sequential_decomposition(s, m, n);
    EXPECT_NEAR(dec.first, 1, 1e-12);
    EXPECT_NEAR(dec.second, 0, 1e-12);
    std::vector<Matrix> bad{half};
    EXPECT_THROW(sequential_min_entropy_fixed(s, bad, n), std::invalid_argument);
}

TEST(AndTropy, Examples) {
    // X uniform, A = X: restricted and full guessing both perfect.
    std::vector<double> p(2 * 2 * 2, 0);
    for (size_t x = 0; x < 2; x++) {
        for (size_t y = 0; y < 2; y++) {
            p[(x * 2 + y) * 2 + x] = 0.25;
        }
    }
    auto [lhs, rhs] = and_tropy_sides(p, 2, 2, 2, 0);
    EXPECT_GE(lhs, rhs - 1e-12);
    EXPECT_THROW(and_tropy_sides(p, 2, 2, 2, 5), std::invalid_argument);
}

}  // namespace
}  // namespace cosetmoe
