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

#ifndef COSETMOE_INFO_H
#define COSETMOE_INFO_H

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace cosetmoe {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Matrix = Eigen::MatrixXcd;

double binary_entropy(double x);

/// |B(n, m)| = sum_{k <= m} C(n, k).
BigInt ball_volume(uint64_t n, uint64_t m);
BigInt binomial(uint64_t n, uint64_t k);
double to_double(const BigInt &v);

/// -lg cos(pi/8).
double neg_lg_cos_pi8();

/// sqrt(e) 2^{(n/2) h(2m/n) + (n/4) h(2m'/n)} cos(pi/8)^n; the plain bound
/// when m = m' = 0. Radii above n/4 are rejected.
double moe_bound(uint64_t n, uint64_t m = 0, uint64_t mp = 0);

/// p + q sqrt(1/2) with rational p, q.
struct QuadraticSurd {
    Rational p;
    Rational q;

    QuadraticSurd operator+(const QuadraticSurd &o) const { return {p + o.p, q + o.q}; }
    QuadraticSurd operator-(const QuadraticSurd &o) const { return {p - o.p, q - o.q}; }
    QuadraticSurd operator*(const QuadraticSurd &o) const {
        return {p * o.p + q * o.q / 2, p * o.q + q * o.p};
    }
    QuadraticSurd scaled(const Rational &c) const { return {p * c, q * c}; }
    /// Exact sign: -1, 0 or 1.
    int sign() const;
    double to_double() const;
};

/// 2^{-k/2} exactly.
QuadraticSurd pow_inv_sqrt2(uint64_t k);
/// cos(pi/8)^n for even n, via cos^2(pi/8) = (1 + sqrt(1/2))/2.
QuadraticSurd cos_pi8_pow_even(uint64_t n);

/// (1 / C(n, n/2)) sum_k C(n/2, k)^2 2^{-k/2}, exactly.
QuadraticSurd combinatorial_sum(uint64_t n);
/// Exact check of combinatorial_sum(n) <= sqrt(e) cos(pi/8)^n, using a
/// rational lower bound for sqrt(e).
bool combinatorial_sum_within_bound(uint64_t n);

/// Upper tail bound Pr[G >= E G + x] <= exp(-2 x^2 / N) for N summands in [0, 1].
double hoeffding_tail(double x, double count);

/// Root of h(gamma) = -lg cos(pi/8) on (0, 1/2), by bisection.
double gamma_star();

struct BoundsParams {
    std::optional<uint64_t> n;
    std::optional<uint64_t> d;
    std::optional<uint64_t> s;
    std::optional<double> eta;
    std::optional<double> gamma;
    std::optional<double> delta;
    std::optional<double> kappa;
    std::optional<uint64_t> ell;
    uint64_t m = 0;
    uint64_t mp = 0;
};

/// Every bound computable from the supplied parameters; absent ones stay
/// empty. Probability-valued entries are also reported clamped to [0, 1].
struct BoundsReport {
    BoundsParams params;
    std::optional<double> moe_bound;
    std::optional<double> robust_moe_bound;
    std::optional<double> binding_bound;
    std::optional<double> completeness_bound;
    std::optional<double> completeness_pe_term;
    std::optional<double> completeness_ir_term;
    std::optional<double> secrecy_bound;
    std::optional<double> extractor_epsilon;
    std::optional<double> kappa_required_qkd;
    std::optional<double> kappa_required_qecm;
    std::optional<double> kappa_required_urbc;
    std::optional<double> qecm_uncloneable_bound;
    std::optional<double> qecm_uncloneable_indistinguishable_bound;
    double gamma_star = 0;

    nlohmann::json to_json() const;
};

BoundsReport protocol_bounds(const BoundsParams &p);

/// Probability table p(x, y), x in [0, nx), y in [0, ny).
struct CcDistribution {
    size_t nx = 0;
    size_t ny = 1;
    std::vector<double> p;

    double at(size_t x, size_t y) const { return p[x * ny + y]; }
    void validate() const;
};

/// Unconditioned: -lg max_x p(x). Conditioned: -lg sum_y max_x p(x, y).
double min_entropy_cc(const CcDistribution &dist, bool conditioned);
/// sum_y max_x p(x, y) without any normalisation requirement.
double guessing_probability(const CcDistribution &dist);

/// Half the sum of absolute eigenvalues of rho - sigma.
double trace_distance(const Matrix &rho, const Matrix &sigma);
/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix &h);
Matrix psd_sqrt(const Matrix &m);
bool is_povm(const std::vector<Matrix> &elements, double tol = 1e-10);

/// State classical on X, Y and quantum on A (dimension da) and B (db):
/// sum_{x,y} p(x, y) [x y] (x) rho^{xy}_{AB}.
struct CqState {
    size_t nx = 0;
    size_t ny = 0;
    size_t da = 0;
    size_t db = 0;
    std::vector<double> p;    // p(x, y) at x * ny + y
    std::vector<Matrix> rho;  // unit-trace blocks, same indexing
};

struct SequentialEntropy {
    double value = 0;   // -lg of the nested trace
    double first = 0;   // H_min(X | M(A))
    double second = 0;  // H_min(Y | N(B)) on the state conditioned on success
};

/// -lg Tr[(rho_{^(M(A)=X)})_{^(N(B)=Y)}] for fixed POVMs M (on A, indexed by
/// X) and N (on B, indexed by Y), via nondestructive measurement channels.
double sequential_min_entropy_fixed(const CqState &state, const std::vector<Matrix> &m,
                                    const std::vector<Matrix> &n);
/// The two-term form, each term from its own explicitly normalised state.
SequentialEntropy sequential_decomposition(const CqState &state, const std::vector<Matrix> &m,
                                           const std::vector<Matrix> &n);

/// Blocks rho^x of a cq state sum_x [x] (x) rho^x_A, x in Z_2^nbits indexed
/// by its integer value. Both sides of the ball-shift identity, per outcome:
/// lhs[y] = sqrt(M_y) (sum_{d(x,y)<=m} rho^x) sqrt(M_y) and
/// rhs[x] = |U| sqrt(M_x) sigma^x sqrt(M_x), sigma = E_{u in B(nbits,m)} X^u rho X^u.
std::vector<Matrix> swap_meet_lhs(const std::vector<Matrix> &rho, const std::vector<Matrix> &m,
                                  size_t nbits, size_t radius);
std::vector<Matrix> swap_meet_rhs(const std::vector<Matrix> &rho, const std::vector<Matrix> &m,
                                  size_t nbits, size_t radius);

/// Classical p(x, y, a) at (x * ny + y) * na + a. Returns
/// (H_min(X|A) on the Y = y0 part, H_min(X|AY) on the whole).
std::pair<double, double> and_tropy_sides(const std::vector<double> &p, size_t nx, size_t ny,
                                          size_t na, size_t y0);

}  // namespace cosetmoe

#endif
