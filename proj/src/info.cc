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

#include "cosetmoe/info.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cosetmoe/ext.h"

namespace cosetmoe {

namespace {

constexpr size_t kMaxEigenDim = size_t{1} << 12;

Rational half_pow(uint64_t k) {
    BigInt den = 1;
    den <<= static_cast<unsigned>(k);
    return Rational(BigInt(1), den);
}

Matrix hermitian_part(const Matrix &m) { return (m + m.adjoint()) / 2.0; }

Eigen::VectorXd hermitian_eigenvalues(const Matrix &h) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("eigenvalues: matrix is not square");
    }
    if (static_cast<size_t>(h.rows()) > kMaxEigenDim) {
        throw std::invalid_argument("eigenvalues: dimension exceeds 4096");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void check_cq(const CqState &s, const std::vector<Matrix> &m, const std::vector<Matrix> &n) {
    if (s.p.size() != s.nx * s.ny || s.rho.size() != s.p.size()) {
        throw std::invalid_argument("CqState: table sizes do not match");
    }
    if (m.size() != s.nx || n.size() != s.ny) {
        throw std::invalid_argument("POVMs must be indexed by X and Y");
    }
    if (!is_povm(m) || !is_povm(n)) {
        throw std::invalid_argument("invalid POVM");
    }
    for (const Matrix &e : m) {
        if (static_cast<size_t>(e.rows()) != s.da) {
            throw std::invalid_argument("POVM on A has wrong dimension");
        }
    }
    for (const Matrix &e : n) {
        if (static_cast<size_t>(e.rows()) != s.db) {
            throw std::invalid_argument("POVM on B has wrong dimension");
        }
    }
}

}  // namespace

double binary_entropy(double x) {
    if (!(x >= 0 && x <= 1)) {
        throw std::domain_error("binary_entropy: argument outside [0, 1]");
    }
    if (x == 0 || x == 1) {
        return 0;
    }
    return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

BigInt binomial(uint64_t n, uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt c = 1;
    for (uint64_t i = 1; i <= k; i++) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

BigInt ball_volume(uint64_t n, uint64_t m) {
    if (m > n) {
        throw std::invalid_argument("ball_volume: radius exceeds dimension");
    }
    BigInt total = 0;
    BigInt c = 1;
    for (uint64_t k = 0; k <= m; k++) {
        total += c;
        c *= n - k;
        c /= k + 1;
    }
    return total;
}

double to_double(const BigInt &v) { return v.convert_to<double>(); }

double neg_lg_cos_pi8() { return -std::log2(std::cos(std::numbers::pi / 8)); }

double moe_bound(uint64_t n, uint64_t m, uint64_t mp) {
    if (n % 2 != 0) {
        throw std::invalid_argument("moe_bound: n must be even");
    }
    double base = std::sqrt(std::numbers::e) * std::pow(std::cos(std::numbers::pi / 8), n);
    if (m == 0 && mp == 0) {
        return base;
    }
    if (4 * m > n || 4 * mp > n) {
        throw std::invalid_argument("moe_bound: robust radii must not exceed n/4");
    }
    double dn = static_cast<double>(n);
    double e = dn / 2 * binary_entropy(2.0 * m / dn) + dn / 4 * binary_entropy(2.0 * mp / dn);
    return base * std::exp2(e);
}

int QuadraticSurd::sign() const {
    auto sgn = [](const Rational &r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); };
    int sp = sgn(p);
    int sq = sgn(q);
    if (sq == 0) {
        return sp;
    }
    if (sp == 0 || sp == sq) {
        return sq;
    }
    // Opposite signs: compare p^2 with q^2 / 2.
    Rational lhs = p * p;
    Rational rhs = q * q / 2;
    if (lhs == rhs) {
        return 0;
    }
    return lhs > rhs ? sp : sq;
}

double QuadraticSurd::to_double() const {
    return p.convert_to<double>() + q.convert_to<double>() * std::sqrt(0.5);
}

QuadraticSurd pow_inv_sqrt2(uint64_t k) {
    if (k % 2 == 0) {
        return {half_pow(k / 2), Rational(0)};
    }
    return {Rational(0), half_pow(k / 2)};
}

QuadraticSurd cos_pi8_pow_even(uint64_t n) {
    if (n % 2 != 0) {
        throw std::invalid_argument("cos_pi8_pow_even: n must be even");
    }
    QuadraticSurd c2{Rational(1, 2), Rational(1, 2)};
    QuadraticSurd out{Rational(1), Rational(0)};
    for (uint64_t i = 0; i < n / 2; i++) {
        out = out * c2;
    }
    return out;
}

QuadraticSurd combinatorial_sum(uint64_t n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("combinatorial_sum: n must be even and at least 2");
    }
    QuadraticSurd sum{Rational(0), Rational(0)};
    for (uint64_t k = 0; k <= n / 2; k++) {
        BigInt c = binomial(n / 2, k);
        sum = sum + pow_inv_sqrt2(k).scaled(Rational(c * c));
    }
    return sum.scaled(Rational(BigInt(1), binomial(n, n / 2)));
}

bool combinatorial_sum_within_bound(uint64_t n) {
    // 1.6487212 < sqrt(e) = 1.64872127...
    const Rational sqrt_e_lower(BigInt(16487212), BigInt(10000000));
    QuadraticSurd diff = combinatorial_sum(n) - cos_pi8_pow_even(n).scaled(sqrt_e_lower);
    return diff.sign() <= 0;
}

double hoeffding_tail(double x, double count) {
    if (x < 0 || count <= 0) {
        throw std::invalid_argument("hoeffding_tail: need x >= 0 and a positive count");
    }
    return std::exp(-2 * x * x / count);
}

double gamma_star() {
    const double target = neg_lg_cos_pi8();
    double lo = 0;
    double hi = 0.5;
    while (hi - lo > 1e-12) {
        double mid = (lo + hi) / 2;
        if (binary_entropy(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

BoundsReport protocol_bounds(const BoundsParams &p) {
    BoundsReport r;
    r.params = p;
    r.gamma_star = gamma_star();
    const double c = neg_lg_cos_pi8();
    const double ln2 = std::numbers::ln2;
    if (p.n) {
        const double n = static_cast<double>(*p.n);
        r.moe_bound = moe_bound(*p.n);
        if (p.m != 0 || p.mp != 0) {
            r.robust_moe_bound = moe_bound(*p.n, p.m, p.mp);
        }
        r.kappa_required_qecm = c / 2 * n - 1 / (4 * ln2);
        if (p.d && p.eta) {
            r.binding_bound = std::pow(1 - 2.0 * static_cast<double>(*p.d) / n, *p.eta * n / 2);
        }
        if (p.d && p.gamma && p.delta) {
            double rate = 2.0 * static_cast<double>(*p.d) / n;
            if (*p.delta >= 0 && *p.delta <= *p.gamma && *p.delta <= rate) {
                r.completeness_pe_term = std::exp(-std::pow(*p.gamma - *p.delta, 2) * n);
                r.completeness_ir_term = std::exp(-std::pow(rate - *p.delta, 2) * n);
                r.completeness_bound = *r.completeness_pe_term + *r.completeness_ir_term;
            }
        }
        if (p.s && p.eta) {
            double s = static_cast<double>(*p.s);
            r.kappa_required_qkd = (c - 2 * s / n - 2 * *p.eta - 1 / (2 * ln2 * n)) * n / 2;
            r.kappa_required_urbc = c / 2 * n - 1 / (4 * ln2) - s - *p.eta * n / 2;
        }
        if (p.ell) {
            std::optional<double> kq = p.kappa ? p.kappa : r.kappa_required_qecm;
            double eps = lhl_epsilon(*kq, *p.ell);
            double mono = std::exp(0.25) * std::pow(std::cos(std::numbers::pi / 8), n / 2);
            r.qecm_uncloneable_bound = std::max(eps, mono);
            r.qecm_uncloneable_indistinguishable_bound = std::max(2 * eps, 2 * mono);
        }
        std::optional<double> kappa = p.kappa ? p.kappa : r.kappa_required_qkd;
        if (p.gamma && p.ell && kappa) {
            double eps = lhl_epsilon(*kappa, *p.ell);
            double first = std::exp2(n / 2 * binary_entropy(*p.gamma)) * eps;
            double second =
                std::exp2(-(c - binary_entropy(*p.gamma) - 1 / (2 * ln2 * n)) * n / 2);
            r.secrecy_bound = std::max(first, second);
        }
    }
    if (p.kappa && p.ell) {
        r.extractor_epsilon = lhl_epsilon(*p.kappa, *p.ell);
    }
    return r;
}

nlohmann::json BoundsReport::to_json() const {
    nlohmann::json params_json;
    auto put_param = [&](const char *key, const auto &v) {
        if (v) {
            params_json[key] = *v;
        }
    };
    put_param("n", params.n);
    put_param("d", params.d);
    put_param("s", params.s);
    put_param("eta", params.eta);
    put_param("gamma", params.gamma);
    put_param("delta", params.delta);
    put_param("kappa", params.kappa);
    put_param("ell", params.ell);
    params_json["m"] = params.m;
    params_json["mp"] = params.mp;

    nlohmann::json j;
    j["params"] = params_json;
    auto put = [&](const char *key, const std::optional<double> &v, bool probability) {
        if (!v) {
            j[key] = nullptr;
            return;
        }
        j[key] = *v;
        if (probability) {
            j[std::string(key) + "_clamped"] = std::clamp(*v, 0.0, 1.0);
        }
    };
    put("moe_bound", moe_bound, true);
    put("robust_moe_bound", robust_moe_bound, true);
    put("binding_bound", binding_bound, true);
    put("completeness_bound", completeness_bound, true);
    put("completeness_pe_term", completeness_pe_term, true);
    put("completeness_ir_term", completeness_ir_term, true);
    put("secrecy_bound", secrecy_bound, true);
    put("extractor_epsilon", extractor_epsilon, true);
    put("qecm_uncloneable_bound", qecm_uncloneable_bound, true);
    put("qecm_uncloneable_indistinguishable_bound", qecm_uncloneable_indistinguishable_bound,
        true);
    put("kappa_required_qkd", kappa_required_qkd, false);
    put("kappa_required_qecm", kappa_required_qecm, false);
    put("kappa_required_urbc", kappa_required_urbc, false);
    j["gamma_star"] = gamma_star;
    return j;
}

void CcDistribution::validate() const {
    if (nx == 0 || ny == 0 || p.size() != nx * ny) {
        throw std::invalid_argument("CcDistribution: empty or malformed table");
    }
    double total = 0;
    for (double v : p) {
        if (v < 0) {
            throw std::invalid_argument("CcDistribution: negative probability");
        }
        total += v;
    }
    if (std::abs(total - 1) > 1e-12) {
        throw std::invalid_argument("CcDistribution: probabilities do not sum to 1");
    }
}

double guessing_probability(const CcDistribution &dist) {
    double s = 0;
    for (size_t y = 0; y < dist.ny; y++) {
        double best = 0;
        for (size_t x = 0; x < dist.nx; x++) {
            best = std::max(best, dist.at(x, y));
        }
        s += best;
    }
    return s;
}

double min_entropy_cc(const CcDistribution &dist, bool conditioned) {
    dist.validate();
    if (conditioned) {
        return -std::log2(guessing_probability(dist));
    }
    double best = 0;
    for (size_t x = 0; x < dist.nx; x++) {
        double px = 0;
        for (size_t y = 0; y < dist.ny; y++) {
            px += dist.at(x, y);
        }
        best = std::max(best, px);
    }
    return -std::log2(best);
}

double trace_norm(const Matrix &h) {
    Eigen::VectorXd ev = hermitian_eigenvalues(h);
    return ev.cwiseAbs().sum();
}

double trace_distance(const Matrix &rho, const Matrix &sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    return trace_norm(rho - sigma) / 2;
}

Matrix psd_sqrt(const Matrix &m) {
    if (static_cast<size_t>(m.rows()) > kMaxEigenDim) {
        throw std::invalid_argument("psd_sqrt: dimension exceeds 4096");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_povm(const std::vector<Matrix> &elements, double tol) {
    if (elements.empty()) {
        return false;
    }
    Eigen::Index d = elements[0].rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix &e : elements) {
        if (e.rows() != d || e.cols() != d) {
            return false;
        }
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) {
            return false;
        }
        if (hermitian_eigenvalues(e).minCoeff() < -tol) {
            return false;
        }
        sum += e;
    }
    return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

double sequential_min_entropy_fixed(const CqState &state, const std::vector<Matrix> &m,
                                    const std::vector<Matrix> &n) {
    check_cq(state, m, n);
    const Matrix ia = Matrix::Identity(static_cast<Eigen::Index>(state.da),
                                       static_cast<Eigen::Index>(state.da));
    const Matrix ib = Matrix::Identity(static_cast<Eigen::Index>(state.db),
                                       static_cast<Eigen::Index>(state.db));
    double total = 0;
    for (size_t x = 0; x < state.nx; x++) {
        Matrix kx = kron(psd_sqrt(m[x]), ib);
        for (size_t y = 0; y < state.ny; y++) {
            Matrix ly = kron(ia, psd_sqrt(n[y]));
            Matrix block = state.p[x * state.ny + y] * state.rho[x * state.ny + y];
            Matrix after_m = kx * block * kx.adjoint();
            Matrix after_n = ly * after_m * ly.adjoint();
            total += after_n.trace().real();
        }
    }
    return -std::log2(total);
}

SequentialEntropy sequential_decomposition(const CqState &state, const std::vector<Matrix> &m,
                                           const std::vector<Matrix> &n) {
    check_cq(state, m, n);
    const Matrix ia = Matrix::Identity(static_cast<Eigen::Index>(state.da),
                                       static_cast<Eigen::Index>(state.da));
    const Matrix ib = Matrix::Identity(static_cast<Eigen::Index>(state.db),
                                       static_cast<Eigen::Index>(state.db));
    // Success probability of the first guess, from the POVM elements directly.
    double first_success = 0;
    for (size_t x = 0; x < state.nx; x++) {
        Matrix ex = kron(m[x], ib);
        for (size_t y = 0; y < state.ny; y++) {
            size_t i = x * state.ny + y;
            first_success += state.p[i] * (ex * state.rho[i]).trace().real();
        }
    }
    // Normalised state conditioned on that success, then the second guess.
    double second_success = 0;
    for (size_t x = 0; x < state.nx; x++) {
        Matrix kx = kron(psd_sqrt(m[x]), ib);
        for (size_t y = 0; y < state.ny; y++) {
            size_t i = x * state.ny + y;
            Matrix cond = kx * (state.p[i] * state.rho[i]) * kx.adjoint() / first_success;
            second_success += (kron(ia, n[y]) * cond).trace().real();
        }
    }
    SequentialEntropy out;
    out.first = -std::log2(first_success);
    out.second = -std::log2(second_success);
    out.value = out.first + out.second;
    return out;
}

std::vector<Matrix> swap_meet_lhs(const std::vector<Matrix> &rho, const std::vector<Matrix> &m,
                                  size_t nbits, size_t radius) {
    const size_t count = size_t{1} << nbits;
    if (rho.size() != count || m.size() != count) {
        throw std::invalid_argument("swap_meet: one block and one POVM element per string");
    }
    std::vector<Matrix> out;
    for (size_t y = 0; y < count; y++) {
        Matrix acc = Matrix::Zero(rho[0].rows(), rho[0].cols());
        for (size_t x = 0; x < count; x++) {
            if (static_cast<size_t>(std::popcount(x ^ y)) <= radius) {
                acc += rho[x];
            }
        }
        Matrix s = psd_sqrt(m[y]);
        out.push_back(s * acc * s);
    }
    return out;
}

std::vector<Matrix> swap_meet_rhs(const std::vector<Matrix> &rho, const std::vector<Matrix> &m,
                                  size_t nbits, size_t radius) {
    const size_t count = size_t{1} << nbits;
    if (rho.size() != count || m.size() != count) {
        throw std::invalid_argument("swap_meet: one block and one POVM element per string");
    }
    std::vector<size_t> ball;
    for (size_t u = 0; u < count; u++) {
        if (static_cast<size_t>(std::popcount(u)) <= radius) {
            ball.push_back(u);
        }
    }
    // sigma = E_u X^u rho X^u: the block at x is the average of rho^{x+u}.
    std::vector<Matrix> sigma(count, Matrix::Zero(rho[0].rows(), rho[0].cols()));
    for (size_t u : ball) {
        for (size_t x = 0; x < count; x++) {
            sigma[x ^ u] += rho[x] / static_cast<double>(ball.size());
        }
    }
    std::vector<Matrix> out;
    for (size_t x = 0; x < count; x++) {
        Matrix s = psd_sqrt(m[x]);
        out.push_back(static_cast<double>(ball.size()) * (s * sigma[x] * s));
    }
    return out;
}

std::pair<double, double> and_tropy_sides(const std::vector<double> &p, size_t nx, size_t ny,
                                          size_t na, size_t y0) {
    if (p.size() != nx * ny * na || y0 >= ny) {
        throw std::invalid_argument("and_tropy_sides: malformed table");
    }
    auto at = [&](size_t x, size_t y, size_t a) { return p[(x * ny + y) * na + a]; };
    double restricted = 0;
    for (size_t a = 0; a < na; a++) {
        double best = 0;
        for (size_t x = 0; x < nx; x++) {
            best = std::max(best, at(x, y0, a));
        }
        restricted += best;
    }
    double full = 0;
    for (size_t y = 0; y < ny; y++) {
        for (size_t a = 0; a < na; a++) {
            double best = 0;
            for (size_t x = 0; x < nx; x++) {
                best = std::max(best, at(x, y, a));
            }
            full += best;
        }
    }
    return {-std::log2(restricted), -std::log2(full)};
}

}  // namespace cosetmoe
