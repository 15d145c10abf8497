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

#include "cosetmoe/statevector.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "cosetmoe/rng.h"

namespace cosetmoe {

namespace {

// Born weights below this are treated as exactly zero when sampling, so that
// rounding noise never opens a branch that cannot occur.
constexpr double kZeroProbability = 1e-13;

uint64_t local_index(uint64_t idx, size_t nq, std::span<const size_t> qubits) {
    uint64_t w = 0;
    for (size_t q : qubits) {
        w = (w << 1) | ((idx >> (nq - 1 - q)) & 1);
    }
    return w;
}

}  // namespace

StateVector::StateVector(size_t nqubits) : n_(nqubits) {
    if (nqubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: qubit count exceeds " +
                                    std::to_string(kMaxQubits));
    }
    amps_.assign(size_t{1} << nqubits, Amp(0));
    amps_[0] = 1;
}

StateVector StateVector::basis(size_t nqubits, uint64_t index) {
    StateVector sv(nqubits);
    if (index >= sv.dim()) {
        throw std::out_of_range("StateVector::basis index out of range");
    }
    sv.amps_[0] = 0;
    sv.amps_[index] = 1;
    return sv;
}

kernels::Exec StateVector::exec() const {
    if (forced_) {
        return *forced_;
    }
    return n_ >= 14 ? kernels::Exec::kParallel : kernels::Exec::kSerial;
}

void StateVector::apply_1q(size_t q, const kernels::Mat2 &u) {
    kernels::apply_1q(amps_, n_, q, u, exec());
}

void StateVector::h(size_t q) { kernels::hadamard(amps_, n_, q, exec()); }
void StateVector::x(size_t q) { kernels::pauli_x(amps_, n_, q, exec()); }
void StateVector::z(size_t q) { kernels::pauli_z(amps_, n_, q, exec()); }

void StateVector::cnot(size_t control, size_t target) {
    kernels::cnot(amps_, n_, control, target, exec());
}

void StateVector::apply_unitary(std::span<const size_t> qubits, const Eigen::MatrixXcd &u) {
    kernels::apply_kq(amps_, n_, qubits, u, exec());
}

void StateVector::apply_linear(std::span<const size_t> qubits, const Gf2Matrix &m) {
    const size_t k = qubits.size();
    if (m.rows() != k || m.cols() != k) {
        throw std::invalid_argument("apply_linear: matrix shape does not match qubits");
    }
    if (k > 64) {
        throw std::invalid_argument("apply_linear: too many qubits");
    }
    if (m.rank() != k) {
        throw std::invalid_argument("apply_linear: matrix is singular");
    }
    // Image of local unit vector e_i is column i of m.
    std::vector<uint64_t> images(k, 0);
    for (size_t i = 0; i < k; i++) {
        for (size_t r = 0; r < k; r++) {
            if (m.get(r, i)) {
                images[i] |= uint64_t{1} << (k - 1 - r);
            }
        }
    }
    kernels::permute_linear(amps_, n_, qubits, images, exec());
}

void StateVector::append_qubits(size_t k) {
    if (n_ + k > kMaxQubits) {
        throw std::invalid_argument("StateVector: qubit count exceeds " +
                                    std::to_string(kMaxQubits));
    }
    std::vector<Amp> next(size_t{1} << (n_ + k), Amp(0));
    for (size_t i = 0; i < amps_.size(); i++) {
        next[i << k] = amps_[i];
    }
    amps_ = std::move(next);
    n_ += k;
}

std::vector<double> StateVector::marginal(std::span<const size_t> qubits) const {
    if (qubits.size() > kMaxQubits) {
        throw std::invalid_argument("marginal: too many qubits");
    }
    for (size_t q : qubits) {
        if (q >= n_) {
            throw std::out_of_range("marginal: qubit out of range");
        }
    }
    std::vector<double> p(amps_.size());
    kernels::abs2(amps_, p, exec());
    std::vector<double> out(size_t{1} << qubits.size(), 0.0);
    for (size_t i = 0; i < p.size(); i++) {
        out[local_index(i, n_, qubits)] += p[i];
    }
    return out;
}

Gf2Vec StateVector::measure(std::span<const size_t> qubits, RandomSource &rng) {
    std::vector<double> p = marginal(qubits);
    double total = 0;
    for (double &v : p) {
        if (v < kZeroProbability) {
            v = 0;
        }
        total += v;
    }
    if (total <= 0) {
        throw std::domain_error("measure: state has zero norm");
    }
    for (double &v : p) {
        v /= total;
    }
    size_t pick = rng.pick(p);
    Gf2Vec outcome = Gf2Vec::from_uint(qubits.size(), pick);
    project(qubits, outcome);
    normalize();
    return outcome;
}

double StateVector::project(std::span<const size_t> qubits, const Gf2Vec &outcome) {
    if (outcome.size() != qubits.size()) {
        throw std::invalid_argument("project: outcome length mismatch");
    }
    uint64_t want = outcome.to_uint();
    double kept = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (local_index(i, n_, qubits) != want) {
            amps_[i] = 0;
        } else {
            kept += std::norm(amps_[i]);
        }
    }
    return kept;
}

double StateVector::norm2() const {
    double s = 0;
    for (const Amp &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

void StateVector::normalize() {
    double s = std::sqrt(norm2());
    if (s <= 0) {
        throw std::domain_error("normalize: zero vector");
    }
    for (Amp &a : amps_) {
        a /= s;
    }
}

Amp StateVector::inner(const StateVector &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("inner: qubit count mismatch");
    }
    Amp s = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        s += std::conj(amps_[i]) * other.amps_[i];
    }
    return s;
}

void dump_statevector(const StateVector &sv, const std::string &path) {
    static_assert(std::endian::native == std::endian::little, "little-endian host expected");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path);
    }
    for (const Amp &a : sv.amps()) {
        double re = a.real();
        double im = a.imag();
        out.write(reinterpret_cast<const char *>(&re), sizeof re);
        out.write(reinterpret_cast<const char *>(&im), sizeof im);
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace cosetmoe
