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

#include "cosetmoe/kernels.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cosetmoe {
namespace kernels {

namespace {

// Inserts a zero bit at position `bit` of x.
inline uint64_t insert_zero(uint64_t x, uint64_t bit) {
    uint64_t low = x & (bit - 1);
    return ((x ^ low) << 1) | low;
}

// Scatters the low bits of x into the positions set in `mask`.
inline uint64_t deposit(uint64_t x, uint64_t mask) {
    uint64_t out = 0;
    for (uint64_t m = mask; m != 0; m &= m - 1) {
        uint64_t low = m & (~m + 1);
        if (x & 1) {
            out |= low;
        }
        x >>= 1;
    }
    return out;
}

void check_qubit(size_t nq, size_t q) {
    if (q >= nq) {
        throw std::out_of_range("qubit index out of range");
    }
}

}  // namespace

void apply_1q(std::span<Amp> psi, size_t nq, size_t q, const Mat2 &u, Exec exec) {
    check_qubit(nq, q);
    const uint64_t bit = qubit_mask(nq, q);
    const int64_t half = static_cast<int64_t>(psi.size() / 2);
    Amp *p = psi.data();
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
        for (int64_t i = 0; i < half; i++) {
            uint64_t i0 = insert_zero(static_cast<uint64_t>(i), bit);
            uint64_t i1 = i0 | bit;
            Amp a = p[i0];
            Amp b = p[i1];
            p[i0] = u[0] * a + u[1] * b;
            p[i1] = u[2] * a + u[3] * b;
        }
    } else {
        for (int64_t i = 0; i < half; i++) {
            uint64_t i0 = insert_zero(static_cast<uint64_t>(i), bit);
            uint64_t i1 = i0 | bit;
            Amp a = p[i0];
            Amp b = p[i1];
            p[i0] = u[0] * a + u[1] * b;
            p[i1] = u[2] * a + u[3] * b;
        }
    }
}

void hadamard(std::span<Amp> psi, size_t nq, size_t q, Exec exec) {
    const double s = 1 / std::sqrt(2.0);
    apply_1q(psi, nq, q, {Amp(s), Amp(s), Amp(s), Amp(-s)}, exec);
}

void pauli_x(std::span<Amp> psi, size_t nq, size_t q, Exec exec) {
    apply_1q(psi, nq, q, {Amp(0), Amp(1), Amp(1), Amp(0)}, exec);
}

void pauli_z(std::span<Amp> psi, size_t nq, size_t q, Exec exec) {
    apply_1q(psi, nq, q, {Amp(1), Amp(0), Amp(0), Amp(-1)}, exec);
}

void cnot(std::span<Amp> psi, size_t nq, size_t control, size_t target, Exec exec) {
    check_qubit(nq, control);
    check_qubit(nq, target);
    if (control == target) {
        throw std::invalid_argument("cnot: control equals target");
    }
    const uint64_t cb = qubit_mask(nq, control);
    const uint64_t tb = qubit_mask(nq, target);
    const int64_t half = static_cast<int64_t>(psi.size() / 2);
    Amp *p = psi.data();
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
        for (int64_t i = 0; i < half; i++) {
            uint64_t i0 = insert_zero(static_cast<uint64_t>(i), tb);
            if (i0 & cb) {
                std::swap(p[i0], p[i0 | tb]);
            }
        }
    } else {
        for (int64_t i = 0; i < half; i++) {
            uint64_t i0 = insert_zero(static_cast<uint64_t>(i), tb);
            if (i0 & cb) {
                std::swap(p[i0], p[i0 | tb]);
            }
        }
    }
}

void apply_kq(std::span<Amp> psi, size_t nq, std::span<const size_t> qubits,
              const Eigen::MatrixXcd &u, Exec exec) {
    const size_t k = qubits.size();
    const uint64_t local = uint64_t{1} << k;
    if (static_cast<uint64_t>(u.rows()) != local || static_cast<uint64_t>(u.cols()) != local) {
        throw std::invalid_argument("apply_kq: matrix size does not match qubit count");
    }
    std::vector<uint64_t> offsets(local, 0);
    uint64_t sub_mask = 0;
    for (size_t i = 0; i < k; i++) {
        check_qubit(nq, qubits[i]);
        uint64_t b = qubit_mask(nq, qubits[i]);
        if (sub_mask & b) {
            throw std::invalid_argument("apply_kq: repeated qubit");
        }
        sub_mask |= b;
        for (uint64_t w = 0; w < local; w++) {
            if ((w >> (k - 1 - i)) & 1) {
                offsets[w] |= b;
            }
        }
    }
    const uint64_t rest_mask = (psi.size() - 1) & ~sub_mask;
    const int64_t blocks = static_cast<int64_t>(psi.size() >> k);
    Amp *p = psi.data();
    auto body = [&](int64_t blk, std::vector<Amp> &in) {
        uint64_t base = deposit(static_cast<uint64_t>(blk), rest_mask);
        for (uint64_t w = 0; w < local; w++) {
            in[w] = p[base | offsets[w]];
        }
        for (uint64_t r = 0; r < local; r++) {
            Amp acc = 0;
            for (uint64_t c = 0; c < local; c++) {
                acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            p[base | offsets[r]] = acc;
        }
    };
    if (exec == Exec::kParallel) {
#pragma omp parallel
        {
            std::vector<Amp> in(local);
#pragma omp for schedule(static)
            for (int64_t blk = 0; blk < blocks; blk++) {
                body(blk, in);
            }
        }
    } else {
        std::vector<Amp> in(local);
        for (int64_t blk = 0; blk < blocks; blk++) {
            body(blk, in);
        }
    }
}

void permute_linear(std::span<Amp> psi, size_t nq, std::span<const size_t> qubits,
                    std::span<const uint64_t> images, Exec exec) {
    const size_t k = qubits.size();
    if (images.size() != k) {
        throw std::invalid_argument("permute_linear: one image per qubit required");
    }
    std::vector<uint64_t> pos(k);
    uint64_t sub_mask = 0;
    for (size_t i = 0; i < k; i++) {
        check_qubit(nq, qubits[i]);
        pos[i] = qubit_mask(nq, qubits[i]);
        sub_mask |= pos[i];
    }
    // Full-index image of each local coordinate.
    std::vector<uint64_t> full(k, 0);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            if ((images[i] >> (k - 1 - j)) & 1) {
                full[i] |= pos[j];
            }
        }
    }
    std::vector<Amp> out(psi.size());
    const int64_t dim = static_cast<int64_t>(psi.size());
    const Amp *p = psi.data();
    auto target = [&](uint64_t idx) {
        uint64_t t = idx & ~sub_mask;
        for (size_t i = 0; i < k; i++) {
            if (idx & pos[i]) {
                t ^= full[i];
            }
        }
        return t;
    };
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
        for (int64_t i = 0; i < dim; i++) {
            out[target(static_cast<uint64_t>(i))] = p[i];
        }
    } else {
        for (int64_t i = 0; i < dim; i++) {
            out[target(static_cast<uint64_t>(i))] = p[i];
        }
    }
    std::copy(out.begin(), out.end(), psi.begin());
}

void abs2(std::span<const Amp> psi, std::span<double> out, Exec exec) {
    const int64_t dim = static_cast<int64_t>(psi.size());
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
        for (int64_t i = 0; i < dim; i++) {
            out[i] = std::norm(psi[i]);
        }
    } else {
        for (int64_t i = 0; i < dim; i++) {
            out[i] = std::norm(psi[i]);
        }
    }
}

}  // namespace kernels
}  // namespace cosetmoe
