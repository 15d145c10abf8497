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

#ifndef COSETMOE_KERNELS_H
#define COSETMOE_KERNELS_H

#include <array>
#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

namespace cosetmoe {

using Amp = std::complex<double>;

namespace kernels {

/// Each kernel comes in a serial reference form and an OpenMP form. Every
/// output element is written by exactly one iteration, so both forms give
/// bit-identical results for any thread count.
enum class Exec { kSerial, kParallel };

/// Row-major 2x2 matrix.
using Mat2 = std::array<Amp, 4>;

/// Qubit q of an nq-qubit register is bit (nq - 1 - q) of the amplitude index.
inline uint64_t qubit_mask(size_t nq, size_t q) { return uint64_t{1} << (nq - 1 - q); }

void apply_1q(std::span<Amp> psi, size_t nq, size_t q, const Mat2 &u, Exec exec);
void hadamard(std::span<Amp> psi, size_t nq, size_t q, Exec exec);
void pauli_x(std::span<Amp> psi, size_t nq, size_t q, Exec exec);
void pauli_z(std::span<Amp> psi, size_t nq, size_t q, Exec exec);
void cnot(std::span<Amp> psi, size_t nq, size_t control, size_t target, Exec exec);

/// Dense 2^k x 2^k unitary on the listed qubits; qubits[0] is the most
/// significant bit of the local index.
void apply_kq(std::span<Amp> psi, size_t nq, std::span<const size_t> qubits,
              const Eigen::MatrixXcd &u, Exec exec);

/// Basis relabelling |w> -> |L w> on the listed qubits, where L is linear and
/// invertible over Z_2. images[i] is L applied to the i-th local unit vector,
/// encoded with local coordinate 0 in the most significant bit.
void permute_linear(std::span<Amp> psi, size_t nq, std::span<const size_t> qubits,
                    std::span<const uint64_t> images, Exec exec);

/// out[i] = |psi[i]|^2.
void abs2(std::span<const Amp> psi, std::span<double> out, Exec exec);

}  // namespace kernels
}  // namespace cosetmoe

#endif
