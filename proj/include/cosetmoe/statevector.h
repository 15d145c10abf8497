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

#ifndef COSETMOE_STATEVECTOR_H
#define COSETMOE_STATEVECTOR_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cosetmoe/gf2.h"
#include "cosetmoe/kernels.h"

namespace cosetmoe {

class RandomSource;

/// Dense pure state of up to kMaxQubits qubits. Qubit 0 is the most
/// significant bit of the amplitude index.
class StateVector {
  public:
    static constexpr size_t kMaxQubits = 20;

    /// |0...0>.
    explicit StateVector(size_t nqubits);
    static StateVector basis(size_t nqubits, uint64_t index);

    size_t num_qubits() const { return n_; }
    size_t dim() const { return amps_.size(); }
    std::span<Amp> amps() { return amps_; }
    std::span<const Amp> amps() const { return amps_; }
    Amp amp(uint64_t index) const { return amps_[index]; }

    /// Overrides the automatic serial/parallel choice (parallel above 2^14).
    void force_exec(std::optional<kernels::Exec> exec) { forced_ = exec; }

    void apply_1q(size_t q, const kernels::Mat2 &u);
    void h(size_t q);
    void x(size_t q);
    void z(size_t q);
    void cnot(size_t control, size_t target);
    void apply_unitary(std::span<const size_t> qubits, const Eigen::MatrixXcd &u);
    /// |w> -> |m w> on the listed qubits, where w is read with qubits[0] as
    /// coordinate 0; m must be square and invertible.
    void apply_linear(std::span<const size_t> qubits, const Gf2Matrix &m);

    /// Adds k qubits in |0> after the existing ones.
    void append_qubits(size_t k);

    /// Outcome probabilities of a computational-basis measurement of the
    /// listed qubits; the outcome index has qubits[0] as its top bit.
    std::vector<double> marginal(std::span<const size_t> qubits) const;
    /// Samples and collapses; the state is renormalised.
    Gf2Vec measure(std::span<const size_t> qubits, RandomSource &rng);
    /// Projects the listed qubits onto `outcome` without renormalising;
    /// returns the squared norm that remains.
    double project(std::span<const size_t> qubits, const Gf2Vec &outcome);

    double norm2() const;
    void normalize();
    /// <this|other>.
    Amp inner(const StateVector &other) const;

  private:
    kernels::Exec exec() const;

    size_t n_ = 0;
    std::vector<Amp> amps_;
    std::optional<kernels::Exec> forced_;
};

/// Writes little-endian f64 (re, im) pairs in amplitude-index order.
void dump_statevector(const StateVector &sv, const std::string &path);

}  // namespace cosetmoe

#endif
