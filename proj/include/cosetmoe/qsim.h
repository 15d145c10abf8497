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

#ifndef COSETMOE_QSIM_H
#define COSETMOE_QSIM_H

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cosetmoe/gf2.h"
#include "cosetmoe/statevector.h"

namespace cosetmoe {

class RandomSource;

/// Labels |a_{t,t'}>; t has length n - dim a and t' has length dim a.
struct CosetDescriptor {
    Gf2Subspace a;
    Gf2Vec t;
    Gf2Vec tp;
};

enum class Backend { kStatevector, kWiesner };

std::string_view backend_name(Backend b);

/// Per-qubit product state H^{theta_i}|x_i>.
struct WiesnerRecord {
    Gf2Vec x;
    Gf2Vec theta;
};

enum class Party { kNone, kAlice, kBob, kCharlie };

std::string_view party_name(Party p);

class QuantumReg {
  public:
    static QuantumReg from_statevector(StateVector sv, Party owner = Party::kNone);
    static QuantumReg from_wiesner(WiesnerRecord w, Party owner = Party::kNone);

    Backend backend() const { return backend_; }
    size_t num_qubits() const { return owner_.size(); }

    StateVector &sv();
    const StateVector &sv() const;
    WiesnerRecord &wiesner();
    const WiesnerRecord &wiesner() const;

    Party owner(size_t q) const { return owner_.at(q); }
    void assign(std::span<const size_t> qubits, Party p);
    void assign_all(Party p);
    std::vector<size_t> qubits_of(Party p) const;

    /// k fresh qubits in |0>, owned by `owner`; returns their indices.
    std::vector<size_t> append_ancillas(size_t k, Party owner);

  private:
    Backend backend_ = Backend::kWiesner;
    std::optional<StateVector> sv_;
    WiesnerRecord w_;
    std::vector<Party> owner_;
};

/// The definition, evaluated amplitude by amplitude.
StateVector coset_state_vector(const CosetDescriptor &d);

/// Statevector backend requires n <= StateVector::kMaxQubits; the Wiesner
/// backend requires a register subspace.
QuantumReg prepare_coset_state(const CosetDescriptor &d, Backend backend);

/// Measures the listed qubits (qubits[i] carries coordinate i) in the coset
/// basis of a and returns (t, t'). The register collapses accordingly.
std::pair<Gf2Vec, Gf2Vec> measure_coset_basis(QuantumReg &reg, std::span<const size_t> qubits,
                                              const Gf2Subspace &a, RandomSource &rng);
/// Same, on qubits 0..n-1.
std::pair<Gf2Vec, Gf2Vec> measure_coset_basis(QuantumReg &reg, const Gf2Subspace &a,
                                              RandomSource &rng);

/// Born-rule sampling over all 2^n labels from explicit overlaps
/// |<a_{s,s'}|psi>|^2. Small n only; the state is left untouched.
std::pair<Gf2Vec, Gf2Vec> measure_coset_basis_reference(const StateVector &psi,
                                                         const Gf2Subspace &a, RandomSource &rng);

/// Per-qubit measurement, qubit qubits[i] in the Hadamard basis iff
/// theta[i] = 1. Outcome i is the bit x_i of the post-measurement H^theta|x>.
Gf2Vec measure_bases(QuantumReg &reg, std::span<const size_t> qubits, const Gf2Vec &theta,
                     RandomSource &rng);

/// Independently per qubit: X with probability dx, then Z with probability dz.
void apply_pauli_noise(QuantumReg &reg, double dx, double dz, RandomSource &rng);

struct AppendAncillas {
    size_t k = 0;
};
struct ApplyUnitary {
    std::vector<size_t> qubits;
    Eigen::MatrixXcd u;
};
struct MeasureQubits {
    std::vector<size_t> qubits;
};
struct AssignQubits {
    std::vector<size_t> qubits;
    Party party = Party::kNone;
};
using AdversaryAction = std::variant<AppendAncillas, ApplyUnitary, MeasureQubits, AssignQubits>;

/// Isometry-plus-split description of a channel acting on a register.
struct AdversaryChannel {
    std::vector<AdversaryAction> actions;

    AdversaryChannel &append_ancillas(size_t k);
    AdversaryChannel &apply(std::vector<size_t> qubits, Eigen::MatrixXcd u);
    AdversaryChannel &cnot(size_t control, size_t target);
    AdversaryChannel &measure(std::vector<size_t> qubits);
    AdversaryChannel &assign(std::vector<size_t> qubits, Party p);
};

/// Runs the actions in order and returns the measurement record. Unitaries
/// need the statevector backend; every qubit must be owned at the end.
std::vector<Gf2Vec> apply_adversary(QuantumReg &reg, const AdversaryChannel &ch, RandomSource &rng);

/// |(a + t_a) ∩ (b + u_b)| / 2^{n/2}, by enumerating a + t_a.
double coset_overlap(const CosetDescriptor &d, const Gf2Subspace &b, const Gf2Vec &u);
/// <psi| Pi |psi> for Pi the projector onto span{|v> : v in b + u_b}.
double coset_projector_expectation(const StateVector &psi, const Gf2Subspace &b, const Gf2Vec &u);

}  // namespace cosetmoe

#endif
