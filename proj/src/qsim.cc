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

#include "cosetmoe/qsim.h"

#include <cmath>
#include <stdexcept>

#include "cosetmoe/rng.h"

namespace cosetmoe {

namespace {

void check_descriptor(const CosetDescriptor &d) {
    size_t n = d.a.ambient();
    if (d.t.size() != n - d.a.dim() || d.tp.size() != d.a.dim()) {
        throw std::invalid_argument("CosetDescriptor: label lengths do not match the subspace");
    }
}

std::vector<size_t> iota(size_t n) {
    std::vector<size_t> v(n);
    for (size_t i = 0; i < n; i++) {
        v[i] = i;
    }
    return v;
}

// Columns are the images of unit vectors under f.
template <typename F>
Gf2Matrix matrix_of(size_t n, F f) {
    Gf2Matrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        Gf2Vec col = f(Gf2Vec::unit(n, i));
        for (size_t r = 0; r < n; r++) {
            if (col.get(r)) {
                m.set(r, i, true);
            }
        }
    }
    return m;
}

}  // namespace

std::string_view backend_name(Backend b) {
    return b == Backend::kStatevector ? "statevector" : "wiesner";
}

std::string_view party_name(Party p) {
    switch (p) {
    case Party::kAlice:
        return "alice";
    case Party::kBob:
        return "bob";
    case Party::kCharlie:
        return "charlie";
    default:
        return "none";
    }
}

QuantumReg QuantumReg::from_statevector(StateVector sv, Party owner) {
    QuantumReg r;
    r.backend_ = Backend::kStatevector;
    r.owner_.assign(sv.num_qubits(), owner);
    r.sv_ = std::move(sv);
    return r;
}

QuantumReg QuantumReg::from_wiesner(WiesnerRecord w, Party owner) {
    if (w.x.size() != w.theta.size()) {
        throw std::invalid_argument("WiesnerRecord: x and theta lengths differ");
    }
    QuantumReg r;
    r.backend_ = Backend::kWiesner;
    r.owner_.assign(w.x.size(), owner);
    r.w_ = std::move(w);
    return r;
}

StateVector &QuantumReg::sv() {
    if (!sv_) {
        throw std::logic_error("register is not on the statevector backend");
    }
    return *sv_;
}

const StateVector &QuantumReg::sv() const {
    if (!sv_) {
        throw std::logic_error("register is not on the statevector backend");
    }
    return *sv_;
}

WiesnerRecord &QuantumReg::wiesner() {
    if (backend_ != Backend::kWiesner) {
        throw std::logic_error("register is not on the wiesner backend");
    }
    return w_;
}

const WiesnerRecord &QuantumReg::wiesner() const {
    if (backend_ != Backend::kWiesner) {
        throw std::logic_error("register is not on the wiesner backend");
    }
    return w_;
}

void QuantumReg::assign(std::span<const size_t> qubits, Party p) {
    for (size_t q : qubits) {
        owner_.at(q) = p;
    }
}

void QuantumReg::assign_all(Party p) { owner_.assign(owner_.size(), p); }

std::vector<size_t> QuantumReg::qubits_of(Party p) const {
    std::vector<size_t> out;
    for (size_t q = 0; q < owner_.size(); q++) {
        if (owner_[q] == p) {
            out.push_back(q);
        }
    }
    return out;
}

std::vector<size_t> QuantumReg::append_ancillas(size_t k, Party owner) {
    size_t first = owner_.size();
    if (backend_ == Backend::kStatevector) {
        sv_->append_qubits(k);
    } else {
        w_.x = w_.x.concat(Gf2Vec(k));
        w_.theta = w_.theta.concat(Gf2Vec(k));
    }
    std::vector<size_t> added;
    for (size_t i = 0; i < k; i++) {
        owner_.push_back(owner);
        added.push_back(first + i);
    }
    return added;
}

StateVector coset_state_vector(const CosetDescriptor &d) {
    check_descriptor(d);
    const size_t n = d.a.ambient();
    StateVector sv(n);
    sv.amps()[0] = 0;
    Gf2Vec shift = d.a.coset_rep(d.t);
    Gf2Vec phase = d.a.complement().coset_rep(d.tp);
    double amp = std::pow(2.0, -static_cast<double>(d.a.dim()) / 2);
    for (const Gf2Vec &u : d.a.elements()) {
        double sign = u.dot(phase) ? -1.0 : 1.0;
        sv.amps()[(u ^ shift).to_uint()] = sign * amp;
    }
    return sv;
}

QuantumReg prepare_coset_state(const CosetDescriptor &d, Backend backend) {
    check_descriptor(d);
    if (backend == Backend::kStatevector) {
        return QuantumReg::from_statevector(coset_state_vector(d));
    }
    if (!d.a.is_register()) {
        throw std::invalid_argument("wiesner backend requires a register subspace");
    }
    WiesnerRecord w;
    w.theta = d.a.indicator();
    w.x = d.a.coset_rep(d.t) ^ d.a.complement().coset_rep(d.tp);
    return QuantumReg::from_wiesner(std::move(w));
}

std::pair<Gf2Vec, Gf2Vec> measure_coset_basis(QuantumReg &reg, std::span<const size_t> qubits,
                                              const Gf2Subspace &a, RandomSource &rng) {
    const size_t n = a.ambient();
    const size_t k = a.dim();
    if (qubits.size() != n) {
        throw std::invalid_argument("measure_coset_basis: qubit count does not match subspace");
    }
    const Gf2Subspace perp = a.complement();
    if (reg.backend() == Backend::kWiesner) {
        if (!a.is_register()) {
            throw std::invalid_argument("wiesner backend requires a register subspace");
        }
        Gf2Vec xhat = measure_bases(reg, qubits, a.indicator(), rng);
        return {a.solve_coset_membership(xhat).t, perp.solve_coset_membership(xhat).t};
    }
    // v = sum_r y_r b_r + s_a  ->  (y, s), then H on the y block turns the
    // phase pattern of s' into the label L(s').
    Gf2Matrix to_labels = matrix_of(n, [&](const Gf2Vec &v) {
        return v.select(a.pivots()).concat(a.solve_coset_membership(v).t);
    });
    StateVector &sv = reg.sv();
    sv.apply_linear(qubits, to_labels);
    for (size_t r = 0; r < k; r++) {
        sv.h(qubits[r]);
    }
    Gf2Vec w = sv.measure(qubits, rng);
    for (size_t r = 0; r < k; r++) {
        sv.h(qubits[r]);
    }
    Gf2Matrix from_labels = matrix_of(n, [&](const Gf2Vec &ys) {
        Gf2Vec y(k);
        Gf2Vec s(n - k);
        for (size_t i = 0; i < k; i++) {
            y.set(i, ys.get(i));
        }
        for (size_t i = k; i < n; i++) {
            s.set(i - k, ys.get(i));
        }
        return a.combine(y) ^ a.coset_rep(s);
    });
    sv.apply_linear(qubits, from_labels);

    Gf2Vec z(k);
    Gf2Vec s(n - k);
    for (size_t i = 0; i < k; i++) {
        z.set(i, w.get(i));
    }
    for (size_t i = k; i < n; i++) {
        s.set(i - k, w.get(i));
    }
    // L(s')_r = b_r . s'_{a^perp}; invertible because n - k = k.
    Gf2Matrix l(k, n - k);
    for (size_t j = 0; j < n - k; j++) {
        Gf2Vec rep = perp.coset_rep(Gf2Vec::unit(n - k, j));
        for (size_t r = 0; r < k; r++) {
            l.set(r, j, a.basis().row(r).dot(rep));
        }
    }
    return {s, solve_square(l, z)};
}

std::pair<Gf2Vec, Gf2Vec> measure_coset_basis(QuantumReg &reg, const Gf2Subspace &a,
                                              RandomSource &rng) {
    std::vector<size_t> q = iota(a.ambient());
    return measure_coset_basis(reg, q, a, rng);
}

std::pair<Gf2Vec, Gf2Vec> measure_coset_basis_reference(const StateVector &psi,
                                                         const Gf2Subspace &a, RandomSource &rng) {
    const size_t n = a.ambient();
    const size_t k = a.dim();
    if (psi.num_qubits() != n || n > 12) {
        throw std::invalid_argument("measure_coset_basis_reference: unsupported size");
    }
    std::vector<double> p;
    std::vector<std::pair<Gf2Vec, Gf2Vec>> labels;
    for (uint64_t s = 0; s < (uint64_t{1} << (n - k)); s++) {
        for (uint64_t sp = 0; sp < (uint64_t{1} << k); sp++) {
            CosetDescriptor d{a, Gf2Vec::from_uint(n - k, s), Gf2Vec::from_uint(k, sp)};
            double pr = std::norm(coset_state_vector(d).inner(psi));
            p.push_back(pr < 1e-13 ? 0.0 : pr);
            labels.emplace_back(d.t, d.tp);
        }
    }
    double total = 0;
    for (double v : p) {
        total += v;
    }
    for (double &v : p) {
        v /= total;
    }
    return labels[rng.pick(p)];
}

Gf2Vec measure_bases(QuantumReg &reg, std::span<const size_t> qubits, const Gf2Vec &theta,
                     RandomSource &rng) {
    if (theta.size() != qubits.size()) {
        throw std::invalid_argument("measure_bases: basis string length mismatch");
    }
    if (reg.backend() == Backend::kWiesner) {
        WiesnerRecord &w = reg.wiesner();
        Gf2Vec out(qubits.size());
        for (size_t i = 0; i < qubits.size(); i++) {
            size_t q = qubits[i];
            if (q >= w.x.size()) {
                throw std::out_of_range("measure_bases: qubit out of range");
            }
            bool bit = w.theta.get(q) == theta.get(i) ? w.x.get(q) : rng.coin();
            w.theta.set(q, theta.get(i));
            w.x.set(q, bit);
            out.set(i, bit);
        }
        return out;
    }
    StateVector &sv = reg.sv();
    for (size_t i = 0; i < qubits.size(); i++) {
        if (theta.get(i)) {
            sv.h(qubits[i]);
        }
    }
    Gf2Vec out = sv.measure(qubits, rng);
    for (size_t i = 0; i < qubits.size(); i++) {
        if (theta.get(i)) {
            sv.h(qubits[i]);
        }
    }
    return out;
}

void apply_pauli_noise(QuantumReg &reg, double dx, double dz, RandomSource &rng) {
    if (!(dx >= 0 && dx <= 1 && dz >= 0 && dz <= 1)) {
        throw std::invalid_argument("apply_pauli_noise: probabilities must lie in [0, 1]");
    }
    if (dx == 0 && dz == 0) {
        return;
    }
    for (size_t q = 0; q < reg.num_qubits(); q++) {
        bool fx = rng.bernoulli(dx);
        bool fz = rng.bernoulli(dz);
        if (reg.backend() == Backend::kWiesner) {
            WiesnerRecord &w = reg.wiesner();
            // X acts on computational-basis qubits, Z on Hadamard-basis ones.
            if ((fx && !w.theta.get(q)) != (fz && w.theta.get(q))) {
                w.x.flip(q);
            }
        } else {
            if (fx) {
                reg.sv().x(q);
            }
            if (fz) {
                reg.sv().z(q);
            }
        }
    }
}

AdversaryChannel &AdversaryChannel::append_ancillas(size_t k) {
    actions.emplace_back(AppendAncillas{k});
    return *this;
}

AdversaryChannel &AdversaryChannel::apply(std::vector<size_t> qubits, Eigen::MatrixXcd u) {
    actions.emplace_back(ApplyUnitary{std::move(qubits), std::move(u)});
    return *this;
}

AdversaryChannel &AdversaryChannel::cnot(size_t control, size_t target) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
    u(0, 0) = 1;
    u(1, 1) = 1;
    u(2, 3) = 1;
    u(3, 2) = 1;
    return apply({control, target}, u);
}

AdversaryChannel &AdversaryChannel::measure(std::vector<size_t> qubits) {
    actions.emplace_back(MeasureQubits{std::move(qubits)});
    return *this;
}

AdversaryChannel &AdversaryChannel::assign(std::vector<size_t> qubits, Party p) {
    actions.emplace_back(AssignQubits{std::move(qubits), p});
    return *this;
}

std::vector<Gf2Vec> apply_adversary(QuantumReg &reg, const AdversaryChannel &ch,
                                    RandomSource &rng) {
    std::vector<Gf2Vec> log;
    for (const auto &action : ch.actions) {
        if (const auto *anc = std::get_if<AppendAncillas>(&action)) {
            reg.append_ancillas(anc->k, Party::kNone);
        } else if (const auto *u = std::get_if<ApplyUnitary>(&action)) {
            const Eigen::MatrixXcd &m = u->u;
            if (m.rows() != m.cols() ||
                !(m.adjoint() * m).isApprox(Eigen::MatrixXcd::Identity(m.rows(), m.cols()), 1e-10)) {
                throw std::invalid_argument("apply_adversary: matrix is not unitary");
            }
            reg.sv().apply_unitary(u->qubits, m);
        } else if (const auto *meas = std::get_if<MeasureQubits>(&action)) {
            log.push_back(measure_bases(reg, meas->qubits, Gf2Vec(meas->qubits.size()), rng));
        } else if (const auto *as = std::get_if<AssignQubits>(&action)) {
            reg.assign(as->qubits, as->party);
        }
    }
    if (!reg.qubits_of(Party::kNone).empty()) {
        throw std::invalid_argument("apply_adversary: some qubits are not assigned to a party");
    }
    return log;
}

double coset_overlap(const CosetDescriptor &d, const Gf2Subspace &b, const Gf2Vec &u) {
    check_descriptor(d);
    const size_t n = d.a.ambient();
    if (b.ambient() != n || b.dim() * 2 != n || d.a.dim() * 2 != n) {
        throw std::invalid_argument("coset_overlap: subspaces must have dimension n/2");
    }
    Gf2Vec shift = d.a.coset_rep(d.t);
    size_t hits = 0;
    for (const Gf2Vec &v : d.a.elements()) {
        if (b.solve_coset_membership(v ^ shift).t == u) {
            hits++;
        }
    }
    return static_cast<double>(hits) / std::pow(2.0, static_cast<double>(n) / 2);
}

double coset_projector_expectation(const StateVector &psi, const Gf2Subspace &b, const Gf2Vec &u) {
    const size_t n = b.ambient();
    if (psi.num_qubits() != n) {
        throw std::invalid_argument("coset_projector_expectation: size mismatch");
    }
    Gf2Vec shift = b.coset_rep(u);
    double s = 0;
    for (const Gf2Vec &v : b.elements()) {
        s += std::norm(psi.amp((v ^ shift).to_uint()));
    }
    return s;
}

}  // namespace cosetmoe
