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

#include "cosetmoe/proto.h"

#include <cmath>
#include <map>
#include <stdexcept>

#include "cosetmoe/info.h"
#include "cosetmoe/moe.h"
#include "cosetmoe/rng.h"
#include "cosetmoe/trials.h"

namespace cosetmoe {

namespace {

constexpr uint64_t kEveGuessStream = 0x5ec12e7ULL;
constexpr double kTol = 1e-12;

nlohmann::json hex(const std::optional<Gf2Vec> &v) {
    return v ? nlohmann::json(v->to_hex()) : nlohmann::json(nullptr);
}

Gf2Vec overwrite(Gf2Vec v, const IndexSubset &j, const Gf2Vec &bits) {
    for (size_t i = 0; i < j.size(); i++) {
        v.set(j.indices[i], bits.get(i));
    }
    return v;
}

std::vector<size_t> complement_indices(const IndexSubset &s) {
    std::vector<size_t> out;
    for (size_t i = 0; i < s.ambient; i++) {
        if (!s.contains(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::unique_ptr<Strategy> make_adversary(const std::optional<StrategySpec> &spec) {
    return spec ? builtin_strategy(*spec) : nullptr;
}

nlohmann::json rate_json(uint64_t k, uint64_t trials) {
    Interval ci = wilson_interval(k, trials);
    double p = trials == 0 ? 0 : static_cast<double>(k) / static_cast<double>(trials);
    return {{"count", k}, {"rate", p}, {"ci95", {ci.lo, ci.hi}}};
}

double sigma_of(uint64_t k, uint64_t trials) {
    if (trials == 0) {
        return 0;
    }
    double p = static_cast<double>(k) / static_cast<double>(trials);
    return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

void accumulate_projector(Matrix &rho, const StateVector &psi, double w) {
    const size_t d = psi.dim();
    for (size_t i = 0; i < d; i++) {
        if (psi.amp(i) == Amp(0)) {
            continue;
        }
        for (size_t k = 0; k < d; k++) {
            rho(i, k) += w * psi.amp(i) * std::conj(psi.amp(k));
        }
    }
}

}  // namespace

nlohmann::json Message::to_json() const {
    nlohmann::json j{{"idx", idx}, {"from", from}, {"to", to}, {"label", label}};
    if (payload_hex) {
        j["payload_hex"] = *payload_hex;
    }
    if (!payload.is_null()) {
        j["payload"] = payload;
    }
    if (qreg_id) {
        j["qreg_id"] = *qreg_id;
    }
    j["eve_visible"] = eve_visible;
    return j;
}

Message &Transcript::push(const std::string &from, const std::string &to,
                          const std::string &label) {
    Message m;
    m.idx = messages_.size();
    m.from = from;
    m.to = to;
    m.label = label;
    messages_.push_back(std::move(m));
    return messages_.back();
}

void Transcript::send(const std::string &from, const std::string &to, const std::string &label,
                      const Gf2Vec &payload) {
    push(from, to, label).payload_hex = payload.to_hex();
}

void Transcript::send_json(const std::string &from, const std::string &to,
                           const std::string &label, nlohmann::json payload) {
    push(from, to, label).payload = std::move(payload);
}

void Transcript::send_quantum(const std::string &from, const std::string &to,
                              const std::string &label, const std::string &qreg_id) {
    push(from, to, label).qreg_id = qreg_id;
}

const Message *Transcript::find(const std::string &label) const {
    for (const Message &m : messages_) {
        if (m.label == label) {
            return &m;
        }
    }
    return nullptr;
}

std::string Transcript::to_jsonl() const {
    std::string out;
    for (const Message &m : messages_) {
        out += m.to_json().dump();
        out += '\n';
    }
    return out;
}

std::string Transcript::eve_view() const {
    std::string out;
    for (const Message &m : messages_) {
        if (!m.eve_visible || m.qreg_id) {
            continue;
        }
        out += m.label;
        out += '=';
        out += m.payload_hex ? *m.payload_hex : m.payload.dump();
        out += ';';
    }
    return out;
}

QuantumChannel::QuantumChannel(QuantumReg reg, const Strategy *adversary, RandomSource &rng)
    : adversary_(adversary) {
    if (adversary_) {
        split_ = adversary_->split(std::move(reg), rng);
    } else {
        reg.assign_all(Party::kBob);
        honest_ = std::move(reg);
    }
}

CosetGuess QuantumChannel::receiver_measure(const Gf2Subspace &a, RandomSource &rng) {
    if (adversary_) {
        return adversary_->bob_answer(a, *split_, rng);
    }
    auto [t, tp] = measure_coset_basis(*honest_, a, rng);
    return {std::move(t), std::move(tp)};
}

std::optional<Gf2Vec> QuantumChannel::eve_guess(const Gf2Subspace &a, const Gf2Vec &leak,
                                                RandomSource &rng) {
    if (!adversary_) {
        return std::nullopt;
    }
    return adversary_->charlie_answer(a, leak, *split_, rng);
}

Backend protocol_backend(size_t n, SubspaceFamily family, const Strategy *adversary) {
    if (family == SubspaceFamily::kRegister && !(adversary && adversary->needs_statevector())) {
        return Backend::kWiesner;
    }
    size_t need = adversary ? adversary->qubits_needed(n) : n;
    if (need > StateVector::kMaxQubits) {
        throw std::invalid_argument("statevector backend limited to " +
                                    std::to_string(StateVector::kMaxQubits) + " qubits, need " +
                                    std::to_string(need));
    }
    return Backend::kStatevector;
}

MessageSource MessageSource::uniform(size_t ell) {
    if (ell == 0 || ell > 16) {
        throw std::invalid_argument("message length must be in [1, 16]");
    }
    MessageSource s;
    s.ell = ell;
    s.p.assign(size_t{1} << ell, 1.0 / static_cast<double>(size_t{1} << ell));
    return s;
}

MessageSource MessageSource::skewed(size_t ell, double p0) {
    MessageSource s = uniform(ell);
    if (!(p0 >= 0 && p0 <= 1)) {
        throw std::invalid_argument("message probability must lie in [0, 1]");
    }
    const double rest = (1 - p0) / static_cast<double>(s.p.size() - 1);
    for (size_t i = 1; i < s.p.size(); i++) {
        s.p[i] = rest;
    }
    s.p[0] = p0;
    return s;
}

Gf2Vec MessageSource::sample(RandomSource &rng) const {
    return Gf2Vec::from_uint(ell, rng.pick(p));
}

double MessageSource::min_entropy() const {
    return -std::log2(*std::max_element(p.begin(), p.end()));
}

nlohmann::json MessageSource::to_json() const { return {{"ell", ell}, {"p", p}}; }

// ---- encryption with interactive decryption ----

void QecmParams::validate() const {
    if (n == 0 || n % 2 != 0) {
        throw std::invalid_argument("qecm: n must be a positive even integer");
    }
    if (ell == 0 || ell > n / 2) {
        throw std::invalid_argument("qecm: extractor output length must lie in [1, n/2]");
    }
}

nlohmann::json QecmParams::to_json() const {
    return {{"n", n},
            {"ell", ell},
            {"family", std::string(family_name(family))},
            {"extractor", extractor().to_json()}};
}

QecmKey qecm_keygen(const QecmParams &p, RandomSource &rng) {
    QecmKey k;
    k.a = sample_subspace(p.n, p.family, rng);
    k.t = random_vec(rng, p.n / 2);
    k.tp = random_vec(rng, p.n / 2);
    k.r = random_vec(rng, p.extractor().seed_length());
    k.h = random_vec(rng, p.ell);
    return k;
}

nlohmann::json QecmOutcome::to_json() const {
    return {{"m", m.to_hex()},
            {"m_hat", m_hat_present ? nlohmann::json(m_hat.to_hex()) : nlohmann::json(nullptr)},
            {"m_check", hex(m_check)},
            {"f", f ? 1 : 0}};
}

QecmOutcome run_qecm_id(const QecmParams &p, const Strategy *adversary, const Gf2Vec &m,
                        RandomSource &rng) {
    p.validate();
    if (m.size() != p.ell) {
        throw std::invalid_argument("qecm: message length differs from the extractor output");
    }
    const ToeplitzExtractor ext = p.extractor();
    QecmKey key = qecm_keygen(p, rng);
    QecmOutcome out;
    out.m = m;
    Transcript &tr = out.transcript;

    Gf2Vec mbar = m ^ ext.extract(key.tp, key.r) ^ key.h;
    tr.send("alice", "bob", "ciphertext", mbar);
    tr.send_quantum("alice", "bob", "coset_state", "V");
    Backend backend = protocol_backend(p.n, p.family, adversary);
    QuantumChannel channel(prepare_coset_state({key.a, key.t, key.tp}, backend), adversary, rng);

    tr.send_json("alice", "bob", "subspace", key.a.to_json());
    CosetGuess bob = channel.receiver_measure(key.a, rng);
    tr.send("bob", "alice", "t_hat", bob.t);
    out.f = bob.t == key.t;
    tr.send_json("alice", "bob", "flag", out.f ? 1 : 0);
    if (out.f) {
        tr.send("alice", "bob", "r", key.r);
        tr.send("alice", "bob", "h", key.h);
        out.m_hat = mbar ^ ext.extract(bob.tp, key.r) ^ key.h;
        out.m_hat_present = true;
    } else {
        out.m_hat = random_vec(rng, p.ell);
    }

    if (auto tp_eve = channel.eve_guess(key.a, bob.t, rng)) {
        out.m_check = out.f ? mbar ^ ext.extract(*tp_eve, key.r) ^ key.h : random_vec(rng, p.ell);
    }
    return out;
}

QecmExperimentKind parse_qecm_experiment(const std::string &name) {
    if (name == "correctness") {
        return QecmExperimentKind::kCorrectness;
    }
    if (name == "indistinguishable") {
        return QecmExperimentKind::kIndistinguishable;
    }
    if (name == "uncloneable") {
        return QecmExperimentKind::kUncloneable;
    }
    if (name == "uncloneable_indistinguishable") {
        return QecmExperimentKind::kUncloneableIndist;
    }
    throw std::invalid_argument("unknown qecm experiment: " + name);
}

std::string qecm_experiment_name(QecmExperimentKind k) {
    switch (k) {
        case QecmExperimentKind::kCorrectness:
            return "correctness";
        case QecmExperimentKind::kIndistinguishable:
            return "indistinguishable";
        case QecmExperimentKind::kUncloneable:
            return "uncloneable";
        case QecmExperimentKind::kUncloneableIndist:
            return "uncloneable_indistinguishable";
    }
    return "";
}

double qecm_indistinguishability_exact(const QecmParams &p, const MessageSource &source) {
    p.validate();
    if (p.n > 8 || p.ell > 3) {
        throw std::invalid_argument("exact indistinguishability needs n <= 8 and ell <= 3");
    }
    if (source.ell != p.ell) {
        throw std::invalid_argument("message source length differs from ell");
    }
    const size_t half = p.n / 2;
    const size_t nm = size_t{1} << p.ell;
    const ToeplitzExtractor ext = p.extractor();
    const size_t dim = size_t{1} << p.n;
    // rho[y][mbar]: averaged coset state next to ciphertext mbar.
    std::vector<std::vector<Matrix>> rho(2, std::vector<Matrix>(nm, Matrix::Zero(dim, dim)));
    std::vector<Gf2Subspace> subspaces = enumerate_subspaces(p.n, half, p.family);
    const uint64_t nseed = uint64_t{1} << ext.seed_length();
    const double w_key = 1.0 / (static_cast<double>(subspaces.size()) *
                                std::exp2(2.0 * static_cast<double>(half)) *
                                static_cast<double>(nseed) * static_cast<double>(nm));
    for (const Gf2Subspace &a : subspaces) {
        for (uint64_t t = 0; t < (uint64_t{1} << half); t++) {
            for (uint64_t tp = 0; tp < (uint64_t{1} << half); tp++) {
                CosetDescriptor d{a, Gf2Vec::from_uint(half, t), Gf2Vec::from_uint(half, tp)};
                StateVector psi = coset_state_vector(d);
                std::vector<std::vector<double>> weight(2, std::vector<double>(nm, 0.0));
                for (uint64_t r = 0; r < nseed; r++) {
                    uint64_t pad0 =
                        ext.extract(d.tp, Gf2Vec::from_uint(ext.seed_length(), r)).to_uint();
                    for (uint64_t h = 0; h < nm; h++) {
                        uint64_t pad = pad0 ^ h;
                        for (uint64_t m = 0; m < nm; m++) {
                            weight[0][m ^ pad] += w_key * source.p[m];
                        }
                        weight[1][pad] += w_key;
                    }
                }
                for (size_t y = 0; y < 2; y++) {
                    for (size_t c = 0; c < nm; c++) {
                        if (weight[y][c] != 0) {
                            accumulate_projector(rho[y][c], psi, weight[y][c]);
                        }
                    }
                }
            }
        }
    }
    double dist = 0;
    for (size_t c = 0; c < nm; c++) {
        dist += trace_distance(rho[0][c], rho[1][c]);
    }
    return dist;
}

nlohmann::json qecm_experiment(QecmExperimentKind kind, const QecmExperimentConfig &cfg) {
    const QecmParams &p = cfg.params;
    p.validate();
    if (cfg.source.ell != p.ell) {
        throw std::invalid_argument("message source length differs from ell");
    }
    nlohmann::json rep;
    rep["experiment"] = qecm_experiment_name(kind);
    rep["params"] = p.to_json();
    rep["adversary"] = cfg.adversary ? nlohmann::json(cfg.adversary->to_string()) : nullptr;
    rep["message_source"] = cfg.source.to_json();

    if (kind == QecmExperimentKind::kIndistinguishable) {
        double dist = qecm_indistinguishability_exact(p, cfg.source);
        rep["trace_distance"] = dist;
        rep["tolerance"] = 1e-9;
        rep["pass"] = dist <= 1e-9;
        return rep;
    }

    auto adversary = make_adversary(cfg.adversary);
    BoundsParams bp;
    bp.n = p.n;
    bp.ell = p.ell;
    bp.kappa = cfg.kappa;
    BoundsReport bounds = protocol_bounds(bp);
    const double nm = static_cast<double>(uint64_t{1} << p.ell);
    const uint64_t trials = cfg.trials;
    rep["trials"] = trials;

    if (kind == QecmExperimentKind::kCorrectness) {
        auto c = count_trials<2>(trials, cfg.threads, [&](uint64_t i, auto &acc) {
            TrialRng rng(cfg.seed, i);
            QecmOutcome o = run_qecm_id(p, adversary.get(), cfg.source.sample(rng), rng);
            acc[0] += o.f;
            acc[1] += o.f && !(o.m_hat == o.m);
        });
        rep["accept"] = rate_json(c[0], trials);
        rep["disagreement"] = rate_json(c[1], trials);
        rep["pass"] = c[1] == 0 && (adversary || c[0] == trials);
        return rep;
    }

    if (!adversary) {
        throw std::invalid_argument("uncloneability experiments need an adversary");
    }
    if (kind == QecmExperimentKind::kUncloneable) {
        auto c = count_trials<2>(trials, cfg.threads, [&](uint64_t i, auto &acc) {
            TrialRng rng(cfg.seed, i);
            QecmOutcome o = run_qecm_id(p, adversary.get(), cfg.source.sample(rng), rng);
            acc[0] += o.f;
            acc[1] += o.f && o.m_check && *o.m_check == o.m;
        });
        double pf = static_cast<double>(c[0]) / static_cast<double>(trials);
        double guess = std::exp2(-cfg.source.min_entropy());
        double eps2 = *bounds.qecm_uncloneable_bound;
        double bound = guess * pf + nm * guess * eps2;
        double rate = static_cast<double>(c[1]) / static_cast<double>(trials);
        rep["accept"] = rate_json(c[0], trials);
        rep["win"] = rate_json(c[1], trials);
        rep["epsilon2"] = eps2;
        rep["bound"] = bound;
        rep["pass"] = rate <= bound + 3 * sigma_of(c[1], trials);
        return rep;
    }

    // Eve guesses whether the real message or the fixed message 0 was sent.
    const Gf2Vec m0(p.ell);
    auto c = count_trials<2>(trials, cfg.threads, [&](uint64_t i, auto &acc) {
        TrialRng rng(cfg.seed, i);
        bool y = rng.coin();
        Gf2Vec m = y ? m0 : cfg.source.sample(rng);
        QecmOutcome o = run_qecm_id(p, adversary.get(), m, rng);
        bool guess = o.m_check && *o.m_check == m0;
        acc[0] += o.f;
        acc[1] += o.f && guess == y;
    });
    double pf = static_cast<double>(c[0]) / static_cast<double>(trials);
    double eps3 = *bounds.qecm_uncloneable_indistinguishable_bound;
    double bound = pf / 2 + eps3 / 2;
    double rate = static_cast<double>(c[1]) / static_cast<double>(trials);
    rep["accept"] = rate_json(c[0], trials);
    rep["win"] = rate_json(c[1], trials);
    rep["epsilon3"] = eps3;
    rep["bound"] = bound;
    rep["pass"] = rate <= bound + 3 * sigma_of(c[1], trials);
    return rep;
}

// ---- bit-string commitment ----

void UrbcParams::validate(const LinearCode &code) const {
    if (n == 0 || n % 2 != 0) {
        throw std::invalid_argument("urbc: n must be a positive even integer");
    }
    if (code.length() != n / 2) {
        throw std::invalid_argument("urbc: code length must equal n/2");
    }
    if (ell == 0 || ell > n / 2) {
        throw std::invalid_argument("urbc: extractor output length must lie in [1, n/2]");
    }
    if (reveal_size > n / 2) {
        throw std::invalid_argument("urbc: revealed subset larger than n/2");
    }
}

nlohmann::json UrbcParams::to_json() const {
    return {{"n", n},
            {"ell", ell},
            {"code", code.to_json()},
            {"eta", eta()},
            {"reveal_size", reveal_size},
            {"scheme", std::string(commitment_kind_name(scheme))},
            {"family", std::string(family_name(family))},
            {"binding_attack", binding_attack},
            {"extractor", ToeplitzExtractor(n / 2, ell).to_json()}};
}

nlohmann::json UrbcOutcome::to_json() const {
    return {{"y", y.to_hex()},       {"y_claimed", hex(y_claimed)}, {"y_hat", hex(y_hat)},
            {"g", g ? 1 : 0},        {"f", f ? 1 : 0},              {"eve_guess", hex(eve_guess)}};
}

UrbcOutcome run_urbc(const UrbcParams &p, const LinearCode &code, const Strategy *adversary,
                     RandomSource &rng) {
    p.validate(code);
    const size_t half = p.n / 2;
    const ToeplitzExtractor ext(half, p.ell);
    UrbcOutcome out;
    Transcript &tr = out.transcript;

    // Commit.
    Gf2Subspace a = sample_subspace(p.n, p.family, rng);
    Gf2Vec t = random_vec(rng, half);
    Gf2Vec tp = random_vec(rng, half);
    Gf2Vec r = random_vec(rng, ext.seed_length());
    Gf2Vec h = random_vec(rng, p.ell);
    Gf2Vec committed = r.concat(h);
    Commitment c = base_commit(p.scheme, committed, rng);
    tr.send_json("alice", "bob", "commit",
                 p.scheme == CommitmentKind::kIdeal ? nlohmann::json("sealed")
                                                    : nlohmann::json(c.token.digest()));
    tr.send_quantum("alice", "bob", "coset_state", "V");
    out.y = ext.extract(tp, r) ^ h;
    Backend backend = protocol_backend(p.n, p.family, adversary);
    QuantumChannel channel(prepare_coset_state({a, t, tp}, backend), adversary, rng);

    // Check.
    tr.send_json("alice", "bob", "subspace", a.to_json());
    CosetGuess bob = channel.receiver_measure(a, rng);
    tr.send("bob", "alice", "t_hat", bob.t);
    out.g = bob.t == t;
    tr.send_json("alice", "bob", "check", out.g ? 1 : 0);
    if (!out.g) {
        return out;
    }

    // Reveal, Alice first.
    Gf2Vec opened = tp;
    if (p.binding_attack) {
        opened ^= code.min_weight_codeword();
        out.y_claimed = ext.extract(opened, r) ^ h;
    }
    Gf2Vec syn = code.syndrome(opened);
    tr.send("alice", "bob", "syndrome", syn);
    IndexSubset j = sample_subset(half, p.reveal_size, rng);
    tr.send_json("bob", "alice", "subset", j.indices);
    Gf2Vec bits = opened.select(j.indices);
    tr.send("alice", "bob", "revealed_bits", bits);
    tr.send("alice", "bob", "opening", c.opening.value);
    if (p.scheme == CommitmentKind::kHash) {
        Gf2Vec nonce(256);
        for (size_t i = 0; i < 256; i++) {
            nonce.set(i, (c.opening.nonce[i / 8] >> (7 - i % 8)) & 1);
        }
        tr.send("alice", "bob", "nonce", nonce);
    }
    bool opening_ok = base_verify(c.token, c.opening.value, c.opening);
    out.f = code.syndrome(bob.tp) == syn && bob.tp.select(j.indices) == bits && opening_ok;
    tr.send_json("bob", "alice", "accept", out.f ? 1 : 0);
    if (out.f) {
        out.y_hat = ext.extract(bob.tp, r) ^ h;
    }

    if (auto tp_eve = channel.eve_guess(a, bob.t, rng)) {
        Gf2Vec g = code.has_leaders() ? code.align_correction(*tp_eve, syn) : *tp_eve;
        out.eve_guess = ext.extract(overwrite(g, j, bits), r) ^ h;
    }
    return out;
}

double urbc_hiding_exact(const UrbcParams &p) {
    if (p.n > 6 || p.ell > 2 || p.n % 2 != 0 || p.ell == 0 || p.ell > p.n / 2) {
        throw std::invalid_argument("exact hiding needs even n <= 6 and 1 <= ell <= min(2, n/2)");
    }
    const size_t half = p.n / 2;
    const size_t ny = size_t{1} << p.ell;
    const ToeplitzExtractor ext(half, p.ell);
    const size_t dim = size_t{1} << p.n;
    const uint64_t nseed = uint64_t{1} << ext.seed_length();
    std::vector<Gf2Subspace> subspaces = enumerate_subspaces(p.n, half, p.family);
    const double w = 1.0 / (static_cast<double>(subspaces.size()) *
                            std::exp2(2.0 * static_cast<double>(half)) *
                            static_cast<double>(nseed) * static_cast<double>(ny));
    double dist = 0;
    for (const Gf2Subspace &a : subspaces) {
        std::vector<Matrix> rho(ny, Matrix::Zero(dim, dim));
        for (uint64_t t = 0; t < (uint64_t{1} << half); t++) {
            for (uint64_t tp = 0; tp < (uint64_t{1} << half); tp++) {
                CosetDescriptor d{a, Gf2Vec::from_uint(half, t), Gf2Vec::from_uint(half, tp)};
                StateVector psi = coset_state_vector(d);
                std::vector<double> weight(ny, 0.0);
                for (uint64_t r = 0; r < nseed; r++) {
                    uint64_t e =
                        ext.extract(d.tp, Gf2Vec::from_uint(ext.seed_length(), r)).to_uint();
                    for (uint64_t h = 0; h < ny; h++) {
                        weight[e ^ h] += w;
                    }
                }
                for (size_t y = 0; y < ny; y++) {
                    accumulate_projector(rho[y], psi, weight[y]);
                }
            }
        }
        Matrix view = Matrix::Zero(dim, dim);
        for (const Matrix &m : rho) {
            view += m;
        }
        for (const Matrix &m : rho) {
            dist += 0.5 * trace_norm(m - view / static_cast<double>(ny));
        }
    }
    return dist;
}

// ---- receiver-independent QKD ----

DeviceFault parse_device_fault(const std::string &name) {
    if (name == "none") {
        return DeviceFault::kNone;
    }
    if (name == "codeword_shift") {
        return DeviceFault::kCodewordShift;
    }
    if (name == "flip") {
        return DeviceFault::kFlip;
    }
    throw std::invalid_argument("unknown device fault: " + name);
}

std::string device_fault_name(DeviceFault f) {
    switch (f) {
        case DeviceFault::kNone:
            return "none";
        case DeviceFault::kCodewordShift:
            return "codeword_shift";
        case DeviceFault::kFlip:
            return "flip";
    }
    return "";
}

void QkdParams::validate(const LinearCode &code) const {
    if (n == 0 || n % 2 != 0) {
        throw std::invalid_argument("qkd: n must be a positive even integer");
    }
    if (code.length() != n / 2) {
        throw std::invalid_argument("qkd: code length must equal n/2");
    }
    if (!code.has_leaders()) {
        throw std::invalid_argument("qkd: code has no coset-leader decoder");
    }
    if (ell == 0 || ell > n / 2) {
        throw std::invalid_argument("qkd: extractor output length must lie in [1, n/2]");
    }
    if (reveal_size > n / 2) {
        throw std::invalid_argument("qkd: revealed subset larger than n/2");
    }
    if (!(gamma >= 0 && gamma <= 1)) {
        throw std::invalid_argument("qkd: gamma must lie in [0, 1]");
    }
}

nlohmann::json QkdParams::to_json() const {
    return {{"n", n},
            {"ell", ell},
            {"gamma", gamma},
            {"eta", eta()},
            {"reveal_size", reveal_size},
            {"code", code.to_json()},
            {"family", std::string(family_name(family))},
            {"noise", {{"dx", dx}, {"dz", dz}}},
            {"fault", device_fault_name(fault)},
            {"extractor", ToeplitzExtractor(n / 2, ell).to_json()}};
}

nlohmann::json QkdOutcome::to_json() const {
    return {{"k", hex(k)},
            {"k_hat", hex(k_hat)},
            {"f", f ? 1 : 0},
            {"pe_pass", pe_pass},
            {"ir_pass", ir_pass},
            {"pe_distance", pe_distance},
            {"ir_mismatches", ir_mismatches},
            {"eve_guess", hex(eve_guess)}};
}

QkdOutcome run_riqkd(const QkdParams &p, const LinearCode &code, const Strategy *adversary,
                     RandomSource &rng) {
    p.validate(code);
    const size_t half = p.n / 2;
    const ToeplitzExtractor ext(half, p.ell);
    QkdOutcome out;
    Transcript &tr = out.transcript;

    Gf2Subspace a = sample_subspace(p.n, p.family, rng);
    out.t = random_vec(rng, half);
    out.tp = random_vec(rng, half);
    Backend backend = protocol_backend(p.n, p.family, adversary);
    QuantumReg reg = prepare_coset_state({a, out.t, out.tp}, backend);
    apply_pauli_noise(reg, p.dx, p.dz, rng);
    tr.send_quantum("alice", "bob", "coset_state", "V");
    QuantumChannel channel(std::move(reg), adversary, rng);

    tr.send_json("alice", "bob", "subspace", a.to_json());
    CosetGuess dev = channel.receiver_measure(a, rng);
    if (p.fault == DeviceFault::kCodewordShift) {
        dev.tp ^= code.min_weight_codeword();
    } else if (p.fault == DeviceFault::kFlip) {
        dev.tp.flip(rng.below(half));
    }
    out.t_hat = dev.t;
    out.tp_hat = dev.tp;

    // Parameter estimation.
    tr.send("bob", "alice", "t_hat", dev.t);
    out.pe_distance = hamming(dev.t, out.t);
    out.pe_pass = static_cast<double>(out.pe_distance) <=
                  p.gamma * static_cast<double>(p.n) / 2 + kTol;
    if (!out.pe_pass) {
        tr.send_json("alice", "bob", "abort", "parameter_estimation");
        return out;
    }

    // Error correction and information reconciliation.
    Gf2Vec syn = code.syndrome(dev.tp);
    tr.send("bob", "alice", "syndrome", syn);
    out.tp_bar = code.align_correction(out.tp, syn);
    out.j = sample_subset(half, p.reveal_size, rng);
    tr.send_json("alice", "bob", "subset", out.j.indices);
    Gf2Vec bits = dev.tp.select(out.j.indices);
    tr.send("bob", "alice", "revealed_bits", bits);
    out.ir_mismatches = hamming(bits, out.tp_bar->select(out.j.indices));
    out.ir_pass = out.ir_mismatches == 0;
    if (!out.ir_pass) {
        tr.send_json("alice", "bob", "abort", "information_reconciliation");
        return out;
    }

    // Privacy amplification.
    Gf2Vec r = random_vec(rng, ext.seed_length());
    tr.send("alice", "bob", "seed", r);
    out.f = true;
    out.k = ext.extract(*out.tp_bar, r);
    out.k_hat = ext.extract(dev.tp, r);

    if (auto tp_eve = channel.eve_guess(a, dev.t, rng)) {
        Gf2Vec g = overwrite(code.align_correction(*tp_eve, syn), out.j, bits);
        out.eve_guess = ext.extract(g, r);
    }
    return out;
}

// ---- BB84-style protocol ----

void TfkwParams::validate(const LinearCode &code) const {
    if (n == 0 || test_count > n) {
        throw std::invalid_argument("tfkw: test subset larger than n");
    }
    if (code.length() != n - test_count) {
        throw std::invalid_argument("tfkw: code length must equal n - test_count");
    }
    if (!code.has_leaders()) {
        throw std::invalid_argument("tfkw: code has no coset-leader decoder");
    }
    if (ell == 0 || ell > code.length()) {
        throw std::invalid_argument("tfkw: key length must lie in [1, n - test_count]");
    }
}

nlohmann::json TfkwParams::to_json() const {
    return {{"n", n},
            {"test_count", test_count},
            {"gamma", gamma},
            {"ell", ell},
            {"code", code.to_json()},
            {"noise", {{"dx", dx}, {"dz", dz}}},
            {"eve", eve == TfkwEve::kNone ? "none" : "substitute_zero"},
            {"device_check", device_check}};
}

QkdOutcome run_tfkw(const TfkwParams &p, const LinearCode &code, RandomSource &rng) {
    p.validate(code);
    const ToeplitzExtractor ext(code.length(), p.ell);
    const bool attacked = p.eve == TfkwEve::kSubstituteZero;
    const bool device_honest = !attacked || p.device_check;
    QkdOutcome out;
    Transcript &tr = out.transcript;
    std::vector<size_t> all(p.n);
    for (size_t i = 0; i < p.n; i++) {
        all[i] = i;
    }

    Gf2Vec x = random_vec(rng, p.n);
    Gf2Vec theta = random_vec(rng, p.n);
    QuantumReg sent = QuantumReg::from_wiesner({x, theta}, Party::kAlice);
    apply_pauli_noise(sent, p.dx, p.dz, rng);
    tr.send_quantum("alice", "bob", "bb84_state", "Q");

    // Eve fixes the seed of the device she controls.
    uint64_t device_seed = attacked ? rng.bits(64) : 0;
    auto zero_state_readout = [&](uint64_t s) {
        TrialRng device_rng(s, 0);
        QuantumReg zero = QuantumReg::from_wiesner({Gf2Vec(p.n), Gf2Vec(p.n)}, Party::kBob);
        return measure_bases(zero, all, theta, device_rng);
    };

    tr.send("alice", "bob", "theta", theta);
    Gf2Vec y;
    std::optional<Gf2Vec> eve_x;
    if (!attacked) {
        y = measure_bases(sent, all, theta, rng);
    } else if (p.device_check) {
        // Held until the bases are public, measured, then resent intact.
        eve_x = measure_bases(sent, all, theta, rng);
        QuantumReg resent = QuantumReg::from_wiesner({*eve_x, theta}, Party::kBob);
        y = measure_bases(resent, all, theta, rng);
    } else {
        y = zero_state_readout(device_seed);
    }
    out.t = x;
    out.t_hat = y;

    IndexSubset test = sample_subset(p.n, p.test_count, rng);
    out.j = test;
    tr.send_json("alice", "bob", "test_subset", test.indices);
    tr.send("alice", "bob", "test_bits", x.select(test.indices));
    out.pe_distance = hamming(x.select(test.indices), y.select(test.indices));
    out.pe_pass = static_cast<double>(out.pe_distance) <=
                  p.gamma * static_cast<double>(p.n) + kTol;
    if (device_honest && !out.pe_pass) {
        tr.send_json("bob", "alice", "abort", "parameter_estimation");
        return out;
    }

    std::vector<size_t> rest = complement_indices(test);
    Gf2Vec xr = x.select(rest);
    Gf2Vec syn = code.syndrome(xr);
    tr.send("alice", "bob", "syndrome", syn);
    Gf2Vec yr = code.align_correction(y.select(rest), syn);
    out.ir_mismatches = hamming(yr, xr);
    out.ir_pass = true;
    Gf2Vec r = random_vec(rng, ext.seed_length());
    tr.send("alice", "bob", "seed", r);
    out.f = true;
    out.tp = xr;
    out.tp_hat = yr;
    out.k = ext.extract(xr, r);
    out.k_hat = ext.extract(yr, r);

    if (attacked) {
        Gf2Vec eve_y = p.device_check ? *eve_x : zero_state_readout(device_seed);
        out.eve_guess = ext.extract(code.align_correction(eve_y.select(rest), syn), r);
    }
    return out;
}

// ---- probes ----

nlohmann::json secrecy_probe(const SecrecyProbeConfig &cfg) {
    const QkdParams &p = cfg.params;
    LinearCode code = LinearCode::make(p.code);
    p.validate(code);
    auto adversary = make_adversary(cfg.eve);

    BoundsParams bp;
    bp.n = p.n;
    bp.s = code.redundancy();
    bp.eta = p.eta();
    bp.gamma = p.gamma;
    bp.ell = p.ell;
    bp.kappa = cfg.kappa;
    BoundsReport bounds = protocol_bounds(bp);
    const double uniform = std::exp2(-static_cast<double>(p.ell));

    nlohmann::json rep;
    rep["params"] = p.to_json();
    rep["eve"] = cfg.eve ? nlohmann::json(cfg.eve->to_string()) : nlohmann::json("none");
    rep["secrecy_bound"] = bounds.secrecy_bound ? nlohmann::json(*bounds.secrecy_bound) : nullptr;
    rep["uniform_guess"] = uniform;

    if (cfg.exact) {
        if (p.n > 6) {
            throw std::invalid_argument("exact secrecy probe needs n <= 6");
        }
        // view -> probability of each key value on accepted runs.
        std::map<std::string, std::vector<double>> table;
        const size_t nk = size_t{1} << p.ell;
        QkdOutcome last;
        double accept = 0;
        EnumeratingSource::enumerate(
            [&](RandomSource &src) { last = run_riqkd(p, code, adversary.get(), src); },
            [&](double prob) {
                if (!last.f) {
                    return;
                }
                accept += prob;
                std::string view = last.transcript.eve_view();
                if (last.eve_guess) {
                    view += "guess=" + last.eve_guess->to_hex();
                }
                auto &row = table[view];
                row.resize(nk, 0.0);
                row[last.k->to_uint()] += prob;
            });
        double dist = 0;
        for (const auto &[view, row] : table) {
            double total = 0;
            for (double v : row) {
                total += v;
            }
            for (double v : row) {
                dist += 0.5 * std::abs(v - total / static_cast<double>(nk));
            }
        }
        rep["mode"] = "exact";
        rep["accept_probability"] = accept;
        rep["views"] = table.size();
        rep["trace_distance"] = dist;
        rep["pass"] = !bounds.secrecy_bound || dist <= *bounds.secrecy_bound + 1e-12;
        return rep;
    }

    auto c = count_trials<2>(cfg.trials, cfg.threads, [&](uint64_t i, auto &acc) {
        TrialRng rng(cfg.seed, i);
        QkdOutcome o = run_riqkd(p, code, adversary.get(), rng);
        if (!o.f) {
            return;
        }
        Gf2Vec guess;
        if (o.eve_guess) {
            guess = *o.eve_guess;
        } else {
            TrialRng blind(cfg.seed ^ kEveGuessStream, i);
            guess = random_vec(blind, p.ell);
        }
        acc[0] += 1;
        acc[1] += guess == *o.k;
    });
    const double trials = static_cast<double>(cfg.trials);
    double pf = static_cast<double>(c[0]) / trials;
    double joint = static_cast<double>(c[1]) / trials;
    double bound = pf * uniform + (bounds.secrecy_bound ? *bounds.secrecy_bound : 1.0);
    rep["mode"] = "monte_carlo";
    rep["trials"] = cfg.trials;
    rep["accept"] = rate_json(c[0], cfg.trials);
    rep["guess_and_accept"] = rate_json(c[1], cfg.trials);
    rep["guess_given_accept"] =
        c[0] == 0 ? nlohmann::json(nullptr)
                  : nlohmann::json(static_cast<double>(c[1]) / static_cast<double>(c[0]));
    rep["bound"] = bound;
    rep["pass"] = joint <= bound + 3 * sigma_of(c[1], cfg.trials);
    return rep;
}

}  // namespace cosetmoe
