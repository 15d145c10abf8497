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

#ifndef COSETMOE_PROTO_H
#define COSETMOE_PROTO_H

#include <optional>
#include <string>
#include <vector>

#include "cosetmoe/commitment.h"
#include "cosetmoe/ecc.h"
#include "cosetmoe/ext.h"
#include "cosetmoe/strategy.h"

namespace cosetmoe {

struct Message {
    size_t idx = 0;
    std::string from;
    std::string to;
    std::string label;
    std::optional<std::string> payload_hex;
    nlohmann::json payload;  // structured payloads (subspaces, flags, subsets)
    std::optional<std::string> qreg_id;
    bool eve_visible = true;

    nlohmann::json to_json() const;
};

/// Append-only log of one protocol run. Classical messages are always visible
/// to the eavesdropper; quantum registers appear as handles.
class Transcript {
  public:
    void send(const std::string &from, const std::string &to, const std::string &label,
              const Gf2Vec &payload);
    void send_json(const std::string &from, const std::string &to, const std::string &label,
                   nlohmann::json payload);
    void send_quantum(const std::string &from, const std::string &to, const std::string &label,
                      const std::string &qreg_id);

    const std::vector<Message> &messages() const { return messages_; }
    const Message *find(const std::string &label) const;
    /// One JSON object per line.
    std::string to_jsonl() const;
    /// The classical part an eavesdropper sees, as one canonical string.
    std::string eve_view() const;

  private:
    Message &push(const std::string &from, const std::string &to, const std::string &label);

    std::vector<Message> messages_;
};

/// Receiver-side view of the quantum channel: either an honest receiver
/// holding the whole register, or an adversary's split.
class QuantumChannel {
  public:
    QuantumChannel(QuantumReg reg, const Strategy *adversary, RandomSource &rng);

    /// The receiver's (t, t') measurement result in the basis of a.
    CosetGuess receiver_measure(const Gf2Subspace &a, RandomSource &rng);
    /// The eavesdropper's guess of t' given the leaked first answer; empty
    /// when there is no eavesdropper.
    std::optional<Gf2Vec> eve_guess(const Gf2Subspace &a, const Gf2Vec &leak, RandomSource &rng);

  private:
    const Strategy *adversary_;
    std::optional<QuantumReg> honest_;
    std::optional<Split> split_;
};

/// Wiesner records for register subspaces unless the adversary needs a
/// statevector; checks the statevector size limit.
Backend protocol_backend(size_t n, SubspaceFamily family, const Strategy *adversary);

/// Distribution over the messages Z_2^ell, indexed by to_uint().
struct MessageSource {
    size_t ell = 1;
    std::vector<double> p;

    static MessageSource uniform(size_t ell);
    /// Message 0 with probability p0, the rest uniform.
    static MessageSource skewed(size_t ell, double p0);
    Gf2Vec sample(RandomSource &rng) const;
    double min_entropy() const;
    nlohmann::json to_json() const;
};

// ---- coset-state encryption with interactive decryption ----

struct QecmParams {
    size_t n = 8;
    size_t ell = 2;
    SubspaceFamily family = SubspaceFamily::kRegister;

    void validate() const;
    ToeplitzExtractor extractor() const { return {n / 2, ell}; }
    nlohmann::json to_json() const;
};

struct QecmKey {
    Gf2Subspace a;
    Gf2Vec t;
    Gf2Vec tp;
    Gf2Vec r;
    Gf2Vec h;
};

QecmKey qecm_keygen(const QecmParams &p, RandomSource &rng);

struct QecmOutcome {
    Gf2Vec m;
    Gf2Vec m_hat;              // uniform when f = 0
    bool m_hat_present = false;
    std::optional<Gf2Vec> m_check;  // eavesdropper's guess
    bool f = false;
    Transcript transcript;

    nlohmann::json to_json() const;
};

QecmOutcome run_qecm_id(const QecmParams &p, const Strategy *adversary, const Gf2Vec &m,
                        RandomSource &rng);

enum class QecmExperimentKind { kCorrectness, kIndistinguishable, kUncloneable, kUncloneableIndist };

QecmExperimentKind parse_qecm_experiment(const std::string &name);
std::string qecm_experiment_name(QecmExperimentKind k);

struct QecmExperimentConfig {
    QecmParams params;
    std::optional<StrategySpec> adversary;
    MessageSource source = MessageSource::uniform(2);
    uint64_t trials = 10000;
    uint64_t seed = 1;
    int threads = 0;
    std::optional<double> kappa;  // extractor min-entropy; defaults to kappa_required_qecm
};

/// Trace distance between the averaged ciphertexts (classical part and coset
/// state) for the real message source and for the fixed message 0, by
/// enumerating every key. Small n and ell only.
double qecm_indistinguishability_exact(const QecmParams &p, const MessageSource &source);

/// Report with counts, estimates, Wilson intervals, the relevant bound and a
/// pass flag.
nlohmann::json qecm_experiment(QecmExperimentKind kind, const QecmExperimentConfig &cfg);

// ---- uncloneable randomised bit string commitment ----

struct UrbcParams {
    size_t n = 14;
    size_t ell = 2;
    CodeSpec code = CodeSpec::hamming74();
    size_t reveal_size = 2;  // |j| = eta n/2
    CommitmentKind scheme = CommitmentKind::kIdeal;
    SubspaceFamily family = SubspaceFamily::kRegister;
    bool binding_attack = false;

    double eta() const { return static_cast<double>(reveal_size) / static_cast<double>(n / 2); }
    void validate(const LinearCode &code) const;
    nlohmann::json to_json() const;
};

struct UrbcOutcome {
    Gf2Vec y;                          // Alice's output
    std::optional<Gf2Vec> y_claimed;   // what a cheating Alice tries to open to
    std::optional<Gf2Vec> y_hat;       // Bob's output, when he accepts
    bool g = false;
    bool f = false;
    std::optional<Gf2Vec> eve_guess;
    Transcript transcript;

    nlohmann::json to_json() const;
};

UrbcOutcome run_urbc(const UrbcParams &p, const LinearCode &code, const Strategy *adversary,
                     RandomSource &rng);

/// sum_a || rho_{Y, view | a} - mu_Y (x) rho_{view | a} || with view the
/// subspace and the committed coset state; ideal base commitment.
double urbc_hiding_exact(const UrbcParams &p);

// ---- receiver-independent QKD ----

enum class DeviceFault { kNone, kCodewordShift, kFlip };

DeviceFault parse_device_fault(const std::string &name);
std::string device_fault_name(DeviceFault f);

struct QkdParams {
    size_t n = 16;
    size_t ell = 2;
    double gamma = 0;
    size_t reveal_size = 2;  // |j| = eta n/2
    CodeSpec code = CodeSpec::block_repeat(4, 2);
    SubspaceFamily family = SubspaceFamily::kRegister;
    double dx = 0;
    double dz = 0;
    DeviceFault fault = DeviceFault::kNone;

    double eta() const { return static_cast<double>(reveal_size) / static_cast<double>(n / 2); }
    void validate(const LinearCode &code) const;
    nlohmann::json to_json() const;
};

struct QkdOutcome {
    std::optional<Gf2Vec> k;
    std::optional<Gf2Vec> k_hat;
    bool f = false;
    bool pe_pass = false;
    bool ir_pass = false;
    size_t pe_distance = 0;
    size_t ir_mismatches = 0;
    std::optional<Gf2Vec> eve_guess;
    Transcript transcript;

    // Internal values, kept for property checks.
    Gf2Vec t;
    Gf2Vec t_hat;
    Gf2Vec tp;
    Gf2Vec tp_hat;
    std::optional<Gf2Vec> tp_bar;
    IndexSubset j;

    nlohmann::json to_json() const;
};

QkdOutcome run_riqkd(const QkdParams &p, const LinearCode &code, const Strategy *adversary,
                     RandomSource &rng);

// ---- BB84-style one-sided device-independent protocol ----

enum class TfkwEve { kNone, kSubstituteZero };

struct TfkwParams {
    size_t n = 16;
    size_t test_count = 4;
    double gamma = 0.1;
    size_t ell = 2;
    CodeSpec code = CodeSpec::block_repeat(3, 4);
    double dx = 0;
    double dz = 0;
    TfkwEve eve = TfkwEve::kNone;
    /// The attacked device runs the test honestly; Eve then resends the
    /// intercepted state after measuring it in the announced bases.
    bool device_check = false;

    void validate(const LinearCode &code) const;
    nlohmann::json to_json() const;
};

/// eve_guess holds Eve's key; f = 0 means the receiving side aborted.
QkdOutcome run_tfkw(const TfkwParams &p, const LinearCode &code, RandomSource &rng);

// ---- eavesdropper probes ----

struct SecrecyProbeConfig {
    QkdParams params;
    std::optional<StrategySpec> eve;
    uint64_t trials = 10000;
    uint64_t seed = 1;
    int threads = 0;
    bool exact = false;  // enumerate every random choice instead of sampling
    std::optional<double> kappa;
};

nlohmann::json secrecy_probe(const SecrecyProbeConfig &cfg);

}  // namespace cosetmoe

#endif
