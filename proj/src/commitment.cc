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

#include "cosetmoe/commitment.h"

#include <openssl/sha.h>

#include <cstdio>
#include <stdexcept>

#include "cosetmoe/rng.h"

namespace cosetmoe {

struct CommitAccess {
    static CommitToken make(CommitmentKind kind, std::string digest,
                            std::shared_ptr<const Gf2Vec> sealed) {
        CommitToken t;
        t.kind_ = kind;
        t.digest_ = std::move(digest);
        t.sealed_ = std::move(sealed);
        return t;
    }
    static const std::shared_ptr<const Gf2Vec> &sealed(const CommitToken &t) { return t.sealed_; }
};

CommitmentKind parse_commitment_kind(std::string_view name) {
    if (name == "ideal") {
        return CommitmentKind::kIdeal;
    }
    if (name == "hash" || name == "hash_based") {
        return CommitmentKind::kHash;
    }
    throw std::invalid_argument("unknown commitment scheme: " + std::string(name));
}

std::string_view commitment_kind_name(CommitmentKind k) {
    return k == CommitmentKind::kIdeal ? "ideal" : "hash_based";
}

std::string commitment_digest(const Gf2Vec &value, const std::array<uint8_t, 32> &nonce) {
    std::string msg = value.to_hex();
    msg.append(reinterpret_cast<const char *>(nonce.data()), nonce.size());
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char *>(msg.data()), msg.size(), md);
    std::string out;
    char buf[3];
    for (unsigned char c : md) {
        std::snprintf(buf, sizeof buf, "%02x", c);
        out += buf;
    }
    return out;
}

Commitment base_commit(CommitmentKind kind, const Gf2Vec &value, RandomSource &rng) {
    Commitment c;
    c.opening.value = value;
    if (kind == CommitmentKind::kIdeal) {
        c.token = CommitAccess::make(kind, "", std::make_shared<const Gf2Vec>(value));
        return c;
    }
    for (size_t w = 0; w < 4; w++) {
        uint64_t bits = rng.bits(64);
        for (size_t b = 0; b < 8; b++) {
            c.opening.nonce[w * 8 + b] = static_cast<uint8_t>(bits >> (8 * b));
        }
    }
    c.token = CommitAccess::make(kind, commitment_digest(value, c.opening.nonce), nullptr);
    return c;
}

bool base_verify(const CommitToken &token, const Gf2Vec &value, const Opening &opening) {
    if (opening.value.size() != value.size()) {
        throw std::invalid_argument("base_verify: malformed opening");
    }
    if (!(opening.value == value)) {
        return false;
    }
    if (token.kind() == CommitmentKind::kIdeal) {
        const auto &sealed = CommitAccess::sealed(token);
        if (!sealed) {
            throw std::invalid_argument("base_verify: token carries no record");
        }
        return *sealed == value;
    }
    return commitment_digest(value, opening.nonce) == token.digest();
}

}  // namespace cosetmoe
