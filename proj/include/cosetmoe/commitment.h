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

#ifndef COSETMOE_COMMITMENT_H
#define COSETMOE_COMMITMENT_H

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "cosetmoe/gf2.h"

namespace cosetmoe {

class RandomSource;

enum class CommitmentKind { kIdeal, kHash };

CommitmentKind parse_commitment_kind(std::string_view name);
std::string_view commitment_kind_name(CommitmentKind k);

/// What the receiver holds after the commit phase. The ideal scheme keeps the
/// committed value in a record the receiver cannot read, standing in for a
/// trusted third party; the hash scheme holds a SHA-256 digest.
class CommitToken {
  public:
    CommitmentKind kind() const { return kind_; }
    /// Hex digest for the hash scheme, empty for the ideal one.
    const std::string &digest() const { return digest_; }

  private:
    friend struct CommitAccess;
    CommitmentKind kind_ = CommitmentKind::kIdeal;
    std::string digest_;
    std::shared_ptr<const Gf2Vec> sealed_;
};

struct Opening {
    Gf2Vec value;
    std::array<uint8_t, 32> nonce{};
};

struct Commitment {
    CommitToken token;
    Opening opening;
};

Commitment base_commit(CommitmentKind kind, const Gf2Vec &value, RandomSource &rng);
/// True iff `opening` opens `token` to `value`. Throws on a malformed opening.
bool base_verify(const CommitToken &token, const Gf2Vec &value, const Opening &opening);

/// SHA-256 of hex(value) followed by the raw nonce, as lowercase hex.
std::string commitment_digest(const Gf2Vec &value, const std::array<uint8_t, 32> &nonce);

}  // namespace cosetmoe

#endif
