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

#ifndef COSETMOE_ECC_H
#define COSETMOE_ECC_H

#include <string>
#include <vector>

#include "cosetmoe/gf2.h"

namespace cosetmoe {

/// {kind: hamming74 | repetition | block_repeat | random_linear, params}.
struct CodeSpec {
    std::string kind = "hamming74";
    size_t b = 0;     // repetition / block_repeat block length
    size_t k = 0;     // block_repeat block count
    size_t n = 0;     // random_linear length
    size_t dim = 0;   // random_linear dimension
    uint64_t seed = 0;

    static CodeSpec hamming74() { return {}; }
    static CodeSpec repetition(size_t b) { return {"repetition", b, 1, 0, 0, 0}; }
    static CodeSpec block_repeat(size_t b, size_t k) { return {"block_repeat", b, k, 0, 0, 0}; }
    static CodeSpec random_linear(size_t n, size_t dim, uint64_t seed) {
        return {"random_linear", 0, 0, n, dim, seed};
    }

    nlohmann::json to_json() const;
    static CodeSpec from_json(const nlohmann::json &j);
};

/// Binary [N, K, d] code given by a parity-check matrix, with minimum-weight
/// coset leaders (ties: lexicographically smallest) when decoding is feasible.
class LinearCode {
  public:
    static constexpr size_t kMaxTableRedundancy = 24;

    static LinearCode make(const CodeSpec &spec);

    const CodeSpec &spec() const { return spec_; }
    size_t length() const { return h_.cols(); }
    size_t dimension() const { return g_.rows(); }
    size_t redundancy() const { return h_.rows(); }
    size_t distance() const { return d_; }
    const Gf2Matrix &parity_check() const { return h_; }
    const Gf2Matrix &generator() const { return g_; }

    Gf2Vec syndrome(const Gf2Vec &x) const;
    bool has_leaders() const { return block_ != 0 || !leaders_.empty(); }
    Gf2Vec leader(const Gf2Vec &syndrome) const;
    /// Nearest codeword: x + leader(syndrome(x)).
    Gf2Vec correct(const Gf2Vec &x) const;
    /// The string with syndrome `target` nearest to tp:
    /// tp + leader(syndrome(tp) + target). Equals tp + e whenever `target` is
    /// the syndrome of tp + e and e is correctable.
    Gf2Vec align_correction(const Gf2Vec &tp, const Gf2Vec &target) const;
    /// The string with syndrome `target` that corrects to the same codeword
    /// as tp: correct(tp) + leader(target). Near a decision boundary a single
    /// flip of tp can move it to another codeword.
    Gf2Vec fiber_correction(const Gf2Vec &tp, const Gf2Vec &target) const;

    /// All 2^K codewords (K <= 20).
    std::vector<Gf2Vec> codewords() const;
    /// Lexicographically smallest codeword of weight d.
    Gf2Vec min_weight_codeword() const;

    nlohmann::json to_json() const;

  private:
    void build_leader_table();

    CodeSpec spec_;
    Gf2Matrix h_;
    Gf2Matrix g_;
    size_t d_ = 0;
    size_t block_ = 0;  // nonzero for per-block repetition decoding
    std::vector<Gf2Vec> leaders_;
};

}  // namespace cosetmoe

#endif
