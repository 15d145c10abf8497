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

#include "cosetmoe/ecc.h"

#include <stdexcept>

#include "cosetmoe/rng.h"

namespace cosetmoe {

namespace {

constexpr size_t kMaxEnumeratedDimension = 20;

// Next integer with the same popcount.
uint64_t next_same_weight(uint64_t v) {
    uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctzll(v) + 1));
}

}  // namespace

nlohmann::json CodeSpec::to_json() const {
    nlohmann::json params;
    if (kind == "repetition") {
        params = {{"b", b}};
    } else if (kind == "block_repeat") {
        params = {{"b", b}, {"k", k}};
    } else if (kind == "random_linear") {
        params = {{"n", n}, {"k", dim}, {"seed", seed}};
    } else {
        params = nlohmann::json::object();
    }
    return {{"kind", kind}, {"params", params}};
}

CodeSpec CodeSpec::from_json(const nlohmann::json &j) {
    CodeSpec s;
    s.kind = j.at("kind").get<std::string>();
    nlohmann::json p = j.contains("params") ? j.at("params") : nlohmann::json::object();
    for (auto it = p.begin(); it != p.end(); ++it) {
        const std::string &key = it.key();
        bool known = (s.kind == "repetition" && key == "b") ||
                     (s.kind == "block_repeat" && (key == "b" || key == "k")) ||
                     (s.kind == "random_linear" && (key == "n" || key == "k" || key == "seed"));
        if (!known) {
            throw std::invalid_argument("code params: unknown key '" + key + "' for " + s.kind);
        }
    }
    if (s.kind == "hamming74") {
        return s;
    }
    if (s.kind == "repetition") {
        return repetition(p.at("b").get<size_t>());
    }
    if (s.kind == "block_repeat") {
        return block_repeat(p.at("b").get<size_t>(), p.at("k").get<size_t>());
    }
    if (s.kind == "random_linear") {
        return random_linear(p.at("n").get<size_t>(), p.at("k").get<size_t>(),
                             p.value("seed", uint64_t{0}));
    }
    throw std::invalid_argument("unknown code kind: " + s.kind);
}

LinearCode LinearCode::make(const CodeSpec &spec) {
    LinearCode c;
    c.spec_ = spec;
    if (spec.kind == "hamming74") {
        c.h_ = Gf2Matrix(3, 7);
        for (size_t j = 0; j < 7; j++) {
            for (size_t r = 0; r < 3; r++) {
                c.h_.set(r, j, ((j + 1) >> (2 - r)) & 1);
            }
        }
    } else if (spec.kind == "repetition" || spec.kind == "block_repeat") {
        if (spec.b < 1 || spec.k < 1) {
            throw std::invalid_argument("block_repeat: need b >= 1 and k >= 1");
        }
        size_t n = spec.b * spec.k;
        c.h_ = Gf2Matrix(0, n);
        for (size_t blk = 0; blk < spec.k; blk++) {
            for (size_t i = 1; i < spec.b; i++) {
                Gf2Vec row(n);
                row.set(blk * spec.b, true);
                row.set(blk * spec.b + i, true);
                c.h_.append_row(std::move(row));
            }
        }
        c.block_ = spec.b;
    } else if (spec.kind == "random_linear") {
        if (spec.n == 0 || spec.dim == 0 || spec.dim > spec.n) {
            throw std::invalid_argument("random_linear: need 1 <= K <= N");
        }
        TrialRng rng(spec.seed, 0);
        size_t s = spec.n - spec.dim;
        while (true) {
            Gf2Matrix m(0, spec.n);
            for (size_t r = 0; r < s; r++) {
                m.append_row(random_vec(rng, spec.n));
            }
            auto red = rref(m);
            if (red.pivots.size() == s) {
                c.h_ = s == 0 ? Gf2Matrix(0, spec.n) : red.matrix;
                break;
            }
        }
    } else {
        throw std::invalid_argument("unknown code kind: " + spec.kind);
    }

    const size_t n = c.h_.cols();
    Gf2Subspace checks = Gf2Subspace::span(c.h_);
    if (checks.dim() == n) {
        throw std::invalid_argument("code has dimension 0");
    }
    if (c.block_ != 0) {
        // Block repetition codes: one all-ones row per block.
        c.g_ = Gf2Matrix(0, n);
        for (size_t blk = 0; blk < spec.k; blk++) {
            Gf2Vec row(n);
            for (size_t i = 0; i < spec.b; i++) {
                row.set(blk * spec.b + i, true);
            }
            c.g_.append_row(std::move(row));
        }
    } else {
        c.g_ = checks.complement().basis();
    }

    if (c.dimension() <= kMaxEnumeratedDimension) {
        size_t best = n + 1;
        for (const Gf2Vec &w : c.codewords()) {
            if (!w.is_zero()) {
                best = std::min(best, w.weight());
            }
        }
        c.d_ = best;
    } else if (c.block_ != 0) {
        c.d_ = c.block_;
    } else {
        throw std::invalid_argument("code dimension too large to determine the distance");
    }

    if (c.block_ == 0 && c.redundancy() <= kMaxTableRedundancy) {
        c.build_leader_table();
    }
    return c;
}

void LinearCode::build_leader_table() {
    const size_t n = length();
    const size_t s = redundancy();
    if (n > 64) {
        return;
    }
    const uint64_t count = uint64_t{1} << s;
    leaders_.assign(count, Gf2Vec());
    std::vector<bool> filled(count, false);
    uint64_t remaining = count;
    // Weight by weight, each weight in increasing lexicographic order.
    for (size_t w = 0; w <= n && remaining > 0; w++) {
        uint64_t v = w == 0 ? 0 : (w == 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1);
        while (true) {
            Gf2Vec x = Gf2Vec::from_uint(n, v);
            uint64_t syn = s == 0 ? 0 : syndrome(x).to_uint();
            if (!filled[syn]) {
                filled[syn] = true;
                leaders_[syn] = x;
                remaining--;
            }
            if (w == 0 || w == n) {
                break;
            }
            uint64_t next = next_same_weight(v);
            if (n < 64 && (next >> n) != 0) {
                break;
            }
            if (next <= v) {
                break;
            }
            v = next;
        }
    }
}

Gf2Vec LinearCode::syndrome(const Gf2Vec &x) const {
    if (x.size() != length()) {
        throw std::invalid_argument("syndrome: word has wrong length");
    }
    return h_.apply(x);
}

Gf2Vec LinearCode::leader(const Gf2Vec &syn) const {
    if (syn.size() != redundancy()) {
        throw std::invalid_argument("leader: syndrome has wrong length");
    }
    if (block_ != 0) {
        const size_t b = block_;
        const size_t k = length() / b;
        Gf2Vec out(length());
        for (size_t blk = 0; blk < k; blk++) {
            size_t w = 0;
            for (size_t i = 1; i < b; i++) {
                w += syn.get(blk * (b - 1) + i - 1);
            }
            // x_0 = 0 gives weight w, x_0 = 1 gives weight b - w; ties keep x_0 = 0.
            bool top = w > b - w;
            out.set(blk * b, top);
            for (size_t i = 1; i < b; i++) {
                out.set(blk * b + i, syn.get(blk * (b - 1) + i - 1) != top);
            }
        }
        return out;
    }
    if (leaders_.empty()) {
        throw std::logic_error("leader: no coset-leader table for this code");
    }
    return leaders_[redundancy() == 0 ? 0 : syn.to_uint()];
}

Gf2Vec LinearCode::correct(const Gf2Vec &x) const { return x ^ leader(syndrome(x)); }

Gf2Vec LinearCode::align_correction(const Gf2Vec &tp, const Gf2Vec &target) const {
    return tp ^ leader(syndrome(tp) ^ target);
}

Gf2Vec LinearCode::fiber_correction(const Gf2Vec &tp, const Gf2Vec &target) const {
    return correct(tp) ^ leader(target);
}

std::vector<Gf2Vec> LinearCode::codewords() const {
    const size_t k = dimension();
    if (k > kMaxEnumeratedDimension) {
        throw std::length_error("codewords: dimension too large to enumerate");
    }
    std::vector<Gf2Vec> out;
    out.reserve(size_t{1} << k);
    for (uint64_t y = 0; y < (uint64_t{1} << k); y++) {
        Gf2Vec w(length());
        for (size_t r = 0; r < k; r++) {
            if ((y >> (k - 1 - r)) & 1) {
                w ^= g_.row(r);
            }
        }
        out.push_back(std::move(w));
    }
    return out;
}

Gf2Vec LinearCode::min_weight_codeword() const {
    if (dimension() > kMaxEnumeratedDimension) {
        // Block repetition: the first block is the lexicographically largest of
        // the weight-b words, the last block the smallest.
        Gf2Vec w(length());
        for (size_t i = length() - block_; i < length(); i++) {
            w.set(i, true);
        }
        return w;
    }
    Gf2Vec best;
    for (const Gf2Vec &w : codewords()) {
        if (w.weight() != d_) {
            continue;
        }
        if (best.size() == 0 || w.lex_less(best)) {
            best = w;
        }
    }
    return best;
}

nlohmann::json LinearCode::to_json() const {
    return {{"spec", spec_.to_json()},
            {"N", length()},
            {"K", dimension()},
            {"s", redundancy()},
            {"d", d_},
            {"H", h_.to_json()},
            {"G", g_.to_json()}};
}

}  // namespace cosetmoe
