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

#include "cosetmoe/gf2.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cosetmoe/rng.h"

namespace cosetmoe {

namespace {

size_t word_count(size_t n) { return (n + 63) / 64; }

int hex_digit(char c) {
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    throw std::invalid_argument("invalid hex digit");
}

}  // namespace

Gf2Vec::Gf2Vec(size_t n) : n_(n), words_(word_count(n), 0) {}

Gf2Vec Gf2Vec::unit(size_t n, size_t i) {
    if (i >= n) {
        throw std::out_of_range("unit vector index out of range");
    }
    Gf2Vec v(n);
    v.set(i, true);
    return v;
}

Gf2Vec Gf2Vec::ones(size_t n) {
    Gf2Vec v(n);
    for (size_t i = 0; i < n; i++) {
        v.set(i, true);
    }
    return v;
}

Gf2Vec Gf2Vec::from_bits(std::initializer_list<int> bits) {
    Gf2Vec v(bits.size());
    size_t i = 0;
    for (int b : bits) {
        v.set(i++, b != 0);
    }
    return v;
}

Gf2Vec Gf2Vec::from_string(std::string_view bits01) {
    Gf2Vec v(bits01.size());
    for (size_t i = 0; i < bits01.size(); i++) {
        if (bits01[i] != '0' && bits01[i] != '1') {
            throw std::invalid_argument("bit string must contain only 0 and 1");
        }
        v.set(i, bits01[i] == '1');
    }
    return v;
}

Gf2Vec Gf2Vec::from_uint(size_t n, uint64_t value) {
    if (n > 64) {
        throw std::invalid_argument("from_uint supports at most 64 coordinates");
    }
    Gf2Vec v(n);
    for (size_t i = 0; i < n; i++) {
        v.set(i, (value >> (n - 1 - i)) & 1);
    }
    return v;
}

Gf2Vec Gf2Vec::from_hex(size_t n, std::string_view hex) {
    size_t digits = (n + 3) / 4;
    if (hex.size() != digits) {
        throw std::invalid_argument("hex string has wrong length for vector size");
    }
    // Value sum x_i 2^(n-1-i), padded with leading zeros to whole digits.
    Gf2Vec v(n);
    size_t pad = digits * 4 - n;
    for (size_t d = 0; d < digits; d++) {
        int val = hex_digit(hex[d]);
        for (int b = 0; b < 4; b++) {
            size_t pos = d * 4 + static_cast<size_t>(b);
            bool bit = (val >> (3 - b)) & 1;
            if (pos < pad) {
                if (bit) {
                    throw std::invalid_argument("hex string has bits beyond vector size");
                }
                continue;
            }
            v.set(pos - pad, bit);
        }
    }
    return v;
}

void Gf2Vec::set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void Gf2Vec::check_same_size(const Gf2Vec &other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("Gf2Vec length mismatch");
    }
}

Gf2Vec &Gf2Vec::operator^=(const Gf2Vec &other) {
    check_same_size(other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

Gf2Vec &Gf2Vec::operator&=(const Gf2Vec &other) {
    check_same_size(other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

bool Gf2Vec::lex_less(const Gf2Vec &other) const {
    check_same_size(other);
    for (size_t i = 0; i < n_; i++) {
        bool a = get(i);
        bool b = other.get(i);
        if (a != b) {
            return b;
        }
    }
    return false;
}

bool Gf2Vec::dot(const Gf2Vec &other) const {
    check_same_size(other);
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

size_t Gf2Vec::weight() const {
    size_t c = 0;
    for (uint64_t w : words_) {
        c += static_cast<size_t>(std::popcount(w));
    }
    return c;
}

bool Gf2Vec::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

uint64_t Gf2Vec::to_uint() const {
    if (n_ > 64) {
        throw std::invalid_argument("to_uint supports at most 64 coordinates");
    }
    uint64_t out = 0;
    for (size_t i = 0; i < n_; i++) {
        out |= static_cast<uint64_t>(get(i)) << (n_ - 1 - i);
    }
    return out;
}

std::string Gf2Vec::to_hex() const {
    static const char *kDigits = "0123456789abcdef";
    size_t digits = (n_ + 3) / 4;
    size_t pad = digits * 4 - n_;
    std::string s(digits, '0');
    for (size_t d = 0; d < digits; d++) {
        int val = 0;
        for (int b = 0; b < 4; b++) {
            size_t pos = d * 4 + static_cast<size_t>(b);
            val <<= 1;
            if (pos >= pad && get(pos - pad)) {
                val |= 1;
            }
        }
        s[d] = kDigits[val];
    }
    return s;
}

std::string Gf2Vec::to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

Gf2Vec Gf2Vec::select(std::span<const size_t> idx) const {
    Gf2Vec out(idx.size());
    for (size_t k = 0; k < idx.size(); k++) {
        out.set(k, get(idx[k]));
    }
    return out;
}

Gf2Vec Gf2Vec::concat(const Gf2Vec &tail) const {
    Gf2Vec out(n_ + tail.n_);
    for (size_t i = 0; i < n_; i++) {
        out.set(i, get(i));
    }
    for (size_t i = 0; i < tail.n_; i++) {
        out.set(n_ + i, tail.get(i));
    }
    return out;
}

size_t hamming(const Gf2Vec &x, const Gf2Vec &y) { return (x ^ y).weight(); }

Gf2Vec random_vec(RandomSource &rng, size_t n) {
    Gf2Vec v(n);
    auto words = v.mutable_words();
    for (size_t w = 0; w < words.size(); w++) {
        unsigned take = static_cast<unsigned>(std::min<size_t>(64, n - w * 64));
        words[w] = rng.bits(take);
    }
    return v;
}

Gf2Matrix::Gf2Matrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, Gf2Vec(cols)) {}

Gf2Matrix::Gf2Matrix(std::vector<Gf2Vec> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_[0].size();
    for (const auto &r : rows_) {
        if (r.size() != cols_) {
            throw std::invalid_argument("Gf2Matrix rows must have equal length");
        }
    }
}

Gf2Matrix Gf2Matrix::identity(size_t n) {
    Gf2Matrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

Gf2Matrix Gf2Matrix::from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<Gf2Vec> r;
    for (auto s : rows) {
        r.push_back(Gf2Vec::from_string(s));
    }
    return Gf2Matrix(std::move(r));
}

void Gf2Matrix::append_row(Gf2Vec row) {
    if (rows_.empty() && cols_ == 0) {
        cols_ = row.size();
    }
    if (row.size() != cols_) {
        throw std::invalid_argument("Gf2Matrix row length mismatch");
    }
    rows_.push_back(std::move(row));
}

Gf2Vec Gf2Matrix::apply(const Gf2Vec &x) const {
    if (x.size() != cols_) {
        throw std::invalid_argument("Gf2Matrix::apply length mismatch");
    }
    Gf2Vec out(rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        out.set(r, rows_[r].dot(x));
    }
    return out;
}

Gf2Matrix Gf2Matrix::transpose() const {
    Gf2Matrix t(cols_, rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                t.set(c, r, true);
            }
        }
    }
    return t;
}

Gf2Matrix Gf2Matrix::multiply(const Gf2Matrix &other) const {
    if (cols_ != other.rows()) {
        throw std::invalid_argument("Gf2Matrix::multiply shape mismatch");
    }
    Gf2Matrix out(rows_.size(), other.cols());
    for (size_t r = 0; r < rows_.size(); r++) {
        for (size_t k = 0; k < cols_; k++) {
            if (get(r, k)) {
                out.row(r) ^= other.row(k);
            }
        }
    }
    return out;
}

size_t Gf2Matrix::rank() const { return rref(*this).pivots.size(); }

nlohmann::json Gf2Matrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : rows_) {
        rows.push_back(r.to_hex());
    }
    return {{"rows", rows_.size()}, {"cols", cols_}, {"hex_rows", rows}};
}

RrefResult rref(const Gf2Matrix &m) {
    std::vector<Gf2Vec> rows = m.row_list();
    std::vector<size_t> pivots;
    size_t cols = m.cols();
    size_t lead = 0;
    for (size_t c = 0; c < cols && lead < rows.size(); c++) {
        size_t r = lead;
        while (r < rows.size() && !rows[r].get(c)) {
            r++;
        }
        if (r == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[lead]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != lead && rows[i].get(c)) {
                rows[i] ^= rows[lead];
            }
        }
        pivots.push_back(c);
        lead++;
    }
    rows.resize(lead);
    RrefResult out;
    out.matrix = rows.empty() ? Gf2Matrix(0, cols) : Gf2Matrix(std::move(rows));
    out.pivots = std::move(pivots);
    return out;
}

bool IndexSubset::contains(size_t i) const {
    return std::binary_search(indices.begin(), indices.end(), i);
}

IndexSubset sample_subset(size_t n, size_t size, RandomSource &rng) {
    if (size > n) {
        throw std::invalid_argument("sample_subset: size exceeds ambient size");
    }
    // Partial Fisher-Yates: every ordered prefix is equally likely.
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; i++) {
        perm[i] = i;
    }
    for (size_t i = 0; i < size; i++) {
        size_t j = i + static_cast<size_t>(rng.below(n - i));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(size);
    std::sort(perm.begin(), perm.end());
    return IndexSubset{n, std::move(perm)};
}

SubspaceFamily parse_family(std::string_view name) {
    if (name == "register") {
        return SubspaceFamily::kRegister;
    }
    if (name == "all") {
        return SubspaceFamily::kAll;
    }
    throw std::invalid_argument("unknown subspace family: " + std::string(name));
}

std::string_view family_name(SubspaceFamily f) {
    return f == SubspaceFamily::kRegister ? "register" : "all";
}

void Gf2Subspace::finish() {
    free_.clear();
    size_t p = 0;
    for (size_t c = 0; c < n_; c++) {
        if (p < pivots_.size() && pivots_[p] == c) {
            p++;
        } else {
            free_.push_back(c);
        }
    }
    register_ = true;
    for (size_t r = 0; r < basis_.rows() && register_; r++) {
        register_ = basis_.row(r).weight() == 1;
    }
}

Gf2Subspace Gf2Subspace::span(size_t n, const std::vector<Gf2Vec> &generators) {
    Gf2Matrix m(0, n);
    for (const auto &g : generators) {
        m.append_row(g);
    }
    return span(m);
}

Gf2Subspace Gf2Subspace::span(const Gf2Matrix &generators) {
    auto r = rref(generators);
    Gf2Subspace s;
    s.n_ = generators.cols();
    s.basis_ = std::move(r.matrix);
    s.pivots_ = std::move(r.pivots);
    s.finish();
    return s;
}

Gf2Subspace Gf2Subspace::register_span(size_t n, std::span<const size_t> idx) {
    std::vector<size_t> sorted(idx.begin(), idx.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("register_span: repeated index");
    }
    Gf2Subspace s;
    s.n_ = n;
    s.basis_ = Gf2Matrix(0, n);
    for (size_t i : sorted) {
        s.basis_.append_row(Gf2Vec::unit(n, i));
    }
    s.pivots_ = sorted;
    s.finish();
    return s;
}

Gf2Subspace Gf2Subspace::zero(size_t n) { return register_span(n, {}); }

Gf2Subspace Gf2Subspace::full(size_t n) {
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; i++) {
        all[i] = i;
    }
    return register_span(n, all);
}

bool Gf2Subspace::contains(const Gf2Vec &v) const {
    if (v.size() != n_) {
        throw std::invalid_argument("Gf2Subspace::contains length mismatch");
    }
    return solve_coset_membership(v).t.is_zero();
}

Gf2Subspace Gf2Subspace::complement() const {
    if (register_) {
        return register_span(n_, free_);
    }
    // One null-space vector per free column f: e_f plus, on each pivot p_r,
    // the entry of basis row r in column f.
    Gf2Matrix m(0, n_);
    for (size_t f : free_) {
        Gf2Vec v = Gf2Vec::unit(n_, f);
        for (size_t r = 0; r < pivots_.size(); r++) {
            if (basis_.get(r, f)) {
                v.set(pivots_[r], true);
            }
        }
        m.append_row(std::move(v));
    }
    return span(m);
}

Gf2Subspace Gf2Subspace::sum(const Gf2Subspace &other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("Gf2Subspace ambient dimension mismatch");
    }
    Gf2Matrix m(0, n_);
    for (const auto &r : basis_.row_list()) {
        m.append_row(r);
    }
    for (const auto &r : other.basis_.row_list()) {
        m.append_row(r);
    }
    return span(m);
}

Gf2Subspace Gf2Subspace::intersect(const Gf2Subspace &other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("Gf2Subspace ambient dimension mismatch");
    }
    return complement().sum(other.complement()).complement();
}

Gf2Vec Gf2Subspace::coset_rep(const Gf2Vec &t) const {
    if (t.size() != free_.size()) {
        throw std::invalid_argument("coset_rep: t must have length n - dim");
    }
    Gf2Vec out(n_);
    for (size_t j = 0; j < free_.size(); j++) {
        if (t.get(j)) {
            out.set(free_[j], true);
        }
    }
    return out;
}

Gf2Subspace::CosetSplit Gf2Subspace::solve_coset_membership(const Gf2Vec &v) const {
    if (v.size() != n_) {
        throw std::invalid_argument("solve_coset_membership length mismatch");
    }
    // u agrees with v on the pivots; v + u vanishes there, so it is t_a.
    Gf2Vec u(n_);
    for (size_t r = 0; r < pivots_.size(); r++) {
        if (v.get(pivots_[r])) {
            u ^= basis_.row(r);
        }
    }
    Gf2Vec rest = v ^ u;
    return {rest.select(free_), std::move(u)};
}

Gf2Vec Gf2Subspace::coordinates(const Gf2Vec &u) const { return u.select(pivots_); }

Gf2Vec Gf2Subspace::combine(const Gf2Vec &y) const {
    if (y.size() != dim()) {
        throw std::invalid_argument("combine: coefficient length mismatch");
    }
    Gf2Vec out(n_);
    for (size_t r = 0; r < dim(); r++) {
        if (y.get(r)) {
            out ^= basis_.row(r);
        }
    }
    return out;
}

Gf2Vec Gf2Subspace::indicator() const {
    if (!register_) {
        throw std::invalid_argument("indicator: not a register subspace");
    }
    Gf2Vec out(n_);
    for (size_t p : pivots_) {
        out.set(p, true);
    }
    return out;
}

std::vector<Gf2Vec> Gf2Subspace::elements() const {
    if (dim() > 24) {
        throw std::length_error("elements: subspace too large to enumerate");
    }
    std::vector<Gf2Vec> out;
    out.reserve(size_t{1} << dim());
    for (uint64_t y = 0; y < (uint64_t{1} << dim()); y++) {
        out.push_back(combine(Gf2Vec::from_uint(dim(), y)));
    }
    return out;
}

nlohmann::json Gf2Subspace::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : basis_.row_list()) {
        rows.push_back(r.to_hex());
    }
    return {{"n", n_}, {"basis", rows}};
}

Gf2Subspace Gf2Subspace::from_json(const nlohmann::json &j) {
    size_t n = j.at("n").get<size_t>();
    std::vector<Gf2Vec> gens;
    for (const auto &row : j.at("basis")) {
        gens.push_back(Gf2Vec::from_hex(n, row.get<std::string>()));
    }
    return span(n, gens);
}

Gf2Subspace sample_subspace(size_t n, SubspaceFamily family, RandomSource &rng) {
    if (n % 2 != 0) {
        throw std::invalid_argument("sample_subspace: n must be even");
    }
    size_t k = n / 2;
    if (family == SubspaceFamily::kRegister) {
        auto idx = sample_subset(n, k, rng);
        return Gf2Subspace::register_span(n, idx.indices);
    }
    // Uniform full-rank k x n matrices; every subspace has |GL(k,2)| bases.
    while (true) {
        Gf2Matrix m(0, n);
        for (size_t r = 0; r < k; r++) {
            m.append_row(random_vec(rng, n));
        }
        auto s = Gf2Subspace::span(m);
        if (s.dim() == k) {
            return s;
        }
    }
}

std::vector<Gf2Subspace> enumerate_subspaces(size_t n, size_t k, SubspaceFamily family) {
    if (n > 12) {
        throw std::length_error("enumerate_subspaces: n too large");
    }
    std::vector<Gf2Subspace> out;
    if (family == SubspaceFamily::kRegister) {
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
            if (static_cast<size_t>(std::popcount(mask)) != k) {
                continue;
            }
            std::vector<size_t> idx;
            for (size_t i = 0; i < n; i++) {
                if ((mask >> i) & 1) {
                    idx.push_back(i);
                }
            }
            out.push_back(Gf2Subspace::register_span(n, idx));
        }
        return out;
    }
    // Each subspace is generated by exactly one RREF matrix: choose pivot
    // columns, then fill the entries right of each pivot in non-pivot columns.
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
        if (static_cast<size_t>(std::popcount(mask)) != k) {
            continue;
        }
        std::vector<size_t> piv;
        for (size_t i = 0; i < n; i++) {
            if ((mask >> i) & 1) {
                piv.push_back(i);
            }
        }
        std::vector<std::pair<size_t, size_t>> slots;
        for (size_t r = 0; r < k; r++) {
            for (size_t c = piv[r] + 1; c < n; c++) {
                if (!((mask >> c) & 1)) {
                    slots.emplace_back(r, c);
                }
            }
        }
        for (uint64_t fill = 0; fill < (uint64_t{1} << slots.size()); fill++) {
            Gf2Matrix m(k, n);
            for (size_t r = 0; r < k; r++) {
                m.set(r, piv[r], true);
            }
            for (size_t s = 0; s < slots.size(); s++) {
                if ((fill >> s) & 1) {
                    m.set(slots[s].first, slots[s].second, true);
                }
            }
            out.push_back(Gf2Subspace::span(m));
        }
    }
    return out;
}

Gf2Vec solve_square(const Gf2Matrix &m, const Gf2Vec &b) {
    size_t n = m.rows();
    if (m.cols() != n || b.size() != n) {
        throw std::invalid_argument("solve_square: shape mismatch");
    }
    // Gauss-Jordan on [M | b].
    std::vector<Gf2Vec> rows;
    for (size_t r = 0; r < n; r++) {
        rows.push_back(m.row(r).concat(Gf2Vec::from_bits({b.get(r)})));
    }
    for (size_t c = 0; c < n; c++) {
        size_t r = c;
        while (r < n && !rows[r].get(c)) {
            r++;
        }
        if (r == n) {
            throw std::domain_error("solve_square: singular matrix");
        }
        std::swap(rows[r], rows[c]);
        for (size_t i = 0; i < n; i++) {
            if (i != c && rows[i].get(c)) {
                rows[i] ^= rows[c];
            }
        }
    }
    Gf2Vec x(n);
    for (size_t r = 0; r < n; r++) {
        x.set(r, rows[r].get(n));
    }
    return x;
}

}  // namespace cosetmoe
