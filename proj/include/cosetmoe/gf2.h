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

#ifndef COSETMOE_GF2_H
#define COSETMOE_GF2_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cosetmoe {

class RandomSource;

/// Fixed-length bit vector over Z_2. Coordinate 0 is the most significant
/// coordinate in every external encoding (hex strings, basis-state labels).
class Gf2Vec {
  public:
    Gf2Vec() = default;
    explicit Gf2Vec(size_t n);

    static Gf2Vec unit(size_t n, size_t i);
    static Gf2Vec ones(size_t n);
    static Gf2Vec from_bits(std::initializer_list<int> bits);
    static Gf2Vec from_string(std::string_view bits01);
    /// Low `n` bits of `value`, coordinate 0 taken from bit n-1.
    static Gf2Vec from_uint(size_t n, uint64_t value);
    static Gf2Vec from_hex(size_t n, std::string_view hex);

    size_t size() const { return n_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v);
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    Gf2Vec &operator^=(const Gf2Vec &other);
    Gf2Vec &operator&=(const Gf2Vec &other);
    friend Gf2Vec operator^(Gf2Vec a, const Gf2Vec &b) { return a ^= b; }
    friend Gf2Vec operator+(Gf2Vec a, const Gf2Vec &b) { return a ^= b; }
    friend Gf2Vec operator&(Gf2Vec a, const Gf2Vec &b) { return a &= b; }
    bool operator==(const Gf2Vec &other) const = default;
    /// Lexicographic on coordinates (coordinate 0 first, 0 < 1).
    bool lex_less(const Gf2Vec &other) const;

    bool dot(const Gf2Vec &other) const;
    size_t weight() const;
    bool is_zero() const;

    /// Inverse of from_uint; requires size() <= 64.
    uint64_t to_uint() const;
    std::string to_hex() const;
    std::string to_string() const;

    /// Coordinates listed in `idx`, in that order.
    Gf2Vec select(std::span<const size_t> idx) const;
    Gf2Vec concat(const Gf2Vec &tail) const;

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> mutable_words() { return words_; }

  private:
    void check_same_size(const Gf2Vec &other) const;

    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

size_t hamming(const Gf2Vec &x, const Gf2Vec &y);
Gf2Vec random_vec(RandomSource &rng, size_t n);

class Gf2Matrix {
  public:
    Gf2Matrix() = default;
    Gf2Matrix(size_t rows, size_t cols);
    explicit Gf2Matrix(std::vector<Gf2Vec> rows);
    static Gf2Matrix identity(size_t n);
    static Gf2Matrix from_strings(std::initializer_list<std::string_view> rows);

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }
    const Gf2Vec &row(size_t r) const { return rows_[r]; }
    Gf2Vec &row(size_t r) { return rows_[r]; }
    const std::vector<Gf2Vec> &row_list() const { return rows_; }
    bool get(size_t r, size_t c) const { return rows_[r].get(c); }
    void set(size_t r, size_t c, bool v) { rows_[r].set(c, v); }
    void append_row(Gf2Vec row);

    /// M x for a column vector x of length cols().
    Gf2Vec apply(const Gf2Vec &x) const;
    Gf2Matrix transpose() const;
    Gf2Matrix multiply(const Gf2Matrix &other) const;
    size_t rank() const;
    bool operator==(const Gf2Matrix &other) const = default;

    nlohmann::json to_json() const;

  private:
    size_t cols_ = 0;
    std::vector<Gf2Vec> rows_;
};

struct RrefResult {
    Gf2Matrix matrix;           // zero rows removed
    std::vector<size_t> pivots;  // strictly increasing
};

RrefResult rref(const Gf2Matrix &m);

/// Sorted set of distinct indices drawn from [0, ambient).
struct IndexSubset {
    size_t ambient = 0;
    std::vector<size_t> indices;

    size_t size() const { return indices.size(); }
    bool contains(size_t i) const;
    bool operator==(const IndexSubset &other) const = default;
};

IndexSubset sample_subset(size_t n, size_t size, RandomSource &rng);

enum class SubspaceFamily { kRegister, kAll };

SubspaceFamily parse_family(std::string_view name);
std::string_view family_name(SubspaceFamily f);

/// Subspace of Z_2^n stored as the reduced row echelon form of any spanning
/// set. Equal subspaces have bit-identical representations.
class Gf2Subspace {
  public:
    Gf2Subspace() = default;
    static Gf2Subspace span(size_t n, const std::vector<Gf2Vec> &generators);
    static Gf2Subspace span(const Gf2Matrix &generators);
    /// span{e_i : i in idx}.
    static Gf2Subspace register_span(size_t n, std::span<const size_t> idx);
    static Gf2Subspace zero(size_t n);
    static Gf2Subspace full(size_t n);

    size_t ambient() const { return n_; }
    size_t dim() const { return basis_.rows(); }
    const Gf2Matrix &basis() const { return basis_; }
    const std::vector<size_t> &pivots() const { return pivots_; }
    /// Non-pivot coordinates, increasing.
    const std::vector<size_t> &free_coords() const { return free_; }
    bool is_register() const { return register_; }

    bool contains(const Gf2Vec &v) const;
    Gf2Subspace complement() const;
    Gf2Subspace intersect(const Gf2Subspace &other) const;
    Gf2Subspace sum(const Gf2Subspace &other) const;

    /// Linear coset-representative map t -> t_a; t's bits land on the free
    /// coordinates of the RREF basis, zeros elsewhere.
    Gf2Vec coset_rep(const Gf2Vec &t) const;

    struct CosetSplit {
        Gf2Vec t;  // length n - dim
        Gf2Vec u;  // member of the subspace
    };
    /// Unique decomposition v = coset_rep(t) + u with u in the subspace.
    CosetSplit solve_coset_membership(const Gf2Vec &v) const;

    /// Coordinates of a member u in the RREF basis (its pivot coordinates).
    Gf2Vec coordinates(const Gf2Vec &u) const;
    /// Sum of basis rows selected by y.
    Gf2Vec combine(const Gf2Vec &y) const;

    /// iota(a): 1 exactly on the canonical vectors contained in a.
    Gf2Vec indicator() const;

    /// All 2^dim members, in the order of their coordinate vectors.
    std::vector<Gf2Vec> elements() const;

    bool operator==(const Gf2Subspace &other) const {
        return n_ == other.n_ && basis_ == other.basis_;
    }

    nlohmann::json to_json() const;
    static Gf2Subspace from_json(const nlohmann::json &j);

  private:
    void finish();

    size_t n_ = 0;
    Gf2Matrix basis_;
    std::vector<size_t> pivots_;
    std::vector<size_t> free_;
    bool register_ = false;
};

Gf2Subspace sample_subspace(size_t n, SubspaceFamily family, RandomSource &rng);

/// Every dimension-k subspace of Z_2^n (small n only; exhaustive).
std::vector<Gf2Subspace> enumerate_subspaces(size_t n, size_t k, SubspaceFamily family);

/// Solve M x = b for square invertible M; throws if singular.
Gf2Vec solve_square(const Gf2Matrix &m, const Gf2Vec &b);

}  // namespace cosetmoe

#endif
