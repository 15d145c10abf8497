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

#ifndef COSETMOE_RNG_H
#define COSETMOE_RNG_H

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace cosetmoe {

/// All randomness in simulations flows through this interface, so that the
/// same protocol code can be driven either by a seeded stream or by an
/// exhaustive enumeration of every random choice.
class RandomSource {
  public:
    virtual ~RandomSource() = default;

    /// Uniform in [0, n), n >= 1.
    virtual uint64_t below(uint64_t n) = 0;
    virtual bool bernoulli(double p) = 0;
    /// Index drawn with probability weights[i]; weights must sum to 1.
    virtual size_t pick(std::span<const double> weights) = 0;
    /// `nbits` (<= 64) uniform bits in the low end of the result.
    virtual uint64_t bits(unsigned nbits);

    bool coin() { return below(2) != 0; }
};

/// Seeded stream; streams for distinct (seed, stream) pairs are independent
/// for all practical purposes.
class TrialRng final : public RandomSource {
  public:
    TrialRng(uint64_t seed, uint64_t stream);

    uint64_t below(uint64_t n) override;
    bool bernoulli(double p) override;
    size_t pick(std::span<const double> weights) override;
    uint64_t bits(unsigned nbits) override;

    double uniform01();

  private:
    std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

/// Drives a function through every sequence of random choices it can make,
/// reporting each complete path with its probability. Branches of weight 0
/// are skipped. Intended for exact checks at tiny sizes.
class EnumeratingSource final : public RandomSource {
  public:
    uint64_t below(uint64_t n) override;
    bool bernoulli(double p) override;
    size_t pick(std::span<const double> weights) override;

    /// Calls `body(source)` once per path; `visit(probability)` after each.
    static void enumerate(const std::function<void(RandomSource &)> &body,
                          const std::function<void(double)> &visit,
                          uint64_t max_paths = uint64_t{1} << 26);

  private:
    struct Decision {
        size_t choice;
        std::vector<double> weights;
    };
    size_t decide(std::vector<double> weights);
    bool advance();

    std::vector<Decision> path_;
    size_t cursor_ = 0;
};

}  // namespace cosetmoe

#endif
