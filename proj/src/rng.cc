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

#include "cosetmoe/rng.h"

#include <stdexcept>

namespace cosetmoe {

uint64_t RandomSource::bits(unsigned nbits) {
    uint64_t out = 0;
    for (unsigned i = 0; i < nbits; i++) {
        out |= below(2) << i;
    }
    return out;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

TrialRng::TrialRng(uint64_t seed, uint64_t stream) {
    std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(stream + 1)),
                      splitmix64(stream)};
    engine_.seed(seq);
}

uint64_t TrialRng::below(uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("below(0)");
    }
    // Rejection sampling keeps the result exactly uniform.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double TrialRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool TrialRng::bernoulli(double p) {
    if (p <= 0) {
        return false;
    }
    if (p >= 1) {
        return true;
    }
    return uniform01() < p;
}

size_t TrialRng::pick(std::span<const double> weights) {
    double u = uniform01();
    double acc = 0;
    size_t last_nonzero = 0;
    for (size_t i = 0; i < weights.size(); i++) {
        if (weights[i] <= 0) {
            continue;
        }
        last_nonzero = i;
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    return last_nonzero;
}

uint64_t TrialRng::bits(unsigned nbits) {
    uint64_t x = engine_();
    return nbits >= 64 ? x : (x & ((uint64_t{1} << nbits) - 1));
}

size_t EnumeratingSource::decide(std::vector<double> weights) {
    if (cursor_ < path_.size()) {
        return path_[cursor_++].choice;
    }
    size_t first = 0;
    while (first < weights.size() && weights[first] <= 0) {
        first++;
    }
    if (first == weights.size()) {
        throw std::invalid_argument("EnumeratingSource: all weights are zero");
    }
    path_.push_back({first, std::move(weights)});
    cursor_++;
    return first;
}

uint64_t EnumeratingSource::below(uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("below(0)");
    }
    return decide(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool EnumeratingSource::bernoulli(double p) {
    if (p <= 0) {
        return false;
    }
    if (p >= 1) {
        return true;
    }
    return decide({1 - p, p}) == 1;
}

size_t EnumeratingSource::pick(std::span<const double> weights) {
    return decide(std::vector<double>(weights.begin(), weights.end()));
}

bool EnumeratingSource::advance() {
    while (!path_.empty()) {
        Decision &d = path_.back();
        size_t next = d.choice + 1;
        while (next < d.weights.size() && d.weights[next] <= 0) {
            next++;
        }
        if (next < d.weights.size()) {
            d.choice = next;
            return true;
        }
        path_.pop_back();
    }
    return false;
}

void EnumeratingSource::enumerate(const std::function<void(RandomSource &)> &body,
                                  const std::function<void(double)> &visit, uint64_t max_paths) {
    EnumeratingSource src;
    uint64_t paths = 0;
    do {
        if (++paths > max_paths) {
            throw std::length_error("EnumeratingSource: too many paths");
        }
        src.cursor_ = 0;
        body(src);
        if (src.cursor_ != src.path_.size()) {
            throw std::logic_error("EnumeratingSource: body is not replayable");
        }
        double p = 1;
        for (const auto &d : src.path_) {
            p *= d.weights[d.choice];
        }
        visit(p);
    } while (src.advance());
}

}  // namespace cosetmoe
