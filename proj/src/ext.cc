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

#include "cosetmoe/ext.h"

#include <cmath>
#include <stdexcept>

namespace cosetmoe {

ToeplitzExtractor::ToeplitzExtractor(size_t n_in, size_t ell) : n_in_(n_in), ell_(ell) {
    if (ell == 0 || ell > n_in) {
        throw std::invalid_argument("ToeplitzExtractor: need 1 <= ell <= n_in");
    }
}

void ToeplitzExtractor::check_seed(const Gf2Vec &seed) const {
    if (seed.size() != seed_length()) {
        throw std::invalid_argument("ToeplitzExtractor: seed has wrong length");
    }
}

Gf2Matrix ToeplitzExtractor::matrix(const Gf2Vec &seed) const {
    check_seed(seed);
    Gf2Matrix t(ell_, n_in_);
    for (size_t i = 0; i < ell_; i++) {
        for (size_t j = 0; j < n_in_; j++) {
            bool bit = j >= i ? seed.get(j - i) : seed.get(n_in_ + (i - j) - 1);
            t.set(i, j, bit);
        }
    }
    return t;
}

Gf2Vec ToeplitzExtractor::extract(const Gf2Vec &x, const Gf2Vec &seed) const {
    if (x.size() != n_in_) {
        throw std::invalid_argument("ToeplitzExtractor: input has wrong length");
    }
    check_seed(seed);
    Gf2Vec z(ell_);
    for (size_t i = 0; i < ell_; i++) {
        bool acc = false;
        for (size_t j = 0; j < n_in_; j++) {
            if (x.get(j)) {
                acc ^= j >= i ? seed.get(j - i) : seed.get(n_in_ + (i - j) - 1);
            }
        }
        z.set(i, acc);
    }
    return z;
}

double lhl_epsilon(double kappa, double ell) { return std::exp2((ell - kappa) / 2 - 1); }

}  // namespace cosetmoe
