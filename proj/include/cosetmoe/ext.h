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

#ifndef COSETMOE_EXT_H
#define COSETMOE_EXT_H

#include "cosetmoe/gf2.h"

namespace cosetmoe {

/// Seeded Toeplitz hashing Z_2^{n_in} -> Z_2^{ell}. Seed bits 0..n_in-1 form
/// the first row, left to right; bits n_in..n_in+ell-2 form the rest of the
/// first column, top to bottom.
class ToeplitzExtractor {
  public:
    ToeplitzExtractor(size_t n_in, size_t ell);

    size_t input_length() const { return n_in_; }
    size_t output_length() const { return ell_; }
    size_t seed_length() const { return n_in_ + ell_ - 1; }

    Gf2Matrix matrix(const Gf2Vec &seed) const;
    Gf2Vec extract(const Gf2Vec &x, const Gf2Vec &seed) const;

    nlohmann::json to_json() const { return {{"n_in", n_in_}, {"ell", ell_}}; }

  private:
    void check_seed(const Gf2Vec &seed) const;

    size_t n_in_;
    size_t ell_;
};

/// 2^{(ell - kappa)/2 - 1}.
double lhl_epsilon(double kappa, double ell);

}  // namespace cosetmoe

#endif
