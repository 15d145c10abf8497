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

#ifndef COSETMOE_TRIALS_H
#define COSETMOE_TRIALS_H

#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>

namespace cosetmoe {

/// Thread count to use: `requested` if positive, else COSETMOE_THREADS, else
/// the OpenMP default.
int resolve_threads(int requested);

/// Runs body(trial, counters) for trial = 0..trials-1 and sums the counters.
/// Each trial must derive its randomness from its index only, so the totals do
/// not depend on the thread count or schedule.
template <size_t K, class Body>
std::array<uint64_t, K> count_trials(uint64_t trials, int threads, Body &&body) {
    std::array<uint64_t, K> total{};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::mutex mu;
    const int nt = resolve_threads(threads);
#pragma omp parallel num_threads(nt)
    {
        std::array<uint64_t, K> local{};
#pragma omp for schedule(dynamic, 64)
        for (int64_t i = 0; i < static_cast<int64_t>(trials); i++) {
            if (failed.load(std::memory_order_relaxed)) {
                continue;
            }
            try {
                body(static_cast<uint64_t>(i), local);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        for (size_t k = 0; k < K; k++) {
            total[k] += local[k];
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return total;
}

/// Single-threaded reference for count_trials.
template <size_t K, class Body>
std::array<uint64_t, K> count_trials_serial(uint64_t trials, Body &&body) {
    std::array<uint64_t, K> total{};
    for (uint64_t i = 0; i < trials; i++) {
        body(i, total);
    }
    return total;
}

}  // namespace cosetmoe

#endif
