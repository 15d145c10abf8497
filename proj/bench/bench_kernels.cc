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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "cosetmoe/kernels.h"
#include "cosetmoe/moe.h"
#include "cosetmoe/rng.h"

namespace {

using cosetmoe::Amp;
using cosetmoe::kernels::Exec;

std::vector<Amp> random_state(size_t nq) {
    cosetmoe::TrialRng rng(7, nq);
    std::vector<Amp> psi(size_t{1} << nq);
    double norm = 0;
    for (Amp &a : psi) {
        a = Amp(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
        norm += std::norm(a);
    }
    for (Amp &a : psi) {
        a /= std::sqrt(norm);
    }
    return psi;
}

Exec exec_of(const benchmark::State &state) {
    return state.range(1) == 0 ? Exec::kSerial : Exec::kParallel;
}

void BM_Hadamard(benchmark::State &state) {
    const size_t nq = static_cast<size_t>(state.range(0));
    auto psi = random_state(nq);
    const Exec exec = exec_of(state);
    for (auto _ : state) {
        for (size_t q = 0; q < nq; q++) {
            cosetmoe::kernels::hadamard(psi, nq, q, exec);
        }
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(nq << nq));
}

void BM_Cnot(benchmark::State &state) {
    const size_t nq = static_cast<size_t>(state.range(0));
    auto psi = random_state(nq);
    const Exec exec = exec_of(state);
    for (auto _ : state) {
        for (size_t q = 0; q + 1 < nq; q++) {
            cosetmoe::kernels::cnot(psi, nq, q, q + 1, exec);
        }
        benchmark::DoNotOptimize(psi.data());
    }
}

void BM_PermuteLinear(benchmark::State &state) {
    const size_t nq = static_cast<size_t>(state.range(0));
    auto psi = random_state(nq);
    const Exec exec = exec_of(state);
    std::vector<size_t> qubits(nq);
    std::iota(qubits.begin(), qubits.end(), 0);
    // Lower-triangular L: e_i -> e_i + e_{i+1}.
    std::vector<uint64_t> images(nq);
    for (size_t i = 0; i < nq; i++) {
        uint64_t e = uint64_t{1} << (nq - 1 - i);
        images[i] = i + 1 < nq ? e | (e >> 1) : e;
    }
    for (auto _ : state) {
        cosetmoe::kernels::permute_linear(psi, nq, qubits, images, exec);
        benchmark::DoNotOptimize(psi.data());
    }
}

void BM_Abs2(benchmark::State &state) {
    const size_t nq = static_cast<size_t>(state.range(0));
    auto psi = random_state(nq);
    std::vector<double> out(psi.size());
    const Exec exec = exec_of(state);
    for (auto _ : state) {
        cosetmoe::kernels::abs2(psi, out, exec);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_MoeTrials(benchmark::State &state) {
    cosetmoe::MoeParams p;
    p.n = 8;
    p.trials = 20000;
    auto s = cosetmoe::builtin_strategy("measure_wiesner");
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) {
        auto g = parallel ? cosetmoe::play_leaky(p, *s) : cosetmoe::play_leaky_serial(p, *s);
        benchmark::DoNotOptimize(g.wins);
    }
}

void kernel_args(benchmark::internal::Benchmark *b) {
    for (int nq : {12, 16, 20}) {
        b->Args({nq, 0});
        b->Args({nq, 1});
    }
    b->ArgNames({"qubits", "parallel"});
}

}  // namespace

BENCHMARK(BM_Hadamard)->Apply(kernel_args);
BENCHMARK(BM_Cnot)->Apply(kernel_args);
BENCHMARK(BM_PermuteLinear)->Apply(kernel_args);
BENCHMARK(BM_Abs2)->Apply(kernel_args);
BENCHMARK(BM_MoeTrials)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
