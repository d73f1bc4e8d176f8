// Copyright 2026 The dhdcert Authors
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

#include "dhdcert/estimator.hpp"
#include "dhdcert/negativity.hpp"
#include "dhdcert/sampler.hpp"
#include "dhdcert/specfun.hpp"
#include "dhdcert/stellar.hpp"

namespace {

using namespace dhdcert;

void BM_Laguerre2d(benchmark::State &state) {
    const auto &ctx = default_poly_context();
    const int k = static_cast<int>(state.range(0));
    cplx z{0.7, -0.4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx.laguerre2d(k, k / 2, z));
    }
}
BENCHMARK(BM_Laguerre2d)->Arg(2)->Arg(8)->Arg(32);

void BM_GaussianMatrix(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    GaussianUnitaryParams g{0.4, 0.3, cplx{0.5, -0.2}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_matrix(g, n, n));
    }
}
BENCHMARK(BM_GaussianMatrix)->Arg(8)->Arg(32)->Arg(64);

void BM_SampleFock1(benchmark::State &state) {
    auto s = make_fock(1, 4);
    SamplerOptions o;
    o.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_q(s, state.range(0), 1, o));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleFock1)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SampleSubtractedSqueezed(benchmark::State &state) {
    auto s = photon_subtract(make_squeezed_thermal(squeeze_r_from_db(3.0), 0.0, 0.95, 40));
    SamplerOptions o;
    o.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_q(s, state.range(0), 1, o));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSubtractedSqueezed)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EstimateFock(benchmark::State &state) {
    auto batch = sample_q(make_lossy_fock(2, 0.8, 6), state.range(0), 2);
    EstimatorConfig cfg{TargetOperator::fock_projector(2), 3, 0.25, 0.2, 0.05,
                        BoundMethod::kHoeffding};
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate(batch, cfg, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateFock)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_KernelRange(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_range(2, 3, 0.25));
    }
}
BENCHMARK(BM_KernelRange)->Unit(benchmark::kMillisecond);

void BM_OptimizeParams(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_params(static_cast<int>(state.range(0)), 0.2, 0.05));
    }
}
BENCHMARK(BM_OptimizeParams)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MaxFidelityRankBounded(benchmark::State &state) {
    StellarOptions o;
    o.threads = 1;
    auto target = CoreState::fock(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_fidelity_rank_bounded(target, 1, o));
    }
}
BENCHMARK(BM_MaxFidelityRankBounded)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_WitnessScanPoint(benchmark::State &state) {
    auto batch = sample_q(make_fock(1, 4), 100000, 3);
    EstimatorConfig cfg{witness_operator(1), 2, 0.26, 0.2, 0.05, BoundMethod::kHoeffding};
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_omega(batch, cplx{0.3, 0.1}, 1, cfg, 1));
    }
}
BENCHMARK(BM_WitnessScanPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
