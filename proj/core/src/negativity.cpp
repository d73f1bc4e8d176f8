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

#include "dhdcert/negativity.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "dhdcert/error.hpp"
#include "dhdcert/parallel.hpp"

namespace dhdcert {

TargetOperator witness_operator(int n) {
    if (n < 1) {
        throw Error(ErrorCode::kDomain, "witness order n must be >= 1");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        m(2 * k + 1, 2 * k + 1) = 1.0;
    }
    return TargetOperator(std::move(m));
}

double omega_true(const TruncatedState &state, cplx alpha, int n) {
    if (n < 1) {
        throw Error(ErrorCode::kDomain, "witness order n must be >= 1");
    }
    DisplacedPopulations pops = displaced_populations(state, alpha);
    if (pops.tail_mass > 1e-6) {
        throw Error(ErrorCode::kCutoff, "displaced state truncation loses more than 1e-6 mass");
    }
    double omega = 0.0;
    for (int k = 0; k < n; ++k) {
        auto idx = static_cast<std::size_t>(2 * k + 1);
        if (idx < pops.populations.size()) {
            omega += pops.populations[idx];
        }
    }
    return omega;
}

WitnessResult witness_from_estimate(const ConfidenceEstimate &e, cplx alpha, int n) {
    WitnessResult r;
    r.alpha = alpha;
    r.n = n;
    r.omega_estimate = e.value.real();
    r.half_width = e.half_width;
    // The two-sided failure splits evenly between the tails.
    r.confidence = std::clamp(1.0 - (1.0 - e.confidence) / 2.0, 0.0, 1.0);
    r.negativity_certified = r.lower_bound() > 0.5;
    r.wigner_upper_bound = (2.0 / std::numbers::pi) * (1.0 - 2.0 * r.lower_bound());
    return r;
}

namespace {

WitnessResult from_translated(const SampleBatch &translated, cplx alpha, int n,
                              const EstimatorConfig &witness_config, int threads) {
    return witness_from_estimate(estimate(translated, witness_config, threads), alpha, n);
}

EstimatorConfig with_witness(const EstimatorConfig &config, int n) {
    EstimatorConfig c = config;
    c.target = witness_operator(n);
    c.validate();
    return c;
}

}  // namespace

WitnessResult estimate_omega(const SampleBatch &batch, cplx alpha, int n,
                             const EstimatorConfig &config, int threads) {
    return from_translated(translate_samples(batch, alpha), alpha, n, with_witness(config, n),
                           threads);
}

std::vector<WitnessResult> witness_scan(const SampleBatch &batch, const std::vector<cplx> &alphas,
                                        int n, const EstimatorConfig &config, int threads) {
    const EstimatorConfig c = with_witness(config, n);
    std::vector<WitnessResult> out(alphas.size());
    // Points are independent; each writes its own slot and runs single
    // threaded so the scan output does not depend on scheduling.
    parallel_for_chunks(static_cast<std::int64_t>(alphas.size()), threads, [&](std::int64_t i) {
        auto idx = static_cast<std::size_t>(i);
        out[idx] = from_translated(translate_samples(batch, alphas[idx]), alphas[idx], n, c, 1);
    });
    return out;
}

std::vector<WitnessResult> witness_scan(const TruncatedState &state,
                                        const std::vector<cplx> &alphas, int n,
                                        const EstimatorConfig &config, std::int64_t n_samples,
                                        std::uint64_t seed, int threads) {
    if (alphas.empty()) {
        return {};
    }
    SamplerOptions opts;
    opts.threads = threads;
    SampleBatch batch = sample_q(state, n_samples, seed, opts);
    return witness_scan(batch, alphas, n, config, threads);
}

std::vector<cplx> square_grid(int points, double half_extent) {
    if (points < 1 || !(half_extent >= 0.0)) {
        throw Error(ErrorCode::kDomain, "grid needs points >= 1 and half_extent >= 0");
    }
    std::vector<cplx> grid;
    grid.reserve(static_cast<std::size_t>(points) * static_cast<std::size_t>(points));
    auto coord = [&](int i) {
        return points == 1 ? 0.0 : -half_extent + 2.0 * half_extent * i / (points - 1);
    };
    for (int j = 0; j < points; ++j) {
        for (int i = 0; i < points; ++i) {
            grid.emplace_back(coord(i), coord(j));
        }
    }
    return grid;
}

void write_scan_csv(const std::vector<WitnessResult> &results, std::ostream &out) {
    out << "re_alpha,im_alpha,omega,half_width,lower_bound,certified\n";
    char buf[256];
    for (const auto &r : results) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.alpha.real(),
                      r.alpha.imag(), r.omega_estimate, r.half_width, r.lower_bound(),
                      r.negativity_certified ? 1 : 0);
        out << buf;
    }
}

}  // namespace dhdcert
