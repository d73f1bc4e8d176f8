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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dhdcert/estimator.hpp"
#include "dhdcert/fockspace.hpp"
#include "dhdcert/sampler.hpp"

namespace dhdcert {

/// Estimated displaced odd-population witness at one phase-space point.
///
/// omega > 1/2 implies W(alpha) < 0. The confidence is one-sided: it is the
/// probability that omega_estimate - half_width lies below the true value.
struct WitnessResult {
    cplx alpha{0.0, 0.0};
    int n = 1;
    double omega_estimate = 0.0;
    double half_width = 0.0;
    double confidence = 0.0;
    bool negativity_certified = false;
    /// (2/pi)(1 - 2 lower_bound()).
    double wigner_upper_bound = 0.0;

    double lower_bound() const noexcept {
        return omega_estimate - half_width;
    }
};

/// sum_{k<n} |2k+1><2k+1|.
TargetOperator witness_operator(int n);

/// Exact sum_{k<n} <2k+1| D(alpha)^dag rho D(alpha) |2k+1>. Throws kCutoff
/// if the displaced state loses more than 1e-6 of its mass to truncation.
double omega_true(const TruncatedState &state, cplx alpha, int n);

/// Witness verdict from an estimate of witness_operator(n) on samples
/// already translated by alpha.
WitnessResult witness_from_estimate(const ConfidenceEstimate &estimate, cplx alpha, int n);

/// Translates the batch by alpha and estimates the witness. The target in
/// `config` is replaced by witness_operator(n).
WitnessResult estimate_omega(const SampleBatch &batch, cplx alpha, int n,
                             const EstimatorConfig &config, int threads = 0);

/// One shared batch, every grid point estimated from translated copies.
/// Output order follows `alphas`. Per-point confidence is marginal, not
/// simultaneous over the grid.
std::vector<WitnessResult> witness_scan(const SampleBatch &batch, const std::vector<cplx> &alphas,
                                        int n, const EstimatorConfig &config, int threads = 0);

/// Draws n_samples from the state with `seed`, then scans.
std::vector<WitnessResult> witness_scan(const TruncatedState &state,
                                        const std::vector<cplx> &alphas, int n,
                                        const EstimatorConfig &config, std::int64_t n_samples,
                                        std::uint64_t seed, int threads = 0);

/// points x points grid over [-half_extent, half_extent]^2, real part
/// varying fastest.
std::vector<cplx> square_grid(int points, double half_extent);

/// CSV `re_alpha,im_alpha,omega,half_width,lower_bound,certified`.
void write_scan_csv(const std::vector<WitnessResult> &results, std::ostream &out);

}  // namespace dhdcert
