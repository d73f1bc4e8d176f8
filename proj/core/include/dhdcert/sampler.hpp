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
#include <optional>
#include <string>
#include <vector>

#include "dhdcert/fockspace.hpp"

namespace dhdcert {

/// Outcomes of a simulated double homodyne detection.
struct SampleBatch {
    std::vector<cplx> samples;
    std::uint64_t seed = 0;
    double proposal_sigma = 0.0;
    /// accepted / proposed; 1 for an empty batch.
    double acceptance_rate = 1.0;
    std::uint64_t proposed = 0;
    std::string state_fingerprint;
    /// Set when the batch simulates unbalanced detection.
    std::optional<cplx> zeta;
    /// Net translation applied by translate_samples (informational).
    cplx translation{0.0, 0.0};
    std::vector<std::string> warnings;

    std::size_t size() const noexcept {
        return samples.size();
    }
};

struct SamplerOptions {
    /// Worker threads; <= 0 uses default_thread_count().
    int threads = 0;
};

/// Certified rejection-sampling envelope: Q(z)/Tr(rho) <= constant * proposal(z)
/// for every z, with proposal the isotropic complex Gaussian of variance sigma^2.
struct Envelope {
    double sigma = 1.0;
    double constant = 1.0;
};

Envelope rejection_envelope(const TruncatedState &state);

/// Hex digest of the density matrix bytes and trace deficit (FNV-1a, 64 bit).
std::string state_fingerprint(const TruncatedState &state);

/// i.i.d. draws from Q_rho / Tr(rho). Sample i depends only on (seed, i).
SampleBatch sample_q(const TruncatedState &state, std::int64_t n_samples, std::uint64_t seed,
                     const SamplerOptions &options = {});

/// alpha_i -> alpha_i - alpha. Estimating A on the result estimates
/// D(alpha) A D(alpha)^dag on the input.
SampleBatch translate_samples(const SampleBatch &batch, cplx alpha);

/// Unbalanced detection, simulated as sample_q of S(zeta) rho S(zeta)^dag.
SampleBatch sample_unbalanced(const TruncatedState &state, cplx zeta, std::int64_t n_samples,
                              std::uint64_t seed, const SamplerOptions &options = {},
                              int out_dim = 0);

/// Squeezing magnitude |log(R/T)| equivalent to a beam splitter with
/// reflectance R and transmittance T.
double unbalancing_zeta(double reflectance, double transmittance);

/// CSV with header `# seed=<u64> n=<N> sigma=<s> acceptance=<a>` and one
/// `re,im` line per sample at 17 significant digits.
void write_samples_csv(const SampleBatch &batch, std::ostream &out);
SampleBatch read_samples_csv(std::istream &in);

}  // namespace dhdcert
