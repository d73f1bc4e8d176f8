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
#include <string>
#include <vector>

#include "dhdcert/estimator.hpp"
#include "dhdcert/fockspace.hpp"

namespace dhdcert {

/// One local search of the rank-bounded fidelity optimisation.
struct RestartRecord {
    GaussianUnitaryParams start;
    GaussianUnitaryParams end;
    double objective = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Best fidelity with a target over states of stellar rank < k.
struct ProfilePoint {
    int k = 1;
    double max_fidelity = 0.0;
    /// G0 maximising Tr[Pi_{k-1} G |psi><psi| G^dag].
    GaussianUnitaryParams optimal_params;
    /// G0^dag applied to the renormalised truncation of G0|psi> at k-1 photons.
    CoreState optimal_state{std::vector<cplx>{cplx{1.0, 0.0}}};
    std::vector<RestartRecord> restarts;

    int rank_bound() const noexcept {
        return k - 1;
    }
};

struct StellarOptions {
    int restarts = 32;
    std::uint64_t seed = 0x5eed5eedull;
    double r_box = 2.0;
    double beta_radius = 3.0;
    /// Worker threads for restarts; <= 0 uses default_thread_count().
    int threads = 0;
};

/// sum_{m<k} |<m|G|psi>|^2 for the target psi.
double rank_bounded_objective(const CoreState &target, int k, const GaussianUnitaryParams &g);

/// Multi-start maximisation over G = S(xi) D(beta). Throws kOptimizerFailure
/// if no restart converges.
ProfilePoint max_fidelity_rank_bounded(const CoreState &target, int k,
                                       const StellarOptions &options = {});

/// sqrt(1 - max fidelity over rank < k).
double k_robustness(const CoreState &target, int k, const StellarOptions &options = {});

/// Profile points for k = 1..k_max.
std::vector<ProfilePoint> fidelity_profile(const CoreState &target, int k_max,
                                           const StellarOptions &options = {});

/// CSV `k,max_fidelity,r,theta,re_beta,im_beta`.
void write_profile_csv(const std::vector<ProfilePoint> &profile, std::ostream &out);

/// Maximum Gaussian fidelity with cos(phi)|0> + e^{i chi} sin(phi)|1>.
double rank1_core_profile(double phi, double chi, const StellarOptions &options = {});

struct RankVerdict {
    int certified_rank = 0;
    double confidence = 0.0;
    /// Threshold cleared for the certified rank (or the rank-1 threshold if
    /// nothing was certified).
    double threshold_used = 0.0;
};

/// Largest k with value - half_width > max fidelity over rank < k.
RankVerdict rank_witness_verdict(const ConfidenceEstimate &estimate, const CoreState &target,
                                 const StellarOptions &options = {});
/// Same, with thresholds[k-1] the precomputed max fidelity for rank < k.
RankVerdict rank_witness_verdict(const ConfidenceEstimate &estimate,
                                 const std::vector<double> &thresholds);

std::string verdict_json(const RankVerdict &verdict);

/// Stellar function P(z) exp(S z^2 + D z) of a finite-rank pure state.
struct StellarPoly {
    std::vector<cplx> coeffs{cplx{1.0}};
    cplx s{0.0, 0.0};
    cplx d{0.0, 0.0};

    int degree() const noexcept {
        return static_cast<int>(coeffs.size()) - 1;
    }
};

/// Stellar function of G|C>; the polynomial degree equals the stellar rank.
StellarPoly stellar_from_core(const CoreState &core);

/// Stellar function of a|psi> (unnormalised): P' + (2 S z + D) P.
/// Throws kUndefinedSubtraction when the result vanishes.
StellarPoly stellar_subtract(const StellarPoly &poly);

/// Zeros of P inside |z| < radius, by the argument principle.
int stellar_zero_count(const StellarPoly &poly, double radius, int steps = 8192);

}  // namespace dhdcert
