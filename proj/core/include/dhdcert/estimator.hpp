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
#include <optional>
#include <string>

#include "dhdcert/fockspace.hpp"
#include "dhdcert/sampler.hpp"

namespace dhdcert {

enum class BoundMethod { kHoeffding, kClt };

std::string_view bound_method_name(BoundMethod method);
BoundMethod parse_bound_method(std::string_view name);

/// Target, free parameters (p, eta) and requested precision of one estimate.
struct EstimatorConfig {
    TargetOperator target;
    int p = 1;
    double eta = 0.5;
    double epsilon = 0.1;
    double delta = 0.05;
    BoundMethod method = BoundMethod::kHoeffding;

    /// Throws kDomain / kConfig on out-of-range parameters.
    void validate() const;
};

struct ConfidenceEstimate {
    cplx value{0.0, 0.0};
    /// epsilon: |value - Tr(A rho)| <= half_width with probability `confidence`.
    double half_width = 0.0;
    double confidence = 0.0;
    std::int64_t n_samples = 0;
    BoundMethod method = BoundMethod::kHoeffding;
    double bias_bound = 0.0;
    double lambda = 0.0;
    /// Range of the (unscaled) estimator kernel; 0 when not computed.
    double kernel_range = 0.0;
    int p = 1;
    double eta = 0.5;
    /// p_n for single Fock targets, -1 otherwise.
    int p_n = -1;
    /// Sample variance of the kernel values (per component sum for complex kernels).
    double kernel_variance = 0.0;
    /// Samples needed to reach (epsilon, delta) under `method`.
    double required_samples = 0.0;
    /// False for the CLT interval, whose confidence is asymptotic.
    bool analytic = true;
};

// --- kernels -----------------------------------------------------------------

/// eta^{-1-(k+l)/2} exp((1 - 1/eta)|z|^2) L_{l,k}(z / sqrt(eta)).
cplx kernel_f(int k, int l, cplx z, double eta);

/// sum_{j<p} (-1)^j f_{k+j,l+j}(z) eta^j sqrt(C(k+j,k) C(l+j,l)). Its mean over
/// Q_rho is <k|rho|l> up to the bias series.
cplx kernel_g(int k, int l, int p, cplx z, double eta);

/// sum_kl A_kl g_{l,k}; estimates Tr(A rho) = sum_kl A_kl <l|rho|k>.
cplx kernel_g_operator(const TargetOperator &a, int p, cplx z, double eta);

/// min { q >= p : eta <= (1 - (p-1)/q)(1 - n/(n+q+1)) }.
int pn_threshold(int n, int p, double eta);

/// (1/2) eta^{p_n} C(p_n - 1, p - 1) C(n + p_n, n).
double bias_bound(int n, int p, double eta);

/// Bias bound for |k><l| with the uncentred kernel g:
/// max_{q>=p} eta^q C(q-1, p-1) sqrt(C(k+q, q) C(l+q, q)).
double element_bias_bound(int k, int l, int p, double eta);

/// g_{n,n} + (1/2)(-1)^p eta^{p_n} C(p_n-1, p-1) C(n+p_n, n).
double kernel_h(int n, int p, cplx z, double eta);

/// Range over z of eta^{n+1} g_{n,n}(z).
double kernel_range(int n, int p, double eta);

/// Range over z of the combined kernel sum_k A_kk h_k for a diagonal operator.
/// Throws kUnsupported for operators with off-diagonal entries.
double kernel_range(const TargetOperator &a, int p, double eta);

/// Bias bound of the estimator used for `a`: sum_k |A_kk| bias_bound(k) for
/// diagonal operators, sum_kl |A_kl| element_bias_bound(k, l) otherwise.
double operator_bias_bound(const TargetOperator &a, int p, double eta);

/// Kernel value used by estimate() for sample z (real for diagonal targets).
cplx estimator_kernel(const TargetOperator &a, int p, cplx z, double eta);

// --- concentration -------------------------------------------------------------

/// 2 exp(-2 N lambda^2 / R^2).
double hoeffding_failure(double n_samples, double lambda, double range);
/// R^2 ln(2/delta) / (2 lambda^2).
double hoeffding_required_samples(double lambda, double delta, double range);
/// 1 - erf(lambda sqrt(N / (2 sigma^2))).
double clt_failure(double n_samples, double lambda, double variance);
/// 2 sigma^2 (erfinv(1 - delta) / lambda)^2.
double clt_required_samples(double lambda, double delta, double variance);

// --- estimation ---------------------------------------------------------------

/// Mean of the estimator kernel over the batch plus its confidence statement.
/// Throws kInfeasiblePrecision when epsilon does not exceed the bias bound.
ConfidenceEstimate estimate(const SampleBatch &batch, const EstimatorConfig &config,
                            int threads = 0);

/// Report JSON with keys value, half_width, confidence, N, method, p, eta,
/// p_n, bias_bound, lambda, kernel_range (plus a few diagnostics).
std::string estimate_report_json(const ConfidenceEstimate &estimate);

// --- parameter optimisation -----------------------------------------------------

struct OptimizedParams {
    EstimatorConfig config;
    int p_n = -1;
    double required_samples = 0.0;
    double bias_bound = 0.0;
    double kernel_range = 0.0;
    double lambda = 0.0;
    /// Failure probability at the sample budget, when one was given.
    std::optional<double> failure_probability;
    /// Pilot kernel variance (CLT optimisation only).
    double kernel_variance = 0.0;
};

struct OptimizeOptions {
    int p_max = 8;
    int grid_points = 200;
    double eta_min = 1e-3;
    double eta_max = 1.0 - 1e-3;
};

/// Hoeffding-optimal (p, eta) for the diagonal operator `a`; minimising the
/// required N at fixed delta has the same argmin as minimising the failure
/// probability at a fixed budget.
OptimizedParams optimize_params(const TargetOperator &a, double epsilon, double delta,
                                std::optional<std::int64_t> budget = std::nullopt,
                                const OptimizeOptions &options = {});
OptimizedParams optimize_params(int n, double epsilon, double delta,
                                std::optional<std::int64_t> budget = std::nullopt,
                                const OptimizeOptions &options = {});

/// (p, eta) maximising lambda^2 / sigma^2, with sigma^2 the kernel variance over
/// a pilot batch (which must be independent of the batch later estimated).
OptimizedParams optimize_params_clt(const SampleBatch &pilot, const TargetOperator &a,
                                    double epsilon, double delta,
                                    std::optional<std::int64_t> budget = std::nullopt,
                                    const OptimizeOptions &options = {});

}  // namespace dhdcert
