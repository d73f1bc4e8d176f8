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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dhdcert {

using cplx = std::complex<double>;

/// Polynomial families and log-combinatorics shared by every other module.
///
/// All polynomials are evaluated by three-term recurrences. Factorials are
/// held as logarithms so that products such as eta^q * C(n+q, n) can be
/// formed without overflow. The context is immutable after construction and
/// safe to share between threads.
class PolyEvalContext {
   public:
    static constexpr int kDefaultMaxDegree = 64;
    static constexpr int kDefaultFactorialBound = 16384;

    explicit PolyEvalContext(int max_degree = kDefaultMaxDegree,
                             int factorial_bound = kDefaultFactorialBound);

    int max_degree() const noexcept {
        return max_degree_;
    }
    int factorial_bound() const noexcept {
        return static_cast<int>(log_factorial_.size()) - 1;
    }

    /// ln(n!) for 0 <= n <= factorial_bound().
    double log_factorial(int n) const;

    /// ln C(n, k). Throws kDomain when k > n.
    double log_binomial(int n, int k) const;

    /// Normalised 2-D Laguerre polynomial
    ///   sum_p sqrt(k! l!) (-1)^p / (p! (k-p)! (l-p)!) z^(l-p) conj(z)^(k-p).
    cplx laguerre2d(int k, int l, cplx z) const;

    /// Laguerre polynomial L_n(x).
    double laguerre(int n, double x) const;

    /// Generalised Laguerre polynomial L_n^(alpha)(x).
    double assoc_laguerre(int n, double alpha, double x) const;

    /// Fills out[j] = L_j(x) for j = 0..out.size()-1 in one recurrence pass.
    void laguerre_sequence(double x, std::span<double> out) const;

    /// Probabilists' Hermite polynomial He_m(z).
    cplx hermite_he(int m, cplx z) const;

   private:
    void check_degree(int n) const;

    int max_degree_;
    std::vector<double> log_factorial_;
};

/// Process-wide context with default bounds.
const PolyEvalContext &default_poly_context();

}  // namespace dhdcert
