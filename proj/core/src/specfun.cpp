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

#include "dhdcert/specfun.hpp"

#include <cmath>
#include <string>

#include "dhdcert/error.hpp"

namespace dhdcert {

PolyEvalContext::PolyEvalContext(int max_degree, int factorial_bound) : max_degree_(max_degree) {
    if (max_degree < 0) {
        throw Error(ErrorCode::kConfig, "max_degree must be nonnegative");
    }
    if (factorial_bound < max_degree) {
        factorial_bound = max_degree;
    }
    log_factorial_.resize(static_cast<std::size_t>(factorial_bound) + 1);
    log_factorial_[0] = 0.0;
    for (int i = 1; i <= factorial_bound; ++i) {
        log_factorial_[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    // lgamma(2) may come back as a tiny nonzero residue.
    if (factorial_bound >= 1) {
        log_factorial_[1] = 0.0;
    }
}

void PolyEvalContext::check_degree(int n) const {
    if (n < 0 || n > max_degree_) {
        throw Error(ErrorCode::kConfig, "polynomial degree " + std::to_string(n) +
                                            " outside context bound [0, " +
                                            std::to_string(max_degree_) + "]");
    }
}

double PolyEvalContext::log_factorial(int n) const {
    if (n < 0 || n > factorial_bound()) {
        throw Error(ErrorCode::kConfig, "log_factorial argument " + std::to_string(n) +
                                            " outside table bound " +
                                            std::to_string(factorial_bound()));
    }
    return log_factorial_[n];
}

double PolyEvalContext::log_binomial(int n, int k) const {
    if (k < 0 || n < 0 || k > n) {
        throw Error(ErrorCode::kDomain,
                    "log_binomial requires 0 <= k <= n, got n=" + std::to_string(n) +
                        " k=" + std::to_string(k));
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double PolyEvalContext::assoc_laguerre(int n, double alpha, double x) const {
    check_degree(n);
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int m = 1; m < n; ++m) {
        double next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double PolyEvalContext::laguerre(int n, double x) const {
    return assoc_laguerre(n, 0.0, x);
}

void PolyEvalContext::laguerre_sequence(double x, std::span<double> out) const {
    if (out.empty()) {
        return;
    }
    check_degree(static_cast<int>(out.size()) - 1);
    out[0] = 1.0;
    if (out.size() == 1) {
        return;
    }
    out[1] = 1.0 - x;
    for (std::size_t m = 1; m + 1 < out.size(); ++m) {
        double dm = static_cast<double>(m);
        out[m + 1] = ((2.0 * dm + 1.0 - x) * out[m] - dm * out[m - 1]) / (dm + 1.0);
    }
}

cplx PolyEvalContext::laguerre2d(int k, int l, cplx z) const {
    check_degree(k);
    check_degree(l);
    // L_{k,l}(z) = (-1)^k sqrt(k!/l!) z^(l-k) L_k^(l-k)(|z|^2) for l >= k,
    // and L_{k,l}(z) = conj(L_{l,k}(z)) otherwise.
    bool swap = k > l;
    int lo = swap ? l : k;
    int hi = swap ? k : l;
    double x = std::norm(z);
    double radial = assoc_laguerre(lo, static_cast<double>(hi - lo), x);
    double scale = std::exp(0.5 * (log_factorial_[lo] - log_factorial_[hi]));
    if (lo % 2 == 1) {
        scale = -scale;
    }
    cplx w = swap ? std::conj(z) : z;
    cplx power = 1.0;
    for (int i = 0; i < hi - lo; ++i) {
        power *= w;
    }
    return scale * radial * power;
}

cplx PolyEvalContext::hermite_he(int m, cplx z) const {
    check_degree(m);
    if (m == 0) {
        return 1.0;
    }
    cplx prev = 1.0;
    cplx cur = z;
    for (int j = 1; j < m; ++j) {
        cplx next = z * cur - static_cast<double>(j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

const PolyEvalContext &default_poly_context() {
    static const PolyEvalContext context;
    return context;
}

}  // namespace dhdcert
