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

// Slow, independent reference implementations. Nothing here shares code with
// the library paths it is used to check.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "dhdcert/fockspace.hpp"

namespace dhdcert::oracle {

using cplx = std::complex<double>;

/// Explicit double sum defining the 2-D Laguerre polynomial.
cplx laguerre2d_sum(int k, int l, cplx z);

/// L_n(x) = sum_i (-1)^i / i! C(n, i) x^i in long double.
double laguerre_sum(int n, double x);

/// He_m(z) = m! sum_k (-1)^k z^(m-2k) / (k! (m-2k)! 2^k).
cplx hermite_sum(int m, cplx z);

/// C(n, k) built by Pascal's rule in exact big-integer arithmetic.
double exact_binomial(int n, int k);

/// ln C(n, k) from the exact binomial.
double exact_log_binomial(int n, int k);

/// <n|S(xi) D(beta)|m> block from truncated matrix exponentials on a working
/// space of `work_dim` levels.
Eigen::MatrixXcd gaussian_by_expm(const GaussianUnitaryParams &g, int rows, int cols,
                                  int work_dim = 160);

/// <n|G|m> by symbolic differentiation of the stellar function of G|m>, carried
/// out as polynomial algebra on P(z) exp(S z^2 + D z).
cplx gaussian_by_stellar(int n, int m, const GaussianUnitaryParams &g);

/// E_Q[f] = int Q_rho(z) f(z) d^2z on a polar grid (trapezoid in angle,
/// Simpson in radius up to r_max).
cplx q_expectation(const TruncatedState &state, const std::function<cplx(cplx)> &f,
                   double r_max = 9.0, int radial_panels = 1200, int angles = 64);

/// Range of f on [0, x_max] by brute-force evaluation at `points` points.
double brute_range(const std::function<double(double)> &f, double x_max, int points);

/// Adaptive Simpson integral of f on [a, b].
template <typename F>
double simpson(F &&f, double a, double b, int panels = 4000) {
    if (panels % 2 == 1) {
        ++panels;
    }
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    }
    return acc * h / 3.0;
}

/// CDF of |alpha|^2 under Q_rho / Tr(rho): the radial density is
/// e^{-u} sum_k rho_kk u^k / k!, integrated numerically on a fine grid.
class RadialCdf {
   public:
    explicit RadialCdf(const TruncatedState &state, double u_max = 200.0, int panels = 200000);
    double operator()(double u) const;

   private:
    double step_;
    std::vector<double> table_;
};

/// Kolmogorov-Smirnov statistic and asymptotic p-value of `values` against `cdf`.
struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};
KsResult ks_test(std::vector<double> values, const RadialCdf &cdf);

}  // namespace dhdcert::oracle
