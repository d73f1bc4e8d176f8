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

#include "oracles.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace dhdcert::oracle {
namespace {

long double factorial(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

using Poly = std::vector<cplx>;

Poly derivative(const Poly &p) {
    if (p.size() <= 1) {
        return Poly{0.0};
    }
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        d[i - 1] = static_cast<double>(i) * p[i];
    }
    return d;
}

// d/dz [P(z) exp(S z^2 + D z)] = [P' + (2 S z + D) P] exp(...)
Poly gauss_derivative(const Poly &p, cplx s, cplx d) {
    Poly out(p.size() + 1, 0.0);
    Poly dp = derivative(p);
    for (std::size_t i = 0; i < dp.size(); ++i) {
        out[i] += dp[i];
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += d * p[i];
        out[i + 1] += 2.0 * s * p[i];
    }
    return out;
}

}  // namespace

cplx laguerre2d_sum(int k, int l, cplx z) {
    cplx acc = 0.0;
    for (int p = 0; p <= std::min(k, l); ++p) {
        long double coef = std::sqrt(factorial(k)) * std::sqrt(factorial(l)) /
                           (factorial(p) * factorial(k - p) * factorial(l - p));
        if (p % 2 == 1) {
            coef = -coef;
        }
        acc += static_cast<double>(coef) * std::pow(z, l - p) * std::pow(std::conj(z), k - p);
    }
    return acc;
}

double laguerre_sum(int n, double x) {
    long double acc = 0.0L;
    for (int i = 0; i <= n; ++i) {
        long double term = factorial(n) / (factorial(i) * factorial(n - i)) / factorial(i) *
                           std::pow(static_cast<long double>(x), i);
        acc += (i % 2 == 0) ? term : -term;
    }
    return static_cast<double>(acc);
}

cplx hermite_sum(int m, cplx z) {
    cplx acc = 0.0;
    for (int k = 0; 2 * k <= m; ++k) {
        long double coef = factorial(m) / (factorial(k) * factorial(m - 2 * k) * std::pow(2.0L, k));
        if (k % 2 == 1) {
            coef = -coef;
        }
        acc += static_cast<double>(coef) * std::pow(z, m - 2 * k);
    }
    return acc;
}

double exact_binomial(int n, int k) {
    using boost::multiprecision::cpp_int;
    std::vector<cpp_int> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j >= 1; --j) {
            row[j] += row[j - 1];
        }
    }
    return row[k].convert_to<double>();
}

double exact_log_binomial(int n, int k) {
    return std::log(exact_binomial(n, k));
}

Eigen::MatrixXcd gaussian_by_expm(const GaussianUnitaryParams &g, int rows, int cols,
                                  int work_dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(work_dim, work_dim);
    for (int k = 1; k < work_dim; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    Eigen::MatrixXcd ad = a.adjoint();
    cplx xi = std::polar(g.squeeze_r, g.squeeze_theta);
    cplx beta = g.displacement;
    Eigen::MatrixXcd sgen = 0.5 * (xi * a * a - std::conj(xi) * ad * ad);
    Eigen::MatrixXcd dgen = beta * ad - std::conj(beta) * a;
    Eigen::MatrixXcd s = sgen.exp();
    Eigen::MatrixXcd d = dgen.exp();
    Eigen::MatrixXcd full = s * d;
    return full.topLeftCorner(rows, cols);
}

cplx gaussian_by_stellar(int n, int m, const GaussianUnitaryParams &g) {
    double c = std::cosh(g.squeeze_r);
    double sh = std::sinh(g.squeeze_r);
    double t = std::tanh(g.squeeze_r);
    cplx e = std::polar(1.0, g.squeeze_theta);
    cplx beta = g.displacement;
    cplx s_exp = -0.5 * std::conj(e) * t;
    cplx d_exp = beta / c;
    cplx k = std::exp(0.5 * e * t * beta * beta - 0.5 * std::norm(beta)) / std::sqrt(c);

    // G a^dag G^dag acts on stellar functions as c z + s e d/dz - conj(beta).
    Poly p{1.0};
    for (int j = 0; j < m; ++j) {
        Poly deriv = gauss_derivative(p, s_exp, d_exp);
        Poly next(std::max(p.size() + 1, deriv.size()), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += c * p[i];
            next[i] -= std::conj(beta) * p[i];
        }
        for (std::size_t i = 0; i < deriv.size(); ++i) {
            next[i] += sh * e * deriv[i];
        }
        p = next;
    }
    for (int j = 0; j < n; ++j) {
        p = gauss_derivative(p, s_exp, d_exp);
    }
    return k * p[0] / std::sqrt(static_cast<double>(factorial(n) * factorial(m)));
}

cplx q_expectation(const TruncatedState &state, const std::function<cplx(cplx)> &f, double r_max,
                   int radial_panels, int angles) {
    if (radial_panels % 2 == 1) {
        ++radial_panels;
    }
    const double h = r_max / radial_panels;
    const double two_pi = 6.283185307179586476925;
    cplx acc = 0.0;
    for (int i = 0; i <= radial_panels; ++i) {
        double w = (i == 0 || i == radial_panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        double r = i * h;
        cplx ring = 0.0;
        for (int j = 0; j < angles; ++j) {
            cplx z = std::polar(r, two_pi * j / angles);
            ring += husimi_q(state, z) * f(z);
        }
        acc += w * r * ring * (two_pi / angles);
    }
    return acc * h / 3.0;
}

double brute_range(const std::function<double(double)> &f, double x_max, int points) {
    double hi = 0.0;
    double lo = 0.0;
    for (int i = 0; i <= points; ++i) {
        double v = f(x_max * i / points);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    return hi - lo;
}

RadialCdf::RadialCdf(const TruncatedState &state, double u_max, int panels)
    : step_(u_max / panels), table_(static_cast<std::size_t>(panels) + 1, 0.0) {
    auto density = [&](double u) {
        long double acc = 0.0L;
        long double term = std::exp(-static_cast<long double>(u));
        for (int k = 0; k < state.dim(); ++k) {
            acc += state(k, k).real() * term;
            term *= u / (k + 1);
        }
        return static_cast<double>(acc / state.trace());
    };
    // Cumulative Simpson on each panel using its midpoint.
    for (int i = 0; i < panels; ++i) {
        double a = i * step_;
        double b = a + step_;
        table_[i + 1] = table_[i] + step_ / 6.0 * (density(a) + 4.0 * density(0.5 * (a + b)) + density(b));
    }
}

double RadialCdf::operator()(double u) const {
    if (u <= 0.0) {
        return 0.0;
    }
    double pos = u / step_;
    auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= table_.size()) {
        return table_.back();
    }
    double frac = pos - static_cast<double>(i);
    return table_[i] + frac * (table_[i + 1] - table_[i]);
}

KsResult ks_test(std::vector<double> values, const RadialCdf &cdf) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double f = cdf(values[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = 2.0 * std::exp(-2.0 * j * j * lambda * lambda);
        p += (j % 2 == 1) ? term : -term;
    }
    return {d, std::clamp(p, 0.0, 1.0)};
}

}  // namespace dhdcert::oracle
