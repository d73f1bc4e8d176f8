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

#include "dhdcert/estimator.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "dhdcert/error.hpp"
#include "dhdcert/parallel.hpp"

namespace dhdcert {
namespace {

constexpr std::int64_t kChunk = 4096;
constexpr int kRangeScanPoints = 10000;
// Beyond x_max the kernel is certified below this fraction of the range.
constexpr double kRangeTailFraction = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);

const PolyEvalContext &ctx() {
    return default_poly_context();
}

void check_eta(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw Error(ErrorCode::kDomain, "eta must lie in (0, 1), got " + std::to_string(eta));
    }
}

void check_p(int p) {
    if (p < 1) {
        throw Error(ErrorCode::kDomain, "p must be at least 1");
    }
}

// Diagonal operators reduce to a radial kernel in x = |z|^2 / eta:
//   sum_k a_k h_k(z) = e^{-(1-eta) x} sum_m c_m L_m(x) + offset.
class RadialKernel {
   public:
    RadialKernel(const std::vector<double> &weights, int p, double eta) : eta_(eta) {
        check_eta(eta);
        check_p(p);
        int top = 0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            if (weights[k] != 0.0) {
                top = static_cast<int>(k) + p;
            }
        }
        coef_.assign(static_cast<std::size_t>(std::max(top, 1)), 0.0);
        const double log_eta = std::log(eta);
        for (std::size_t kk = 0; kk < weights.size(); ++kk) {
            double a = weights[kk];
            if (a == 0.0) {
                continue;
            }
            int k = static_cast<int>(kk);
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            for (int m = k; m < k + p; ++m) {
                coef_[m] += a * sign * std::exp(-(k + 1) * log_eta + ctx().log_binomial(m, k));
            }
            offset_ += a * ((p % 2 == 0) ? 1.0 : -1.0) * bias_bound(k, p, eta);
        }
        if (static_cast<int>(coef_.size()) - 1 > ctx().max_degree()) {
            throw Error(ErrorCode::kConfig, "kernel degree exceeds the polynomial context bound");
        }
        lag_.resize(coef_.size());
    }

    double eta() const noexcept {
        return eta_;
    }
    double offset() const noexcept {
        return offset_;
    }
    int degree() const noexcept {
        return static_cast<int>(coef_.size()) - 1;
    }

    /// Kernel without the recentring offset, as a function of x.
    double shape(double x) const {
        ctx().laguerre_sequence(x, lag_);
        double acc = 0.0;
        for (std::size_t m = 0; m < coef_.size(); ++m) {
            acc += coef_[m] * lag_[m];
        }
        return std::exp(-(1.0 - eta_) * x) * acc;
    }

    double operator()(cplx z) const {
        return shape(std::norm(z) / eta_) + offset_;
    }

    /// e^{-(1-eta)x} sum_m |c_m| sum_i C(m,i) x^i / i!, which dominates |shape|.
    double tail_bound(double x) const {
        double acc = 0.0;
        for (std::size_t m = 0; m < coef_.size(); ++m) {
            if (coef_[m] == 0.0) {
                continue;
            }
            double lbar = 0.0;
            double term = 1.0;  // C(m,i) x^i / i!
            for (std::size_t i = 0; i <= m; ++i) {
                lbar += term;
                term *= x * static_cast<double>(m - i) / ((i + 1.0) * (i + 1.0));
            }
            acc += std::abs(coef_[m]) * lbar;
        }
        return std::exp(-(1.0 - eta_) * x) * acc;
    }

   private:
    double eta_;
    double offset_ = 0.0;
    std::vector<double> coef_;
    mutable std::vector<double> lag_;
};

struct Extremes {
    double max = -kInf;
    double min = kInf;
};

template <typename F>
double golden_max(F &&f, double lo, double hi, int iters = 60) {
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::max(f1, f2);
}

Extremes scan_extremes(const RadialKernel &k, double x_max) {
    std::vector<double> v(kRangeScanPoints + 1);
    const double h = x_max / kRangeScanPoints;
    for (int i = 0; i <= kRangeScanPoints; ++i) {
        v[i] = k.shape(i * h);
    }
    Extremes e;
    for (int i = 0; i <= kRangeScanPoints; ++i) {
        e.max = std::max(e.max, v[i]);
        e.min = std::min(e.min, v[i]);
        bool interior = i > 0 && i < kRangeScanPoints;
        if (!interior) {
            continue;
        }
        double lo = (i - 1) * h;
        double hi = (i + 1) * h;
        if (v[i] >= v[i - 1] && v[i] >= v[i + 1]) {
            e.max = std::max(e.max, golden_max([&](double x) { return k.shape(x); }, lo, hi));
        }
        if (v[i] <= v[i - 1] && v[i] <= v[i + 1]) {
            e.min = std::min(e.min, -golden_max([&](double x) { return -k.shape(x); }, lo, hi));
        }
    }
    return e;
}

double radial_range(const RadialKernel &k) {
    // The tail bound is decreasing once x exceeds degree / (1 - eta).
    double x_max = 2.0 * std::max(1.0, k.degree() / (1.0 - k.eta())) + 10.0;
    Extremes e = scan_extremes(k, x_max);
    for (int grow = 0; grow < 60; ++grow) {
        double range = std::max(e.max, 0.0) - std::min(e.min, 0.0);
        if (k.tail_bound(x_max) <= kRangeTailFraction * range) {
            break;
        }
        x_max *= 1.5;
        e = scan_extremes(k, x_max);
    }
    // Values beyond x_max lie within +-tail_bound; the limit at infinity is 0.
    double tail = k.tail_bound(x_max);
    double hi = std::max({e.max, 0.0, tail});
    double lo = std::min({e.min, 0.0, -tail});
    return hi - lo;
}

bool single_fock(const TargetOperator &a, int *n) {
    if (!a.is_diagonal()) {
        return false;
    }
    auto w = a.diagonal_weights();
    int found = -1;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0.0) {
            continue;
        }
        if (w[k] != 1.0 || found >= 0) {
            return false;
        }
        found = static_cast<int>(k);
    }
    if (found < 0) {
        return false;
    }
    *n = found;
    return true;
}

std::vector<double> diagonal_or_throw(const TargetOperator &a, const char *what) {
    if (!a.is_diagonal()) {
        throw Error(ErrorCode::kUnsupported,
                    std::string(what) + " needs a Fock-diagonal target operator");
    }
    return a.diagonal_weights();
}

// Mean and centred second moment of one block, combined in index order.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void merge(const Moments &b) {
        if (b.n == 0.0) {
            return;
        }
        if (n == 0.0) {
            *this = b;
            return;
        }
        double total = n + b.n;
        double d = b.mean - mean;
        mean += d * b.n / total;
        m2 += b.m2 + d * d * n * b.n / total;
        n = total;
    }
};

template <typename F>
Moments block_moments(std::int64_t begin, std::int64_t end, F &&value) {
    std::vector<double> buf;
    buf.reserve(static_cast<std::size_t>(end - begin));
    NeumaierSum s;
    for (std::int64_t i = begin; i < end; ++i) {
        double v = value(i);
        buf.push_back(v);
        s.add(v);
    }
    Moments m;
    m.n = static_cast<double>(buf.size());
    m.mean = s.value() / m.n;
    NeumaierSum q;
    for (double v : buf) {
        q.add((v - m.mean) * (v - m.mean));
    }
    m.m2 = q.value();
    return m;
}

struct ComplexMoments {
    Moments re;
    Moments im;
};

template <typename F>
ComplexMoments batch_moments(std::int64_t n, int threads, bool complex_valued, F &&value) {
    const std::int64_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<ComplexMoments> parts(static_cast<std::size_t>(n_chunks));
    parallel_for_chunks(n_chunks, threads, [&](std::int64_t c) {
        std::int64_t b = c * kChunk;
        std::int64_t e = std::min(n, b + kChunk);
        if (!complex_valued) {
            parts[c].re = block_moments(b, e, [&](std::int64_t i) { return value(i).real(); });
            return;
        }
        std::vector<cplx> vals;
        vals.reserve(static_cast<std::size_t>(e - b));
        for (std::int64_t i = b; i < e; ++i) {
            vals.push_back(value(i));
        }
        parts[c].re = block_moments(0, e - b, [&](std::int64_t i) { return vals[i].real(); });
        parts[c].im = block_moments(0, e - b, [&](std::int64_t i) { return vals[i].imag(); });
    });
    ComplexMoments total;
    for (const auto &part : parts) {
        total.re.merge(part.re);
        total.im.merge(part.im);
    }
    return total;
}

double sample_variance(const Moments &m) {
    return m.n > 1.0 ? m.m2 / (m.n - 1.0) : 0.0;
}

}  // namespace

std::string_view bound_method_name(BoundMethod method) {
    return method == BoundMethod::kHoeffding ? "hoeffding" : "clt";
}

BoundMethod parse_bound_method(std::string_view name) {
    if (name == "hoeffding") {
        return BoundMethod::kHoeffding;
    }
    if (name == "clt") {
        return BoundMethod::kClt;
    }
    throw Error(ErrorCode::kUsage, "unknown bound method '" + std::string(name) +
                                       "' (expected hoeffding or clt)");
}

void EstimatorConfig::validate() const {
    check_p(p);
    check_eta(eta);
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::kDomain, "epsilon must lie in (0, 1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::kDomain, "delta must lie in (0, 1)");
    }
    if (target.dim() + p - 1 > ctx().max_degree()) {
        throw Error(ErrorCode::kConfig, "target support plus p exceeds the polynomial degree bound");
    }
}

cplx kernel_f(int k, int l, cplx z, double eta) {
    check_eta(eta);
    double log_scale = -(1.0 + 0.5 * (k + l)) * std::log(eta) + (1.0 - 1.0 / eta) * std::norm(z);
    return std::exp(log_scale) * ctx().laguerre2d(l, k, z / std::sqrt(eta));
}

cplx kernel_g(int k, int l, int p, cplx z, double eta) {
    check_p(p);
    cplx acc = 0.0;
    for (int j = 0; j < p; ++j) {
        double w = std::pow(eta, j) *
                   std::exp(0.5 * (ctx().log_binomial(k + j, k) + ctx().log_binomial(l + j, l)));
        cplx term = w * kernel_f(k + j, l + j, z, eta);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

cplx kernel_g_operator(const TargetOperator &a, int p, cplx z, double eta) {
    cplx acc = 0.0;
    for (int k = 0; k < a.dim(); ++k) {
        for (int l = 0; l < a.dim(); ++l) {
            // E_Q[g_{l,k}] = rho_lk, so A_kl pairs with g_{l,k} to give Tr(A rho).
            cplx coef = a.matrix()(k, l);
            if (coef != cplx{0.0, 0.0}) {
                acc += coef * kernel_g(l, k, p, z, eta);
            }
        }
    }
    return acc;
}

int pn_threshold(int n, int p, double eta) {
    check_eta(eta);
    check_p(p);
    if (n < 0) {
        throw Error(ErrorCode::kDomain, "n must be nonnegative");
    }
    for (int q = p;; ++q) {
        double bound = (1.0 - static_cast<double>(p - 1) / q) *
                       (1.0 - static_cast<double>(n) / (n + q + 1.0));
        if (eta <= bound) {
            return q;
        }
        if (q + n >= ctx().factorial_bound()) {
            throw Error(ErrorCode::kDomain, "p_n exceeds the factorial table; eta too close to 1");
        }
    }
}

double bias_bound(int n, int p, double eta) {
    int pn = pn_threshold(n, p, eta);
    return 0.5 *
           std::exp(pn * std::log(eta) + ctx().log_binomial(pn - 1, p - 1) + ctx().log_binomial(n + pn, n));
}

double element_bias_bound(int k, int l, int p, double eta) {
    check_eta(eta);
    check_p(p);
    auto log_term = [&](int q) {
        return q * std::log(eta) + ctx().log_binomial(q - 1, p - 1) +
               0.5 * (ctx().log_binomial(k + q, q) + ctx().log_binomial(l + q, q));
    };
    // The term ratio decreases monotonically in q, so the sequence is unimodal.
    double best = log_term(p);
    for (int q = p + 1; q + std::max(k, l) < ctx().factorial_bound(); ++q) {
        double t = log_term(q);
        if (t <= best) {
            break;
        }
        best = t;
    }
    return std::exp(best);
}

double kernel_h(int n, int p, cplx z, double eta) {
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return kernel_g(n, n, p, z, eta).real() + sign * bias_bound(n, p, eta);
}

double kernel_range(int n, int p, double eta) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    w[n] = 1.0;
    return std::pow(eta, n + 1) * radial_range(RadialKernel(w, p, eta));
}

double kernel_range(const TargetOperator &a, int p, double eta) {
    return radial_range(RadialKernel(diagonal_or_throw(a, "kernel_range"), p, eta));
}

double operator_bias_bound(const TargetOperator &a, int p, double eta) {
    double acc = 0.0;
    if (a.is_diagonal()) {
        auto w = a.diagonal_weights();
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k] != 0.0) {
                acc += std::abs(w[k]) * bias_bound(static_cast<int>(k), p, eta);
            }
        }
        return acc;
    }
    for (int k = 0; k < a.dim(); ++k) {
        for (int l = 0; l < a.dim(); ++l) {
            double m = std::abs(a.matrix()(k, l));
            if (m != 0.0) {
                acc += m * element_bias_bound(k, l, p, eta);
            }
        }
    }
    return acc;
}

cplx estimator_kernel(const TargetOperator &a, int p, cplx z, double eta) {
    if (a.is_diagonal()) {
        return RadialKernel(a.diagonal_weights(), p, eta)(z);
    }
    return kernel_g_operator(a, p, z, eta);
}

double hoeffding_failure(double n_samples, double lambda, double range) {
    return 2.0 * std::exp(-2.0 * n_samples * lambda * lambda / (range * range));
}

double hoeffding_required_samples(double lambda, double delta, double range) {
    if (lambda <= 0.0) {
        return kInf;
    }
    return range * range * std::log(2.0 / delta) / (2.0 * lambda * lambda);
}

double clt_failure(double n_samples, double lambda, double variance) {
    if (variance <= 0.0) {
        return lambda > 0.0 ? 0.0 : 1.0;
    }
    return std::erfc(lambda * std::sqrt(n_samples / (2.0 * variance)));
}

double clt_required_samples(double lambda, double delta, double variance) {
    if (lambda <= 0.0) {
        return kInf;
    }
    double q = boost::math::erf_inv(1.0 - delta) / lambda;
    return 2.0 * variance * q * q;
}

ConfidenceEstimate estimate(const SampleBatch &batch, const EstimatorConfig &config, int threads) {
    config.validate();
    if (batch.samples.empty()) {
        throw Error(ErrorCode::kConfig, "cannot estimate from an empty sample batch");
    }
    const TargetOperator &a = config.target;
    const bool diagonal = a.is_diagonal();
    if (!diagonal && config.method == BoundMethod::kHoeffding) {
        throw Error(ErrorCode::kUnsupported,
                    "Hoeffding bounds are only available for Fock-diagonal targets; use clt");
    }
    ConfidenceEstimate est;
    est.method = config.method;
    est.p = config.p;
    est.eta = config.eta;
    est.half_width = config.epsilon;
    est.n_samples = static_cast<std::int64_t>(batch.samples.size());
    est.bias_bound = operator_bias_bound(a, config.p, config.eta);
    est.lambda = config.epsilon - est.bias_bound;
    if (est.lambda <= 0.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "epsilon %.6g does not exceed the bias bound; the minimal achievable "
                      "epsilon for p=%d eta=%.6g is %.6g",
                      config.epsilon, config.p, config.eta, est.bias_bound);
        throw Error(ErrorCode::kInfeasiblePrecision, buf);
    }
    int n_fock = -1;
    if (single_fock(a, &n_fock)) {
        est.p_n = pn_threshold(n_fock, config.p, config.eta);
    }

    const auto &z = batch.samples;
    ComplexMoments mom;
    if (diagonal) {
        RadialKernel kernel(a.diagonal_weights(), config.p, config.eta);
        est.kernel_range = radial_range(kernel);
        // RadialKernel keeps scratch space, so each block gets its own copy.
        const std::int64_t n = est.n_samples;
        const std::int64_t n_chunks = (n + kChunk - 1) / kChunk;
        std::vector<Moments> parts(static_cast<std::size_t>(n_chunks));
        parallel_for_chunks(n_chunks, threads, [&](std::int64_t c) {
            RadialKernel local = kernel;
            std::int64_t b = c * kChunk;
            std::int64_t e = std::min(n, b + kChunk);
            parts[c] = block_moments(b, e, [&](std::int64_t i) { return local(z[i]); });
        });
        for (const auto &part : parts) {
            mom.re.merge(part);
        }
    } else {
        mom = batch_moments(est.n_samples, threads, true, [&](std::int64_t i) {
            return kernel_g_operator(a, config.p, z[i], config.eta);
        });
    }
    est.value = cplx{mom.re.mean, mom.im.mean};
    est.kernel_variance = sample_variance(mom.re) + sample_variance(mom.im);

    const double n = static_cast<double>(est.n_samples);
    double failure = 0.0;
    if (config.method == BoundMethod::kHoeffding) {
        failure = hoeffding_failure(n, est.lambda, est.kernel_range);
        est.required_samples = hoeffding_required_samples(est.lambda, config.delta, est.kernel_range);
        est.analytic = true;
    } else {
        failure = clt_failure(n, est.lambda, est.kernel_variance);
        est.required_samples = clt_required_samples(est.lambda, config.delta, est.kernel_variance);
        est.analytic = false;
    }
    est.confidence = std::clamp(1.0 - failure, 0.0, 1.0);
    return est;
}

std::string estimate_report_json(const ConfidenceEstimate &e) {
    nlohmann::ordered_json j;
    j["value"] = e.value.real();
    if (e.value.imag() != 0.0) {
        j["value_imag"] = e.value.imag();
    }
    j["half_width"] = e.half_width;
    j["confidence"] = e.confidence;
    j["N"] = e.n_samples;
    j["method"] = std::string(bound_method_name(e.method));
    j["p"] = e.p;
    j["eta"] = e.eta;
    j["p_n"] = e.p_n >= 0 ? nlohmann::ordered_json(e.p_n) : nlohmann::ordered_json(nullptr);
    j["bias_bound"] = e.bias_bound;
    j["lambda"] = e.lambda;
    j["kernel_range"] = e.kernel_range;
    j["kernel_variance"] = e.kernel_variance;
    j["required_N"] = std::isfinite(e.required_samples)
                          ? nlohmann::ordered_json(e.required_samples)
                          : nlohmann::ordered_json(nullptr);
    j["analytic"] = e.analytic;
    return j.dump(2);
}

namespace {

struct Candidate {
    int p = 0;
    double eta = 0.0;
    double objective = kInf;
};

// Minimises objective(p, eta) over p = 1..p_max and a log-spaced eta grid,
// polishing each grid basin by golden section in log eta. Larger p only wins
// when it improves the objective by more than 1%.
template <typename F>
Candidate minimise_over_params(F &&objective, const OptimizeOptions &opt) {
    if (opt.p_max < 1 || opt.grid_points < 3 || !(opt.eta_min > 0.0) || !(opt.eta_max < 1.0) ||
        !(opt.eta_min < opt.eta_max)) {
        throw Error(ErrorCode::kConfig, "invalid optimisation options");
    }
    std::vector<Candidate> per_p;
    const double lmin = std::log(opt.eta_min);
    const double lmax = std::log(opt.eta_max);
    for (int p = 1; p <= opt.p_max; ++p) {
        std::vector<double> grid(static_cast<std::size_t>(opt.grid_points));
        std::vector<double> value(grid.size());
        for (int i = 0; i < opt.grid_points; ++i) {
            grid[i] = lmin + (lmax - lmin) * i / (opt.grid_points - 1);
            value[i] = objective(p, std::exp(grid[i]));
        }
        Candidate best{p, 0.0, kInf};
        for (int i = 0; i < opt.grid_points; ++i) {
            if (value[i] < best.objective) {
                best = {p, std::exp(grid[i]), value[i]};
            }
        }
        // Basins: grid points no worse than both neighbours.
        std::vector<int> basins;
        for (int i = 0; i < opt.grid_points; ++i) {
            if (!std::isfinite(value[i])) {
                continue;
            }
            bool left = i == 0 || value[i] <= value[i - 1];
            bool right = i + 1 == opt.grid_points || value[i] <= value[i + 1];
            if (left && right) {
                basins.push_back(i);
            }
        }
        std::sort(basins.begin(), basins.end(), [&](int a, int b) { return value[a] < value[b]; });
        if (basins.size() > 6) {
            basins.resize(6);
        }
        for (int i : basins) {
            double lo = grid[std::max(0, i - 1)];
            double hi = grid[std::min(opt.grid_points - 1, i + 1)];
            auto f = [&](double le) { return -objective(p, std::exp(le)); };
            double x1 = hi - kGolden * (hi - lo);
            double x2 = lo + kGolden * (hi - lo);
            double f1 = f(x1);
            double f2 = f(x2);
            for (int it = 0; it < 50; ++it) {
                if (f1 > f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - kGolden * (hi - lo);
                    f1 = f(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + kGolden * (hi - lo);
                    f2 = f(x2);
                }
            }
            double le = f1 > f2 ? x1 : x2;
            double v = -std::max(f1, f2);
            if (v < best.objective) {
                best = {p, std::exp(le), v};
            }
        }
        per_p.push_back(best);
    }
    double overall = kInf;
    for (const auto &c : per_p) {
        overall = std::min(overall, c.objective);
    }
    if (!std::isfinite(overall)) {
        return {};
    }
    for (const auto &c : per_p) {
        if (c.objective <= 1.01 * overall) {
            return c;
        }
    }
    return {};
}

}  // namespace

OptimizedParams optimize_params(const TargetOperator &a, double epsilon, double delta,
                                std::optional<std::int64_t> budget, const OptimizeOptions &options) {
    auto weights = diagonal_or_throw(a, "optimize_params");
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::kDomain, "epsilon and delta must lie in (0, 1)");
    }
    auto objective = [&](int p, double eta) {
        double lambda = epsilon - operator_bias_bound(a, p, eta);
        if (lambda <= 0.0) {
            return kInf;
        }
        double r = radial_range(RadialKernel(weights, p, eta));
        return r * r / (lambda * lambda);
    };
    Candidate best = minimise_over_params(objective, options);
    if (best.p == 0) {
        throw Error(ErrorCode::kInfeasiblePrecision,
                    "no feasible (p, eta) up to p = " + std::to_string(options.p_max) +
                        " for epsilon " + std::to_string(epsilon));
    }
    OptimizedParams out{EstimatorConfig{a, best.p, best.eta, epsilon, delta, BoundMethod::kHoeffding},
                        -1, 0.0, 0.0, 0.0, 0.0, std::nullopt, 0.0};
    out.bias_bound = operator_bias_bound(a, best.p, best.eta);
    out.lambda = epsilon - out.bias_bound;
    out.kernel_range = radial_range(RadialKernel(weights, best.p, best.eta));
    out.required_samples = hoeffding_required_samples(out.lambda, delta, out.kernel_range);
    int n = -1;
    if (single_fock(a, &n)) {
        out.p_n = pn_threshold(n, best.p, best.eta);
    }
    if (budget) {
        out.failure_probability =
            hoeffding_failure(static_cast<double>(*budget), out.lambda, out.kernel_range);
    }
    return out;
}

OptimizedParams optimize_params(int n, double epsilon, double delta,
                                std::optional<std::int64_t> budget, const OptimizeOptions &options) {
    return optimize_params(TargetOperator::fock_projector(n), epsilon, delta, budget, options);
}

OptimizedParams optimize_params_clt(const SampleBatch &pilot, const TargetOperator &a,
                                    double epsilon, double delta,
                                    std::optional<std::int64_t> budget,
                                    const OptimizeOptions &options) {
    auto weights = diagonal_or_throw(a, "optimize_params_clt");
    if (pilot.samples.size() < 2) {
        throw Error(ErrorCode::kConfig, "CLT parameter choice needs a pilot batch of 2+ samples");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::kDomain, "epsilon and delta must lie in (0, 1)");
    }
    std::vector<double> r2;
    r2.reserve(pilot.samples.size());
    for (cplx z : pilot.samples) {
        r2.push_back(std::norm(z));
    }
    auto variance = [&](int p, double eta) {
        RadialKernel k(weights, p, eta);
        Moments m = block_moments(0, static_cast<std::int64_t>(r2.size()),
                                  [&](std::int64_t i) { return k.shape(r2[i] / eta); });
        return sample_variance(m);
    };
    auto objective = [&](int p, double eta) {
        double lambda = epsilon - operator_bias_bound(a, p, eta);
        if (lambda <= 0.0) {
            return kInf;
        }
        return variance(p, eta) / (lambda * lambda);
    };
    Candidate best = minimise_over_params(objective, options);
    if (best.p == 0) {
        throw Error(ErrorCode::kInfeasiblePrecision,
                    "no feasible (p, eta) up to p = " + std::to_string(options.p_max));
    }
    OptimizedParams out{EstimatorConfig{a, best.p, best.eta, epsilon, delta, BoundMethod::kClt},
                        -1, 0.0, 0.0, 0.0, 0.0, std::nullopt, 0.0};
    out.bias_bound = operator_bias_bound(a, best.p, best.eta);
    out.lambda = epsilon - out.bias_bound;
    out.kernel_variance = variance(best.p, best.eta);
    out.kernel_range = radial_range(RadialKernel(weights, best.p, best.eta));
    out.required_samples = clt_required_samples(out.lambda, delta, out.kernel_variance);
    int n = -1;
    if (single_fock(a, &n)) {
        out.p_n = pn_threshold(n, best.p, best.eta);
    }
    if (budget) {
        out.failure_probability =
            clt_failure(static_cast<double>(*budget), out.lambda, out.kernel_variance);
    }
    return out;
}

}  // namespace dhdcert
