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

#include "dhdcert/sampler.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dhdcert/error.hpp"
#include "dhdcert/parallel.hpp"
#include "dhdcert/philox.hpp"

namespace dhdcert {
namespace {

constexpr std::int64_t kChunk = 4096;
constexpr double kEnvelopeInflation = 1.2;
constexpr int kEnvelopeGrid = 4000;
constexpr double kLowAcceptance = 1e-3;

// Q(z) = (1/pi) sum_j w_j |<v_j|z>|^2 from the eigen-decomposition of rho.
class HusimiEvaluator {
   public:
    explicit HusimiEvaluator(const TruncatedState &state) : dim_(state.dim()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.matrix());
        double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
        std::vector<int> keep;
        for (int j = 0; j < dim_; ++j) {
            if (es.eigenvalues()(j) > 1e-14 * top) {
                keep.push_back(j);
            }
        }
        factors_.resize(static_cast<Eigen::Index>(keep.size()), dim_);
        for (std::size_t i = 0; i < keep.size(); ++i) {
            double w = std::sqrt(es.eigenvalues()(keep[i]));
            factors_.row(static_cast<Eigen::Index>(i)) =
                w * es.eigenvectors().col(keep[i]).adjoint();
        }
    }

    double operator()(cplx z, Eigen::VectorXcd &scratch) const {
        scratch.resize(dim_);
        scratch(0) = std::exp(-0.5 * std::norm(z));
        for (int k = 1; k < dim_; ++k) {
            scratch(k) = scratch(k - 1) * z / std::sqrt(static_cast<double>(k));
        }
        return (factors_ * scratch).squaredNorm() / std::numbers::pi;
    }

   private:
    int dim_;
    Eigen::MatrixXcd factors_;
};

double log_sum_exp(const std::vector<double> &terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (double t : terms) {
        top = std::max(top, t);
    }
    if (!std::isfinite(top)) {
        return top;
    }
    double acc = 0.0;
    for (double t : terms) {
        acc += std::exp(t - top);
    }
    return top + std::log(acc);
}

}  // namespace

Envelope rejection_envelope(const TruncatedState &state) {
    const int d = state.dim();
    const double var_n = state.photon_number_variance();
    Envelope env;
    env.sigma = std::sqrt(1.0 + state.mean_photon_number() + 3.0 * std::sqrt(var_n + 1.0));
    const double s2 = env.sigma * env.sigma;
    const auto &ctx = default_poly_context();

    // |<z|rho|z>| <= e^{-r^2} sum_kl |rho_kl| r^(k+l) / sqrt(k! l!), grouped by
    // total degree. The ratio to the proposal is then a 1-D function of r.
    std::vector<double> log_coef(static_cast<std::size_t>(2 * d - 1),
                                 -std::numeric_limits<double>::infinity());
    for (int m = 0; m <= 2 * d - 2; ++m) {
        std::vector<double> terms;
        for (int k = std::max(0, m - d + 1); k <= std::min(m, d - 1); ++k) {
            double a = std::abs(state(k, m - k));
            if (a > 0.0) {
                terms.push_back(std::log(a) - 0.5 * (ctx.log_factorial(k) +
                                                     ctx.log_factorial(m - k)));
            }
        }
        if (!terms.empty()) {
            log_coef[m] = log_sum_exp(terms);
        }
    }
    auto log_ratio = [&](double r) {
        std::vector<double> terms;
        double lr = std::log(std::max(r, 1e-300));
        for (int m = 0; m <= 2 * d - 2; ++m) {
            if (std::isfinite(log_coef[m])) {
                terms.push_back(log_coef[m] + (m == 0 ? 0.0 : m * lr));
            }
        }
        return std::log(s2) - r * r * (1.0 - 1.0 / s2) + log_sum_exp(terms);
    };
    const double r_max = 12.0 * env.sigma;
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= kEnvelopeGrid; ++i) {
        double v = log_ratio(r_max * i / kEnvelopeGrid);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    // Golden-section polish in the bracketing cell pair.
    double lo = r_max * std::max(0, best_i - 1) / kEnvelopeGrid;
    double hi = r_max * std::min(kEnvelopeGrid, best_i + 1) / kEnvelopeGrid;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = log_ratio(x1);
    double f2 = log_ratio(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = log_ratio(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = log_ratio(x2);
        }
    }
    best = std::max({best, f1, f2});
    env.constant = kEnvelopeInflation * std::exp(best) / state.trace();
    return env;
}

std::string state_fingerprint(const TruncatedState &state) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void *data, std::size_t n) {
        const auto *bytes = static_cast<const unsigned char *>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    int d = state.dim();
    mix(&d, sizeof d);
    for (int l = 0; l < d; ++l) {
        for (int k = 0; k < d; ++k) {
            double re = state(k, l).real();
            double im = state(k, l).imag();
            mix(&re, sizeof re);
            mix(&im, sizeof im);
        }
    }
    double deficit = state.trace_deficit();
    mix(&deficit, sizeof deficit);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

SampleBatch sample_q(const TruncatedState &state, std::int64_t n_samples, std::uint64_t seed,
                     const SamplerOptions &options) {
    if (n_samples < 0) {
        throw Error(ErrorCode::kConfig, "sample count must be nonnegative");
    }
    if (state.trace_deficit() >= kTruncationTolerance) {
        throw Error(ErrorCode::kCutoff, "state trace deficit " +
                                            std::to_string(state.trace_deficit()) +
                                            " is too large to sample from");
    }
    SampleBatch batch;
    batch.seed = seed;
    batch.state_fingerprint = state_fingerprint(state);
    Envelope env = rejection_envelope(state);
    batch.proposal_sigma = env.sigma;
    if (1.0 / env.constant < kLowAcceptance) {
        batch.warnings.push_back("expected acceptance rate " + std::to_string(1.0 / env.constant) +
                                 " is below 1e-3");
    }
    if (n_samples == 0) {
        return batch;
    }

    HusimiEvaluator q(state);
    const double s2 = env.sigma * env.sigma;
    const double inv_trace = 1.0 / state.trace();
    const auto key = Philox4x32::key_from_seed(seed);
    batch.samples.resize(static_cast<std::size_t>(n_samples));
    const std::int64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> proposals(static_cast<std::size_t>(n_chunks), 0);

    parallel_for_chunks(n_chunks, options.threads, [&](std::int64_t chunk) {
        Eigen::VectorXcd scratch;
        std::uint64_t attempts = 0;
        std::int64_t end = std::min(n_samples, (chunk + 1) * kChunk);
        for (std::int64_t i = chunk * kChunk; i < end; ++i) {
            auto idx = static_cast<std::uint64_t>(i);
            for (std::uint32_t attempt = 0;; ++attempt) {
                ++attempts;
                auto x = Philox4x32::generate({static_cast<std::uint32_t>(idx),
                                               static_cast<std::uint32_t>(idx >> 32), attempt, 0},
                                              key);
                double radius = env.sigma * std::sqrt(-std::log(uniform_open_closed(x[0], x[1])));
                double angle = 2.0 * std::numbers::pi * uniform_open(x[2]);
                cplx z = std::polar(radius, angle);
                double density = q(z, scratch) * inv_trace;
                double proposal = std::exp(-radius * radius / s2) / (std::numbers::pi * s2);
                double bound = env.constant * proposal;
                if (density > bound) {
                    throw Error(ErrorCode::kEnvelopeViolation,
                                "rejection envelope violated at |z| = " + std::to_string(radius));
                }
                if (uniform_open(x[3]) * bound < density) {
                    batch.samples[static_cast<std::size_t>(i)] = z;
                    break;
                }
                if (attempt == std::numeric_limits<std::uint32_t>::max()) {
                    throw Error(ErrorCode::kEnvelopeViolation, "rejection sampler did not accept");
                }
            }
        }
        proposals[static_cast<std::size_t>(chunk)] = attempts;
    });
    for (std::uint64_t p : proposals) {
        batch.proposed += p;
    }
    batch.acceptance_rate = static_cast<double>(n_samples) / static_cast<double>(batch.proposed);
    if (batch.acceptance_rate < kLowAcceptance) {
        batch.warnings.push_back("acceptance rate below 1e-3");
    }
    return batch;
}

SampleBatch translate_samples(const SampleBatch &batch, cplx alpha) {
    SampleBatch out = batch;
    for (cplx &z : out.samples) {
        z -= alpha;
    }
    out.translation += alpha;
    return out;
}

SampleBatch sample_unbalanced(const TruncatedState &state, cplx zeta, std::int64_t n_samples,
                              std::uint64_t seed, const SamplerOptions &options, int out_dim) {
    GaussianUnitaryParams g{std::abs(zeta), std::arg(zeta), 0.0};
    SampleBatch batch;
    if (g.is_identity()) {
        batch = sample_q(state, n_samples, seed, options);
    } else {
        int dim = out_dim > 0 ? out_dim : gaussian_output_dim(state, g);
        batch = sample_q(apply_gaussian(state, g, dim), n_samples, seed, options);
    }
    batch.zeta = zeta;
    return batch;
}

double unbalancing_zeta(double reflectance, double transmittance) {
    if (!(reflectance > 0.0 && transmittance > 0.0)) {
        throw Error(ErrorCode::kDomain, "reflectance and transmittance must be positive");
    }
    return std::abs(std::log(reflectance / transmittance));
}

void write_samples_csv(const SampleBatch &batch, std::ostream &out) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "# seed=%" PRIu64 " n=%zu sigma=%.17g acceptance=%.17g\n",
                  batch.seed, batch.samples.size(), batch.proposal_sigma, batch.acceptance_rate);
    out << buf;
    for (const cplx &z : batch.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        out << buf;
    }
}

SampleBatch read_samples_csv(std::istream &in) {
    SampleBatch batch;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream hdr(line.substr(1));
            std::string field;
            while (hdr >> field) {
                auto eq = field.find('=');
                if (eq == std::string::npos) {
                    continue;
                }
                std::string key = field.substr(0, eq);
                std::string value = field.substr(eq + 1);
                try {
                    if (key == "seed") {
                        batch.seed = std::stoull(value);
                    } else if (key == "sigma") {
                        batch.proposal_sigma = std::stod(value);
                    } else if (key == "acceptance") {
                        batch.acceptance_rate = std::stod(value);
                    }
                } catch (const std::exception &) {
                    throw Error(ErrorCode::kIo, "bad header field '" + field + "'");
                }
            }
            continue;
        }
        auto comma = line.find(',');
        char *end_re = nullptr;
        char *end_im = nullptr;
        double re = std::strtod(line.c_str(), &end_re);
        double im = comma == std::string::npos ? 0.0
                                               : std::strtod(line.c_str() + comma + 1, &end_im);
        if (comma == std::string::npos || end_re != line.c_str() + comma || end_im == nullptr ||
            end_im == line.c_str() + comma + 1) {
            // A single non-numeric line at the top is treated as a column header.
            if (batch.samples.empty() && line.find_first_of("0123456789") == std::string::npos) {
                continue;
            }
            throw Error(ErrorCode::kIo, "malformed sample on line " + std::to_string(line_no));
        }
        batch.samples.emplace_back(re, im);
    }
    return batch;
}

}  // namespace dhdcert
