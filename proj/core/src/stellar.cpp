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

#include "dhdcert/stellar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "dhdcert/error.hpp"
#include "dhdcert/nelder_mead.hpp"
#include "dhdcert/parallel.hpp"
#include "dhdcert/philox.hpp"

namespace dhdcert {
namespace {

using Point = std::array<double, 4>;

GaussianUnitaryParams params_from_point(const Point &x) {
    GaussianUnitaryParams g;
    g.squeeze_r = x[0];
    g.squeeze_theta = x[1];
    g.displacement = cplx{x[2], x[3]};
    return g;
}

Point point_from_params(const GaussianUnitaryParams &g) {
    return {g.squeeze_r, g.squeeze_theta, g.displacement.real(), g.displacement.imag()};
}

// Fock amplitudes of the target. Cores in the identity frame are exact;
// framed cores are truncated generously relative to the rank being probed.
Eigen::VectorXcd target_vector(const CoreState &target, int k) {
    if (target.frame().is_identity()) {
        auto c = target.coeffs();
        Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = c[i];
        }
        return v;
    }
    int dim = std::max(4 * (target.stellar_rank() + k), 32);
    return core_vector(target, dim);
}

Eigen::VectorXcd head(const GaussianUnitaryParams &g, const Eigen::VectorXcd &psi, int k) {
    return gaussian_matrix(g, k, static_cast<int>(psi.size())) * psi;
}

double objective(const GaussianUnitaryParams &g, const Eigen::VectorXcd &psi, int k) {
    // Outside this box the matrix elements lose accuracy; such points are
    // never competitive for normalised targets anyway.
    if (std::abs(g.squeeze_r) > 12.0 || std::abs(g.displacement) > 40.0) {
        return 0.0;
    }
    return head(g, psi, k).squaredNorm();
}

bool lex_less(const GaussianUnitaryParams &a, const GaussianUnitaryParams &b) {
    return std::make_tuple(a.squeeze_r, a.squeeze_theta, a.displacement.real(),
                           a.displacement.imag()) <
           std::make_tuple(b.squeeze_r, b.squeeze_theta, b.displacement.real(),
                           b.displacement.imag());
}

GaussianUnitaryParams random_start(std::uint64_t seed, int index, const StellarOptions &opts) {
    auto key = Philox4x32::key_from_seed(seed);
    auto x = Philox4x32::generate({static_cast<std::uint32_t>(index), 0u, 0u, 1u}, key);
    GaussianUnitaryParams g;
    g.squeeze_r = opts.r_box * uniform_open(x[0]);
    g.squeeze_theta = 2.0 * std::numbers::pi * uniform_open(x[1]);
    double rho = opts.beta_radius * std::sqrt(uniform_open(x[2]));
    double phi = 2.0 * std::numbers::pi * uniform_open(x[3]);
    g.displacement = std::polar(rho, phi);
    return g;
}

}  // namespace

double rank_bounded_objective(const CoreState &target, int k, const GaussianUnitaryParams &g) {
    if (k < 1) {
        throw Error(ErrorCode::kDomain, "rank bound k must be >= 1");
    }
    return objective(g, target_vector(target, k), k);
}

ProfilePoint max_fidelity_rank_bounded(const CoreState &target, int k,
                                       const StellarOptions &options) {
    if (k < 1) {
        throw Error(ErrorCode::kDomain, "rank bound k must be >= 1");
    }
    if (options.restarts < 0) {
        throw Error(ErrorCode::kConfig, "restart count must be non-negative");
    }
    ProfilePoint point;
    point.k = k;
    if (k > target.stellar_rank()) {
        point.max_fidelity = 1.0;
        point.optimal_params = target.frame().inverse().canonical();
        point.optimal_state = target;
        return point;
    }

    const Eigen::VectorXcd psi = target_vector(target, k);
    auto f = [&](const Point &x) { return -objective(params_from_point(x), psi, k); };

    // Index 0 is the identity start; the rest are seeded draws.
    const int n_runs = options.restarts + 1;
    point.restarts.resize(static_cast<std::size_t>(n_runs));
    parallel_for_chunks(n_runs, options.threads, [&](std::int64_t i) {
        GaussianUnitaryParams start = i == 0 ? GaussianUnitaryParams::identity()
                                             : random_start(options.seed, static_cast<int>(i),
                                                            options);
        NelderMeadResult res = nelder_mead(f, point_from_params(start));
        RestartRecord &rec = point.restarts[static_cast<std::size_t>(i)];
        rec.start = start;
        rec.end = params_from_point(res.x).canonical();
        rec.objective = -res.value;
        rec.evaluations = res.evaluations;
        rec.converged = res.converged;
    });

    const RestartRecord *best = nullptr;
    for (const auto &rec : point.restarts) {
        if (!rec.converged) {
            continue;
        }
        if (best == nullptr || rec.objective > best->objective + 1e-12 ||
            (std::abs(rec.objective - best->objective) <= 1e-12 && lex_less(rec.end, best->end))) {
            best = &rec;
        }
    }
    if (best == nullptr) {
        throw Error(ErrorCode::kOptimizerFailure,
                    "no restart of the rank-bounded fidelity search converged");
    }
    point.max_fidelity = std::clamp(best->objective, 0.0, 1.0);
    point.optimal_params = best->end;

    Eigen::VectorXcd v = head(best->end, psi, k);
    std::vector<cplx> coeffs(v.data(), v.data() + v.size());
    point.optimal_state = CoreState::normalized(std::move(coeffs), best->end.inverse().canonical());
    return point;
}

double k_robustness(const CoreState &target, int k, const StellarOptions &options) {
    double f = max_fidelity_rank_bounded(target, k, options).max_fidelity;
    return std::sqrt(std::max(0.0, 1.0 - f));
}

std::vector<ProfilePoint> fidelity_profile(const CoreState &target, int k_max,
                                           const StellarOptions &options) {
    if (k_max < 1) {
        throw Error(ErrorCode::kDomain, "profile needs k_max >= 1");
    }
    std::vector<ProfilePoint> out;
    out.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        out.push_back(max_fidelity_rank_bounded(target, k, options));
    }
    return out;
}

void write_profile_csv(const std::vector<ProfilePoint> &profile, std::ostream &out) {
    out << "k,max_fidelity,r,theta,re_beta,im_beta\n";
    char buf[256];
    for (const auto &p : profile) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.k, p.max_fidelity,
                      p.optimal_params.squeeze_r, p.optimal_params.squeeze_theta,
                      p.optimal_params.displacement.real(), p.optimal_params.displacement.imag());
        out << buf;
    }
}

double rank1_core_profile(double phi, double chi, const StellarOptions &options) {
    std::vector<cplx> c{cplx{std::cos(phi), 0.0}, std::polar(std::sin(phi), chi)};
    if (std::abs(c[1]) < 1e-15) {
        return 1.0;
    }
    return max_fidelity_rank_bounded(CoreState::normalized(std::move(c)), 1, options)
        .max_fidelity;
}

RankVerdict rank_witness_verdict(const ConfidenceEstimate &estimate,
                                 const std::vector<double> &thresholds) {
    RankVerdict v;
    v.confidence = estimate.confidence;
    v.threshold_used = thresholds.empty() ? 1.0 : thresholds.front();
    const double lower = estimate.value.real() - estimate.half_width;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (lower > thresholds[i]) {
            v.certified_rank = static_cast<int>(i) + 1;
            v.threshold_used = thresholds[i];
        }
    }
    return v;
}

RankVerdict rank_witness_verdict(const ConfidenceEstimate &estimate, const CoreState &target,
                                 const StellarOptions &options) {
    std::vector<double> thresholds;
    for (int k = 1; k <= target.stellar_rank(); ++k) {
        thresholds.push_back(max_fidelity_rank_bounded(target, k, options).max_fidelity);
    }
    return rank_witness_verdict(estimate, thresholds);
}

std::string verdict_json(const RankVerdict &verdict) {
    nlohmann::ordered_json j;
    j["certified_rank"] = verdict.certified_rank;
    j["confidence"] = verdict.confidence;
    j["threshold_used"] = verdict.threshold_used;
    return j.dump(2);
}

StellarPoly stellar_from_core(const CoreState &core) {
    const GaussianUnitaryParams &g = core.frame();
    const double c = std::cosh(g.squeeze_r);
    const double s = std::sinh(g.squeeze_r);
    const double t = std::tanh(g.squeeze_r);
    const cplx e = std::polar(1.0, g.squeeze_theta);
    const cplx beta = g.displacement;

    StellarPoly out;
    out.s = -0.5 * std::conj(e) * t;
    out.d = beta / c;
    const cplx linear = s * e * beta / c - std::conj(beta);

    // Conjugating a^dag by G turns it into z/c + s e d/dz + linear on the
    // polynomial prefactor; apply it repeatedly to build each |m>.
    auto coeffs = core.coeffs();
    std::vector<cplx> power{cplx{1.0, 0.0}};
    std::vector<cplx> acc(coeffs.size(), cplx{0.0, 0.0});
    double inv_sqrt_fact = 1.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        if (m > 0) {
            std::vector<cplx> next(power.size() + 1, cplx{0.0, 0.0});
            for (std::size_t j = 0; j < power.size(); ++j) {
                next[j + 1] += power[j] / c;
                next[j] += linear * power[j];
                if (j > 0) {
                    next[j - 1] += s * e * static_cast<double>(j) * power[j];
                }
            }
            power = std::move(next);
            inv_sqrt_fact /= std::sqrt(static_cast<double>(m));
        }
        for (std::size_t j = 0; j < power.size(); ++j) {
            acc[j] += coeffs[m] * inv_sqrt_fact * power[j];
        }
    }
    const cplx k0 = gaussian_matrix_element(0, 0, g);
    for (auto &a : acc) {
        a *= k0;
    }
    out.coeffs = std::move(acc);
    return out;
}

StellarPoly stellar_subtract(const StellarPoly &poly) {
    const auto &p = poly.coeffs;
    std::vector<cplx> out(p.size() + 1, cplx{0.0, 0.0});
    double scale = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        scale = std::max(scale, std::abs(p[j]));
        if (j > 0) {
            out[j - 1] += static_cast<double>(j) * p[j];
        }
        out[j + 1] += 2.0 * poly.s * p[j];
        out[j] += poly.d * p[j];
    }
    const double tol = 1e-13 * std::max(scale, 1e-300);
    while (!out.empty() && std::abs(out.back()) <= tol) {
        out.pop_back();
    }
    if (out.empty()) {
        throw Error(ErrorCode::kUndefinedSubtraction,
                    "photon subtraction annihilates this state");
    }
    StellarPoly r = poly;
    r.coeffs = std::move(out);
    return r;
}

int stellar_zero_count(const StellarPoly &poly, double radius, int steps) {
    if (radius <= 0.0 || steps < 16) {
        throw Error(ErrorCode::kDomain, "zero count needs radius > 0 and steps >= 16");
    }
    auto eval = [&](cplx z) {
        cplx v{0.0, 0.0};
        for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) {
            v = v * z + *it;
        }
        return v;
    };
    double winding = 0.0;
    cplx prev = eval(cplx{radius, 0.0});
    for (int i = 1; i <= steps; ++i) {
        cplx cur = eval(std::polar(radius, 2.0 * std::numbers::pi * i / steps));
        winding += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(winding / (2.0 * std::numbers::pi)));
}

}  // namespace dhdcert
