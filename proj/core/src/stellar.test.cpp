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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dhdcert/error.hpp"
#include "oracles.hpp"

namespace dhdcert {
namespace {

StellarOptions fast_options() {
    StellarOptions o;
    o.restarts = 8;
    return o;
}

cplx eval_stellar(const StellarPoly &p, cplx z) {
    cplx poly{0.0, 0.0};
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        poly = poly * z + *it;
    }
    return poly * std::exp(p.s * z * z + p.d * z);
}

cplx eval_series(const Eigen::VectorXcd &psi, cplx z) {
    cplx sum{0.0, 0.0};
    cplx term{1.0, 0.0};
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
        if (n > 0) {
            term *= z / std::sqrt(static_cast<double>(n));
        }
        sum += psi(n) * term;
    }
    return sum;
}

TEST(Stellar, SinglePhotonGaussianFidelityClosedForm) {
    auto p = max_fidelity_rank_bounded(CoreState::fock(1), 1, fast_options());
    EXPECT_NEAR(p.max_fidelity, 3.0 * std::sqrt(3.0) / (4.0 * std::numbers::e), 1e-9);
}

TEST(Stellar, FockThresholdTable) {
    const double table[4][3] = {
        {0.478, 0, 0}, {0.381, 0.557, 0}, {0.333, 0.462, 0.593}, {0.301, 0.409, 0.501}};
    for (int n = 1; n <= 4; ++n) {
        for (int k = 1; k <= std::min(n, 3); ++k) {
            double f = max_fidelity_rank_bounded(CoreState::fock(n), k, fast_options()).max_fidelity;
            EXPECT_NEAR(f, table[n - 1][k - 1], 6e-4) << "n=" << n << " k=" << k;
        }
    }
}

TEST(Stellar, ObjectiveMatchesClosedFormAmplitudes) {
    auto target = CoreState::normalized({cplx{0.3, 0.1}, cplx{-0.5, 0.2}, cplx{0.4, -0.6}});
    GaussianUnitaryParams g{0.37, 1.1, cplx{0.4, -0.25}};
    for (int k = 1; k <= 3; ++k) {
        double expected = 0.0;
        for (int m = 0; m < k; ++m) {
            cplx amp{0.0, 0.0};
            for (int j = 0; j < 3; ++j) {
                amp += oracle::gaussian_by_stellar(m, j, g) * target.coeffs()[j];
            }
            expected += std::norm(amp);
        }
        EXPECT_NEAR(rank_bounded_objective(target, k, g), expected, 1e-13);
    }
}

TEST(Stellar, OptimalStateAttainsTheMaximum) {
    auto target = CoreState::fock(2);
    for (int k = 1; k <= 2; ++k) {
        auto p = max_fidelity_rank_bounded(target, k, fast_options());
        EXPECT_LT(p.optimal_state.stellar_rank(), k);
        auto rho = make_pure(p.optimal_state, 80);
        EXPECT_NEAR(fidelity(rho, target), p.max_fidelity, 1e-8);
    }
}

TEST(Stellar, RankAboveTargetGivesUnitFidelity) {
    auto p = max_fidelity_rank_bounded(CoreState::fock(2), 3, fast_options());
    EXPECT_EQ(p.max_fidelity, 1.0);
    EXPECT_TRUE(p.restarts.empty());
}

TEST(Stellar, GaussianFrameDoesNotChangeProfile) {
    GaussianUnitaryParams frame{0.3, 0.7, cplx{0.5, -0.2}};
    CoreState framed({cplx{0.0}, cplx{1.0}}, frame);
    auto p = max_fidelity_rank_bounded(framed, 1, fast_options());
    EXPECT_NEAR(p.max_fidelity, 3.0 * std::sqrt(3.0) / (4.0 * std::numbers::e), 1e-7);
}

TEST(Stellar, RankOneProfileIgnoresRelativePhase) {
    for (double phi : {0.4, 0.9, 1.3}) {
        double ref = rank1_core_profile(phi, 0.0, fast_options());
        for (double chi : {0.8, 2.5, 4.0}) {
            EXPECT_NEAR(rank1_core_profile(phi, chi, fast_options()), ref, 1e-8);
        }
    }
    EXPECT_NEAR(rank1_core_profile(std::numbers::pi / 2, 0.0, fast_options()),
                3.0 * std::sqrt(3.0) / (4.0 * std::numbers::e), 1e-8);
    EXPECT_EQ(rank1_core_profile(0.0, 1.0, fast_options()), 1.0);
}

TEST(Stellar, MixtureWithHusimiZeroCoherentStateKeepsScaledFidelity) {
    // |1> has its only Husimi zero at the origin, so the vacuum is orthogonal
    // to it and mixing it in scales the fidelity of the optimal Gaussian.
    auto target = CoreState::fock(1);
    auto p = max_fidelity_rank_bounded(target, 1, fast_options());
    const int dim = 80;
    Eigen::VectorXcd g = core_vector(p.optimal_state, dim);
    for (double w : {0.2, 0.5, 0.9}) {
        Eigen::MatrixXcd m = (1.0 - w) * g * g.adjoint();
        m(0, 0) += w;
        double deficit = std::max(0.0, 1.0 - m.trace().real());
        TruncatedState rho(m, deficit);
        EXPECT_NEAR(fidelity(rho, target), (1.0 - w) * p.max_fidelity, 1e-9);
    }
}

TEST(Stellar, DeterministicAcrossThreadCounts) {
    auto target = CoreState::normalized({cplx{0.6}, cplx{0.0, 0.5}, cplx{0.3, 0.2}});
    StellarOptions a = fast_options();
    a.threads = 1;
    StellarOptions b = fast_options();
    b.threads = 4;
    auto pa = max_fidelity_rank_bounded(target, 2, a);
    auto pb = max_fidelity_rank_bounded(target, 2, b);
    EXPECT_EQ(pa.max_fidelity, pb.max_fidelity);
    EXPECT_EQ(pa.optimal_params.displacement, pb.optimal_params.displacement);
    ASSERT_EQ(pa.restarts.size(), 9u);
}

TEST(Stellar, RobustnessAndProfileCsv) {
    auto profile = fidelity_profile(CoreState::fock(1), 2, fast_options());
    ASSERT_EQ(profile.size(), 2u);
    EXPECT_NEAR(k_robustness(CoreState::fock(1), 1, fast_options()),
                std::sqrt(1.0 - profile[0].max_fidelity), 1e-12);
    std::ostringstream os;
    write_profile_csv(profile, os);
    EXPECT_EQ(os.str().rfind("k,max_fidelity,r,theta,re_beta,im_beta\n1,", 0), 0u);
}

TEST(Stellar, VerdictPicksLargestClearedThreshold) {
    ConfidenceEstimate e;
    e.value = 0.70;
    e.half_width = 0.05;
    e.confidence = 0.99;
    auto v = rank_witness_verdict(e, std::vector<double>{0.381, 0.557});
    EXPECT_EQ(v.certified_rank, 2);
    EXPECT_DOUBLE_EQ(v.threshold_used, 0.557);
    e.value = 0.40;
    v = rank_witness_verdict(e, std::vector<double>{0.381, 0.557});
    EXPECT_EQ(v.certified_rank, 0);
    auto j = nlohmann::json::parse(verdict_json(v));
    EXPECT_EQ(j["certified_rank"], 0);
    EXPECT_DOUBLE_EQ(j["confidence"].get<double>(), 0.99);
}

TEST(StellarPoly, MatchesFockSeriesOfFramedCore) {
    GaussianUnitaryParams frame{0.4, 2.0, cplx{-0.3, 0.6}};
    CoreState core({cplx{0.5}, cplx{0.0, 0.5}, cplx{-0.5}, cplx{0.5}}, frame);
    auto poly = stellar_from_core(core);
    EXPECT_EQ(poly.degree(), 3);
    Eigen::VectorXcd psi = core_vector(core, 140);
    for (cplx z : {cplx{0.2, 0.1}, cplx{-0.7, 0.4}, cplx{1.1, -0.9}}) {
        cplx a = eval_stellar(poly, z);
        cplx b = eval_series(psi, z);
        EXPECT_NEAR(std::abs(a - b), 0.0, 1e-10 * std::max(1.0, std::abs(b)));
    }
    EXPECT_EQ(stellar_zero_count(poly, 50.0), 3);
}

TEST(StellarPoly, SubtractionMatchesAnnihilationOperator) {
    GaussianUnitaryParams frame{0.25, 0.5, cplx{0.4, 0.1}};
    CoreState core({cplx{0.6}, cplx{0.8}}, frame);
    auto sub = stellar_subtract(stellar_from_core(core));
    Eigen::VectorXcd psi = core_vector(core, 140);
    Eigen::VectorXcd apsi(psi.size() - 1);
    for (Eigen::Index n = 0; n + 1 < psi.size(); ++n) {
        apsi(n) = std::sqrt(static_cast<double>(n + 1)) * psi(n + 1);
    }
    for (cplx z : {cplx{0.3, -0.2}, cplx{-0.5, 0.8}}) {
        cplx b = eval_series(apsi, z);
        EXPECT_NEAR(std::abs(eval_stellar(sub, z) - b), 0.0, 1e-10 * std::max(1.0, std::abs(b)));
    }
}

TEST(StellarPoly, SubtractingFromVacuumIsUndefined) {
    try {
        stellar_subtract(stellar_from_core(CoreState::fock(0)));
        FAIL() << "expected kUndefinedSubtraction";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kUndefinedSubtraction);
    }
}

}  // namespace
}  // namespace dhdcert
