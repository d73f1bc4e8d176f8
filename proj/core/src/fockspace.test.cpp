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

#include "dhdcert/fockspace.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dhdcert/error.hpp"
#include "oracles.hpp"

namespace dhdcert {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_valid(const TruncatedState &s) {
    const auto &m = s.matrix();
    EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_NEAR(s.trace() + s.trace_deficit(), 1.0, 1e-9);
}

TEST(TruncatedState, RejectsInvalidMatrices) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 0.3;
    EXPECT_THROW(TruncatedState(m, 0.0), Error);  // not Hermitian
    m(1, 0) = 0.3;
    EXPECT_THROW(TruncatedState(m, 0.0), Error);  // not PSD
    Eigen::MatrixXcd half = Eigen::MatrixXcd::Identity(2, 2) * 0.25;
    EXPECT_THROW(TruncatedState(half, 0.0), Error);  // trace accounting
    EXPECT_NO_THROW(TruncatedState(half, 0.5));
}

TEST(MakeFock, Basics) {
    auto vac = make_fock(0, 8);
    EXPECT_EQ(vac(0, 0), cplx(1.0));
    EXPECT_EQ(make_fock(2, 8)(2, 2), cplx(1.0));
    EXPECT_NEAR(fidelity(make_fock(1, 8), CoreState::fock(1)), 1.0, 1e-15);
    try {
        make_fock(8, 8);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kCutoff);
    }
}

TEST(MakeLossyFock, ReferenceCaseAndLimits) {
    auto s = make_lossy_fock(2, 0.9, 8);
    EXPECT_NEAR(s(0, 0).real(), 0.01, 1e-14);
    EXPECT_NEAR(s(1, 1).real(), 0.18, 1e-14);
    EXPECT_NEAR(s(2, 2).real(), 0.81, 1e-14);
    EXPECT_NEAR(make_lossy_fock(2, 1.0, 8)(2, 2).real(), 1.0, 1e-15);
    EXPECT_NEAR(make_lossy_fock(2, 0.6, 8)(2, 2).real(), 0.36, 1e-14);
    EXPECT_NEAR(fidelity(make_lossy_fock(2, 0.8, 8), CoreState::fock(2)), 0.64, 1e-14);
    EXPECT_THROW(make_lossy_fock(2, 1.2, 8), Error);
    // Loss never increases purity.
    double prev = 1.0;
    for (double eta = 1.0; eta >= 0.5; eta -= 0.05) {
        double pur = make_lossy_fock(3, eta, 8).purity();
        EXPECT_LE(pur, prev + 1e-12);
        prev = pur;
    }
}

TEST(MakeSqueezedThermal, PurityAndVacuum) {
    auto vac = make_squeezed_thermal(0.0, 0.0, 1.0, 16);
    EXPECT_NEAR(vac(0, 0).real(), 1.0, 1e-15);
    double r = squeeze_r_from_db(3.0);
    EXPECT_NEAR(r, 0.345387763949107, 1e-12);
    auto pure = make_squeezed_thermal(r, 0.0, 1.0, 32);
    EXPECT_NEAR(pure.purity(), 1.0, 1e-9);
    auto mixed = make_squeezed_thermal(r, 0.0, 0.95, 32);
    Eigen::MatrixXcd sq = mixed.matrix() * mixed.matrix();
    EXPECT_NEAR(sq.trace().real(), 0.95, 1e-6);
    EXPECT_LT(mixed.trace_deficit(), 1e-8);
    expect_valid(mixed);
    EXPECT_THROW(make_squeezed_thermal(1.5, 0.0, 1.0, 8), Error);
}

TEST(PhotonSubtractAdd, FockLadder) {
    EXPECT_NEAR(photon_subtract(make_fock(1, 4))(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(photon_subtract(make_fock(2, 4))(1, 1).real(), 1.0, 1e-15);
    EXPECT_EQ(photon_subtract(make_fock(2, 4)).dim(), 3);
    try {
        photon_subtract(make_fock(0, 4));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kUndefinedSubtraction);
    }
    auto one = photon_add(make_fock(0, 1));
    EXPECT_EQ(one.dim(), 2);
    EXPECT_NEAR(one(1, 1).real(), 1.0, 1e-15);
    EXPECT_NEAR(photon_add(make_fock(1, 3))(2, 2).real(), 1.0, 1e-15);
    auto back = photon_subtract(photon_add(make_fock(0, 3)));
    EXPECT_NEAR(back(0, 0).real(), 1.0, 1e-15);
}

TEST(PhotonSubtract, SqueezedVacuumBeatsGaussianBound) {
    auto sv = make_squeezed_thermal(squeeze_r_from_db(3.0), 0.0, 1.0, 40);
    auto sub = photon_subtract(sv);
    // Independent oracle: a rho a^dag with an explicit annihilation matrix.
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(40, 40);
    for (int k = 1; k < 40; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    Eigen::MatrixXcd m = a * sv.matrix() * a.adjoint();
    double ref = (m(1, 1) / m.trace()).real();
    EXPECT_NEAR(fidelity(sub, CoreState::fock(1)), ref, 1e-12);
    EXPECT_GT(ref, 3.0 * std::sqrt(3.0) / (4.0 * std::exp(1.0)));
}

TEST(GaussianMatrix, ClosedFormExamples) {
    EXPECT_NEAR(std::abs(gaussian_matrix_element(0, 0, {}) - 1.0), 0.0, 1e-15);
    double r = 0.6;
    EXPECT_NEAR(std::abs(gaussian_matrix_element(0, 0, {r, 0.0, 0.0}) - 1.0 / std::sqrt(std::cosh(r))),
                0.0, 1e-14);
    cplx beta{0.8, -0.4};
    for (int n = 0; n < 10; ++n) {
        cplx expected = std::exp(-0.5 * std::norm(beta)) * std::pow(beta, n) /
                        std::sqrt(std::tgamma(n + 1.0));
        EXPECT_NEAR(std::abs(gaussian_matrix_element(n, 0, {0.0, 0.0, beta}) - expected), 0.0,
                    1e-14);
    }
}

TEST(GaussianMatrix, MatchesMatrixExponential) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        GaussianUnitaryParams g{0.9 * std::abs(unif(rng)), 3.0 * unif(rng),
                                cplx{1.5 * unif(rng), 1.5 * unif(rng)}};
        Eigen::MatrixXcd ref = oracle::gaussian_by_expm(g, 14, 14);
        Eigen::MatrixXcd got = gaussian_matrix(g, 14, 14);
        EXPECT_LE((ref - got).cwiseAbs().maxCoeff(), 1e-10) << "trial " << trial;
    }
}

TEST(GaussianMatrix, MatchesStellarClosedForm) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        GaussianUnitaryParams g{1.2 * std::abs(unif(rng)), 3.0 * unif(rng),
                                cplx{2.0 * unif(rng), 2.0 * unif(rng)}};
        Eigen::MatrixXcd got = gaussian_matrix(g, 11, 11);
        for (int n = 0; n <= 10; ++n) {
            for (int m = 0; m <= 10; ++m) {
                EXPECT_LE(std::abs(got(n, m) - oracle::gaussian_by_stellar(n, m, g)), 1e-9);
            }
        }
    }
}

TEST(GaussianMatrix, InverseParameters) {
    GaussianUnitaryParams g{0.7, 1.1, cplx{0.4, -0.9}};
    Eigen::MatrixXcd u = oracle::gaussian_by_expm(g, 200, 200, 200);
    Eigen::MatrixXcd uinv = oracle::gaussian_by_expm(g.inverse(), 200, 200, 200);
    Eigen::MatrixXcd prod = (uinv * u).topLeftCorner(12, 12);
    EXPECT_LE((prod - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-9);
    auto c = GaussianUnitaryParams{-0.3, 0.2, 0.0}.canonical();
    EXPECT_NEAR(c.squeeze_r, 0.3, 1e-15);
    EXPECT_NEAR(c.squeeze_theta, 0.2 + kPi, 1e-15);
}

TEST(ApplyGaussian, IdentityInverseAndDisplacement) {
    auto s = make_lossy_fock(2, 0.7, 6);
    auto same = apply_gaussian(s, {}, 6);
    EXPECT_LE((same.matrix() - s.matrix()).cwiseAbs().maxCoeff(), 1e-15);

    cplx beta{0.6, 0.3};
    auto there = apply_gaussian(s, {0.0, 0.0, beta}, 40);
    auto back = apply_gaussian(there, {0.0, 0.0, -beta}, 6);
    EXPECT_LE((back.matrix() - s.matrix()).cwiseAbs().maxCoeff(), 1e-8);

    auto coh = apply_gaussian(make_fock(0, 1), {0.0, 0.0, 1.0}, 30);
    EXPECT_NEAR(coh(0, 0).real(), std::exp(-1.0), 1e-14);
    expect_valid(coh);

    try {
        apply_gaussian(make_fock(0, 1), {0.0, 0.0, 3.0}, 8);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kCutoff);
    }
    EXPECT_GT(gaussian_output_dim(make_fock(0, 1), {0.0, 0.0, 3.0}), 20);
}

TEST(HusimiQ, FockClosedForms) {
    cplx z{0.8, -0.5};
    EXPECT_NEAR(husimi_q(make_fock(0, 4), z), std::exp(-std::norm(z)) / kPi, 1e-15);
    EXPECT_NEAR(husimi_q(make_fock(1, 4), z), std::exp(-std::norm(z)) * std::norm(z) / kPi, 1e-15);
}

TEST(HusimiQ, BoundsAndNormalisation) {
    auto s = photon_subtract(make_squeezed_thermal(squeeze_r_from_db(3.0), 0.4, 0.95, 32));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(-6.0, 6.0);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        cplx z{unif(rng), unif(rng)};
        double q = husimi_q(s, z);
        if (i < 1000) {
            EXPECT_GE(q, -1e-12);
            EXPECT_LE(q, 1.0 / kPi + 1e-12);
        }
        acc += q;
    }
    EXPECT_NEAR(acc / n * 144.0, s.trace(), 1e-2);
}

TEST(Wigner, ParityValues) {
    EXPECT_NEAR(wigner(make_fock(0, 4), 0.0), 2.0 / kPi, 1e-14);
    EXPECT_NEAR(wigner(make_fock(1, 4), 0.0), -2.0 / kPi, 1e-14);
    auto lossy = make_lossy_fock(2, 0.6, 4);
    double parity = 0.0;
    for (int k = 0; k < 4; ++k) {
        parity += (k % 2 == 0 ? 1.0 : -1.0) * lossy(k, k).real();
    }
    EXPECT_NEAR(wigner(lossy, 0.0), 2.0 / kPi * parity, 1e-14);
}

TEST(Wigner, MatchesLaguerreFormForFock) {
    // W_{|n>}(alpha) = (2/pi) (-1)^n exp(-2|alpha|^2) L_n(4|alpha|^2)
    for (int n = 0; n < 5; ++n) {
        for (cplx a : {cplx{0.3, 0.1}, cplx{-1.2, 0.7}, cplx{2.0, -1.5}}) {
            double x = std::norm(a);
            double ref = 2.0 / kPi * (n % 2 == 0 ? 1.0 : -1.0) * std::exp(-2.0 * x) *
                         oracle::laguerre_sum(n, 4.0 * x);
            WignerValue w = wigner_parity(make_fock(n, 6), a);
            EXPECT_NEAR(w.value, ref, 1e-12);
            EXPECT_LE(w.tail_bound, 1e-12);
        }
    }
}

TEST(CoreState, ValidationAndFidelity) {
    EXPECT_THROW(CoreState({cplx{0.5}}), Error);
    EXPECT_THROW(CoreState({cplx{1.0}, cplx{0.0}}), Error);
    auto c = CoreState::normalized({1.0, 1.0, 0.0});
    EXPECT_EQ(c.stellar_rank(), 1);
    EXPECT_NEAR(fidelity(make_fock(0, 8), CoreState::fock(1)), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(make_fock(2, 8), CoreState::fock(2)), 1.0, 1e-15);

    GaussianUnitaryParams g{0.4, 0.3, cplx{0.2, 0.5}};
    CoreState framed = CoreState::normalized({0.6, cplx{0.0, 0.8}}, g);
    auto pure = make_pure(framed, 40);
    EXPECT_NEAR(fidelity(pure, framed), 1.0, 1e-8);
    expect_valid(pure);
}

TEST(TargetOperator, Constructors) {
    auto p = TargetOperator::fock_projector(2);
    EXPECT_EQ(p.dim(), 3);
    EXPECT_TRUE(p.is_diagonal());
    auto e = TargetOperator::element(0, 2);
    EXPECT_FALSE(e.is_diagonal());
    EXPECT_FALSE(e.is_hermitian());
    EXPECT_THROW(TargetOperator::from_core(CoreState({1.0}, {0.1, 0.0, 0.0})), Error);
    auto lossy = make_lossy_fock(2, 0.8, 8);
    EXPECT_NEAR(expectation(lossy, p).real(), 0.64, 1e-14);
}

TEST(StellarZeros, ZeroCountEqualsRank) {
    // <z|psi> for |psi> = G|C> is exp(-|z|^2/2) conj(F*(conj z)) so the zeros of the
    // analytic function F*(z) = sum psi_n z^n / sqrt(n!) are counted by the
    // argument principle around |z| = 8.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int rank = 0; rank <= 3; ++rank) {
        std::vector<cplx> coeffs(rank + 1);
        for (auto &c : coeffs) {
            c = cplx{unif(rng), unif(rng)};
        }
        GaussianUnitaryParams g{0.25, 0.7, cplx{0.3, -0.2}};
        CoreState core = CoreState::normalized(coeffs, g);
        Eigen::VectorXcd psi = core_vector(core, 400);
        auto f = [&](cplx z) {
            cplx acc = 0.0;
            cplx term = 1.0;
            for (int n = 0; n < 400; ++n) {
                acc += psi(n) * term;
                term *= z / std::sqrt(static_cast<double>(n + 1));
            }
            return acc;
        };
        const int steps = 4096;
        double winding = 0.0;
        cplx prev = f(8.0);
        for (int i = 1; i <= steps; ++i) {
            cplx cur = f(std::polar(8.0, 2.0 * kPi * i / steps));
            winding += std::arg(cur / prev);
            prev = cur;
        }
        // Gaussian part exp(S z^2 + D z) has no zeros; only the polynomial counts.
        EXPECT_EQ(static_cast<int>(std::lround(winding / (2.0 * kPi))), rank);
    }
}

}  // namespace
}  // namespace dhdcert
