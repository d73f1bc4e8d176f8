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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dhdcert/error.hpp"
#include "oracles.hpp"

namespace dhdcert {
namespace {

const PolyEvalContext &ctx() {
    return default_poly_context();
}

TEST(Laguerre2d, SmallClosedForms) {
    cplx z{0.7, -1.3};
    EXPECT_EQ(ctx().laguerre2d(0, 0, z), cplx(1.0));
    EXPECT_NEAR(std::abs(ctx().laguerre2d(1, 1, z) - (std::norm(z) - 1.0)), 0.0, 1e-14);
    cplx expected = std::conj(z) * std::conj(z) / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(ctx().laguerre2d(2, 0, z) - expected), 0.0, 1e-14);
}

TEST(Laguerre2d, MatchesDirectSum) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.0, 20.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (int trial = 0; trial < 30; ++trial) {
        cplx z = std::polar(radius(rng), angle(rng));
        for (int k = 0; k <= 12; ++k) {
            for (int l = 0; l <= 12; ++l) {
                cplx ref = oracle::laguerre2d_sum(k, l, z);
                cplx got = ctx().laguerre2d(k, l, z);
                // The explicit sum loses digits to cancellation; compare
                // against the size of its largest term.
                double scale = std::max(1.0, std::pow(std::abs(z), k + l));
                EXPECT_LE(std::abs(got - ref), 1e-10 * scale) << k << "," << l << " z=" << z;
            }
        }
    }
}

TEST(Laguerre2d, ConjugateSymmetry) {
    // The defining sum has real coefficients, so swapping (k, l) is the same
    // as conjugating either the argument or the value.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        cplx z{gauss(rng), gauss(rng)};
        for (int k = 0; k <= 12; ++k) {
            for (int l = 0; l <= 12; ++l) {
                cplx lhs = ctx().laguerre2d(k, l, z);
                double tol = 1e-12 * std::max(1.0, std::abs(lhs));
                EXPECT_LE(std::abs(lhs - ctx().laguerre2d(l, k, std::conj(z))), tol);
                EXPECT_LE(std::abs(std::conj(lhs) - ctx().laguerre2d(l, k, z)), tol);
            }
        }
    }
}

TEST(Laguerre2d, DiagonalIsSignedLaguerre) {
    for (int n = 0; n <= 6; ++n) {
        for (double r : {0.0, 0.4, 1.7, 3.1}) {
            cplx z = std::polar(r, 0.9);
            double sign = (n % 2 == 0) ? 1.0 : -1.0;
            EXPECT_NEAR(ctx().laguerre2d(n, n, z).real(), sign * oracle::laguerre_sum(n, r * r),
                        1e-10);
            EXPECT_NEAR(ctx().laguerre2d(n, n, z).imag(), 0.0, 1e-12);
        }
    }
}

TEST(Laguerre, RecurrenceMatchesSum) {
    EXPECT_EQ(ctx().laguerre(0, 3.3), 1.0);
    EXPECT_DOUBLE_EQ(ctx().laguerre(1, 3.3), 1.0 - 3.3);
    EXPECT_NEAR(ctx().laguerre(3, 2.0), oracle::laguerre_sum(3, 2.0), 1e-14);
    for (int n = 0; n <= 12; ++n) {
        for (double x : {0.0, 0.5, 2.0, 7.5, 19.0}) {
            double ref = oracle::laguerre_sum(n, x);
            EXPECT_NEAR(ctx().laguerre(n, x), ref, 1e-10 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST(Laguerre, SequenceMatchesPointwise) {
    std::vector<double> seq(20);
    ctx().laguerre_sequence(4.2, seq);
    for (int n = 0; n < 20; ++n) {
        EXPECT_DOUBLE_EQ(seq[n], ctx().laguerre(n, 4.2));
    }
}

TEST(Hermite, RecurrenceMatchesSum) {
    cplx z{0.3, 0.8};
    EXPECT_EQ(ctx().hermite_he(0, z), cplx(1.0));
    EXPECT_NEAR(std::abs(ctx().hermite_he(2, z) - (z * z - 1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ctx().hermite_he(4, 1.5) - oracle::hermite_sum(4, 1.5)), 0.0, 1e-12);
    for (int m = 0; m <= 12; ++m) {
        cplx ref = oracle::hermite_sum(m, z);
        EXPECT_LE(std::abs(ctx().hermite_he(m, z) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST(LogBinomial, ExactValues) {
    EXPECT_EQ(ctx().log_binomial(5, 0), 0.0);
    EXPECT_NEAR(ctx().log_binomial(4, 2), std::log(6.0), 1e-15);
    double ref = oracle::exact_log_binomial(100, 50);
    EXPECT_NEAR(ctx().log_binomial(100, 50), ref, 1e-12 * ref);
    EXPECT_THROW(ctx().log_binomial(3, 4), Error);
}

TEST(PolyEvalContext, LogFactorialTable) {
    EXPECT_EQ(ctx().log_factorial(0), 0.0);
    for (int n = 2; n < 200; ++n) {
        EXPECT_GT(ctx().log_factorial(n + 1), ctx().log_factorial(n));
    }
}

TEST(PolyEvalContext, DegreeBoundIsEnforced) {
    PolyEvalContext small(4);
    try {
        small.laguerre(5, 1.0);
        FAIL() << "expected a configuration error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kConfig);
    }
    EXPECT_THROW(small.laguerre2d(2, 7, 1.0), Error);
    EXPECT_THROW(small.hermite_he(9, 1.0), Error);
}

TEST(PolyEvalContext, NoOverflowAtLargeArgument) {
    cplx z{700.0, 700.0};
    EXPECT_TRUE(std::isfinite(std::abs(ctx().laguerre2d(40, 64, z))));
    EXPECT_TRUE(std::isfinite(ctx().laguerre(64, 1e6)));
}

}  // namespace
}  // namespace dhdcert
