// Copyright 2026 The rgan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rgan/holder.hpp"
#include "rgan/hypothesis.hpp"
#include "rgan/random.hpp"

namespace rgan {
namespace {

GridFunction scalar_1d(std::size_t m, double (*f)(double))
{
    return tabulate_map(1, m, 1, [f](std::span<const double> x, std::span<double> out) { out[0] = f(x[0]); });
}

TEST(HolderNorm, IdentityMap)
{
    const auto g = scalar_1d(33, [](double y) { return y; });
    const auto e = estimate_holder_norm(g, 1, 0.5);
    EXPECT_NEAR(e.ck_norm, 1.0, 1e-12);
    EXPECT_NEAR(e.holder_seminorm, 0.0, 1e-10);
    EXPECT_NEAR(e.total, 1.0, 1e-10);
}

TEST(HolderNorm, ConstantMap)
{
    const auto g = tabulate_map(2, 9, 1, [](std::span<const double>, std::span<double> out) { out[0] = 0.5; });
    for (int k : {0, 1, 3}) {
        for (double alpha : {0.2, 1.0}) {
            EXPECT_NEAR(estimate_holder_norm(g, k, alpha).total, 0.5, 1e-12);
        }
    }
}

TEST(HolderNorm, Square)
{
    // sup|f'| = 2 and f'' = 2
    const auto g = scalar_1d(129, [](double y) { return y * y; });
    const auto e = estimate_holder_norm(g, 1, 1.0);
    EXPECT_NEAR(e.ck_norm, 2.0, 1e-3);
    EXPECT_NEAR(e.holder_seminorm, 2.0, 1e-3);
    EXPECT_NEAR(e.total, 4.0, 1e-3);
}

TEST(HolderNorm, InsufficientResolution)
{
    const auto g = scalar_1d(4, [](double y) { return y; });
    try {
        estimate_holder_norm(g, 3, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientResolution);
    }
}

TEST(HolderNorm, InvariantsTotalDominatesSup)
{
    const auto g = tabulate_map(2, 17, 2, [](std::span<const double> x, std::span<double> out) {
        out[0] = std::sin(3.0 * x[0]) * x[1];
        out[1] = 0.2 + x[0] * x[0];
    });
    for (int k : {0, 1, 2}) {
        const auto e = estimate_holder_norm(g, k, 0.7);
        EXPECT_GE(e.total, e.ck_norm);
        EXPECT_GE(e.ck_norm, detail::max_abs(g.values));
    }
}

TEST(HolderNorm, SeminormMonotoneInAlphaProperty)
{
    // all pair distances are <= 1 in 1D, so dist^-a grows with a
    const auto g = scalar_1d(65, [](double y) { return std::sin(4.0 * y); });
    double prev = 0.0;
    for (double alpha : {0.1, 0.3, 0.5, 0.8, 1.0}) {
        const double s = estimate_holder_norm(g, 1, alpha).holder_seminorm;
        EXPECT_GE(s, prev);
        prev = s;
    }
}

TEST(HolderNorm, RefinementApproachesAnalyticNormProperty)
{
    // f = y^3: sup|f'| = 3, Lipschitz constant of f' is 6
    double prev_err = 1e9;
    for (std::size_t m : {17u, 33u, 65u, 129u}) {
        const auto g = scalar_1d(m, [](double y) { return y * y * y; });
        const double err = std::abs(estimate_holder_norm(g, 1, 1.0).total - 9.0);
        EXPECT_LT(err, 0.6 * prev_err + 1e-12) << m;
        prev_err = err;
    }
}

TEST(HolderNorm, LargeGridUsesSubsample)
{
    const auto g = tabulate_map(2, 129, 1, [](std::span<const double> x, std::span<double> out) {
        out[0] = x[0] * x[1];
    });
    const auto e = estimate_holder_norm(g, 0, 1.0);
    // Lipschitz constant of xy on the unit square is sqrt(2)
    EXPECT_LE(e.holder_seminorm, std::sqrt(2.0) + 1e-9);
    EXPECT_GT(e.holder_seminorm, 1.0);
}

TEST(InverseLipschitz, PlugIns)
{
    EXPECT_DOUBLE_EQ(inverse_lipschitz_bound(1.0, 1.0, 1), 1.0);
    EXPECT_DOUBLE_EQ(inverse_lipschitz_bound(2.0, 0.5, 2), 8.0);
    EXPECT_DOUBLE_EQ(inverse_lipschitz_bound(1.0, 1.0, 3), 6.0);
    try {
        inverse_lipschitz_bound(1.0, 0.0, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateJacobian);
    }
}

TEST(InverseLipschitz, HoldsForCertifiedGeneratorsProperty)
{
    HypothesisConfig c;
    c.dim = 2;
    c.K = 4.0;
    c.degree = 3;
    const GeneratorFamily fam(c);
    const CounterRng rng(5, Stream::Test);
    for (std::uint64_t member = 0; member < 3; ++member) {
        std::vector<double> theta(fam.parameter_count());
        for (std::size_t q = 0; q < theta.size(); ++q) {
            theta[q] = fam.half_width() * (2.0 * rng.uniform(member * 100 + q) - 1.0);
        }
        const auto params = fam.params(theta);
        const auto map = fam.make(theta);
        const double bound = inverse_lipschitz_bound(params.certificate.c1_upper, params.certificate.jac_lower, 2);
        for (std::uint64_t i = 0; i < 10000; ++i) {
            double y1[2], y2[2];
            rng.uniform_point(1000000 + 2 * i, y1);
            rng.uniform_point(1000001 + 2 * i, y2);
            const auto x1 = map.invert(std::span<const double>(y1, 2));
            const auto x2 = map.invert(std::span<const double>(y2, 2));
            const double dx = std::hypot(x1[0] - x2[0], x1[1] - x2[1]);
            const double dy = std::hypot(y1[0] - y2[0], y1[1] - y2[1]);
            ASSERT_LE(dx, bound * dy * (1.0 + 1e-9) + 1e-12);
        }
    }
}

} // namespace
} // namespace rgan
