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

#include <algorithm>
#include <array>
#include <memory>
#include <cmath>
#include <set>
#include <vector>

#include "rgan/holder.hpp"
#include "rgan/hypothesis.hpp"
#include "rgan/random.hpp"
#include "rgan/rosenblatt.hpp"

namespace rgan {
namespace {

HypothesisConfig config(std::size_t dim, int degree, double K = 4.0)
{
    HypothesisConfig c;
    c.dim = dim;
    c.degree = degree;
    c.K = K;
    return c;
}

std::vector<double> random_theta(const GeneratorFamily& fam, const CounterRng& rng, std::uint64_t key)
{
    std::vector<double> theta(fam.parameter_count());
    for (std::size_t q = 0; q < theta.size(); ++q) {
        theta[q] = fam.half_width() * (2.0 * rng.uniform(key * 256 + q) - 1.0);
    }
    return theta;
}

std::vector<double> random_point(const CounterRng& rng, std::uint64_t index, std::size_t d)
{
    std::vector<double> y(d);
    rng.uniform_point(index, y);
    return y;
}

/// sup over a 1D node grid of |phi_a - phi_b| for one-dimensional maps.
double sup_distance_1d(const TriangularMap& a, const TriangularMap& b, std::size_t nodes = 201)
{
    double s = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const std::vector<double> y{static_cast<double>(i) / static_cast<double>(nodes - 1)};
        s = std::max(s, std::abs(a.apply(y)[0] - b.apply(y)[0]));
    }
    return s;
}

double bernstein_sum(std::span<const double> coef, double t)
{
    const std::size_t n = coef.size() - 1;
    double s = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        double binom = 1.0;
        for (std::size_t j = 1; j <= i; ++j) {
            binom = binom * static_cast<double>(n - i + j) / static_cast<double>(j);
        }
        s += coef[i] * binom * std::pow(t, static_cast<double>(i)) * std::pow(1.0 - t, static_cast<double>(n - i));
    }
    return s;
}

TEST(MakeGenerator, NeutralIsIdentity)
{
    const GeneratorFamily fam(config(3, 4));
    const auto map = fam.make(fam.neutral());
    const CounterRng rng(1, Stream::Test);
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto y = random_point(rng, i, 3);
        const auto x = map.apply(y);
        for (std::size_t a = 0; a < 3; ++a) {
            EXPECT_NEAR(x[a], y[a], 1e-15);
        }
    }
}

TEST(MakeGenerator, CubicBernsteinCdf)
{
    // increments (0.4, 0.2, 0.4) give the cumulative Bernstein coefficients (0, 0.4, 0.6, 1)
    const std::array<double, 4> coef{0.0, 0.4, 0.6, 1.0};
    const GeneratorFamily fam(config(1, 3));
    ASSERT_EQ(fam.parameter_count(), 2u);
    // the family is affine in theta for d = 1: fit theta to the polynomial by least squares
    std::vector<std::array<double, 2>> cols;
    std::vector<double> rhs;
    for (int i = 1; i < 20; ++i) {
        const double t = i / 20.0;
        const std::vector<double> y{t};
        std::array<double, 2> col{};
        for (std::size_t r = 0; r < 2; ++r) {
            std::vector<double> e(2, 0.0);
            e[r] = 0.1;
            col[r] = (fam.make(e).apply(y)[0] - t) / 0.1;
        }
        cols.push_back(col);
        rhs.push_back(bernstein_sum(coef, t) - t);
    }
    double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        a00 += cols[i][0] * cols[i][0];
        a01 += cols[i][0] * cols[i][1];
        a11 += cols[i][1] * cols[i][1];
        b0 += cols[i][0] * rhs[i];
        b1 += cols[i][1] * rhs[i];
    }
    const double det = a00 * a11 - a01 * a01;
    const std::vector<double> theta{(a11 * b0 - a01 * b1) / det, (a00 * b1 - a01 * b0) / det};
    ASSERT_TRUE(fam.in_box(theta));
    const auto map = fam.make(theta);
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        const std::vector<double> y{t};
        EXPECT_NEAR(map.apply(y)[0], bernstein_sum(coef, t), 1e-12);
    }
    const std::vector<double> half{0.5};
    EXPECT_NEAR(map.apply(half)[0], bernstein_sum(coef, 0.5), 1e-12);
}

TEST(MakeGenerator, RoundtripAndEndpointsProperty)
{
    for (std::size_t d : {1u, 2u, 3u}) {
        const GeneratorFamily fam(config(d, 4));
        const CounterRng rng(2 + d, Stream::Test);
        for (std::uint64_t m = 0; m < 10; ++m) {
            const auto map = fam.make(random_theta(fam, rng, m));
            for (std::uint64_t i = 0; i < 50; ++i) {
                auto y = random_point(rng, 100000 + 100 * m + i, d);
                const auto back = map.invert(map.apply(y));
                for (std::size_t a = 0; a < d; ++a) {
                    EXPECT_NEAR(back[a], y[a], 1e-8);
                }
                for (std::size_t j = 0; j < d; ++j) {
                    for (double end : {0.0, 1.0}) {
                        auto z = y;
                        z[j] = end;
                        EXPECT_NEAR(map.apply(z)[j], end, 1e-14);
                    }
                }
            }
        }
    }
}

TEST(MakeGenerator, RejectsParametersOutsideBox)
{
    const GeneratorFamily fam(config(2, 3));
    auto theta = fam.neutral();
    theta[0] = 1.01 * fam.half_width();
    try {
        fam.make(theta);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParamsOutOfBox);
    }
}

TEST(MakeGenerator, BoxCertifiesJacobianAndNorm)
{
    for (std::size_t d : {1u, 2u, 3u}) {
        const auto c = config(d, 4);
        const GeneratorFamily fam(c);
        const auto cert = fam.certify({});
        EXPECT_GE(cert.jac_lower, 1.0 / c.K);
        EXPECT_LE(cert.norm_upper, c.K);
        EXPECT_LE(cert.c1_upper, c.K);
    }
}

TEST(MakeDiscriminator, EqualParametersGiveHalf)
{
    const GeneratorFamily fam(config(2, 3));
    const CounterRng rng(5, Stream::Test);
    const auto theta = random_theta(fam, rng, 0);
    const auto d = make_discriminator(fam, theta, theta);
    for (std::uint64_t i = 0; i < 20; ++i) {
        EXPECT_EQ(d(random_point(rng, 1000 + i, 2)), 0.5);
    }
}

TEST(MakeDiscriminator, BoundsPlugIn)
{
    const auto [b1, b2] = discriminator_bounds(1, 2.0);
    EXPECT_DOUBLE_EQ(b1, 0.2);
    EXPECT_DOUBLE_EQ(b2, 0.8);
}

TEST(MakeDiscriminator, RangeInvariantProperty)
{
    for (std::size_t d : {1u, 2u}) {
        const auto c = config(d, 3);
        const GeneratorFamily fam(c);
        const CounterRng rng(6 + d, Stream::Test);
        for (std::uint64_t m = 0; m < 4; ++m) {
            const auto da = random_theta(fam, rng, 2 * m);
            const auto db = random_theta(fam, rng, 2 * m + 1);
            const auto disc = make_discriminator(fam, da, db);
            EXPECT_DOUBLE_EQ(disc.lower, discriminator_bounds(d, c.K).first);
            for (std::uint64_t i = 0; i < 10000; ++i) {
                const double v = disc(random_point(rng, 1000000 * (m + 1) + i, d));
                EXPECT_GE(v, disc.lower);
                EXPECT_LE(v, disc.upper);
            }
        }
    }
}

TEST(EpsNet, LargeEpsilonGivesSingleMember)
{
    const GeneratorFamily fam(config(2, 3));
    const double eps = 2.0 * fam.half_width() * fam.sup_lipschitz();
    const auto net = build_eps_net(fam, eps);
    ASSERT_EQ(net.size(), 1u);
    EXPECT_EQ(net.members[0], fam.neutral());
}

TEST(EpsNet, HalvingEpsilonProperty)
{
    const GeneratorFamily fam(config(1, 4));
    const double p = static_cast<double>(fam.parameter_count());
    const double top = fam.half_width() * fam.sup_lipschitz();
    for (double eps : {top * 0.9, top * 0.37, top * 0.2, top * 0.11}) {
        const auto coarse = build_eps_net(fam, eps);
        const auto fine = build_eps_net(fam, eps / 2.0);
        EXPECT_LE(static_cast<double>(fine.size()), std::pow(2.0, p) * static_cast<double>(coarse.size()));
    }
}

TEST(EpsNet, MembersDistinctInBoxAndCovering)
{
    const GeneratorFamily fam(config(1, 4));
    const double eps = 0.05;
    const auto net = build_eps_net(fam, eps);
    EXPECT_EQ(net.size(), net.members.size());
    EXPECT_EQ(std::set<std::vector<double>>(net.members.begin(), net.members.end()).size(), net.size());
    std::vector<TriangularMap> maps;
    for (const auto& m : net.members) {
        EXPECT_TRUE(fam.in_box(m));
        maps.push_back(fam.make(m));
    }
    // covering verified by sampling the box
    const CounterRng rng(9, Stream::Test);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto g = fam.make(random_theta(fam, rng, i));
        double best = 1e300;
        for (const auto& m : maps) {
            best = std::min(best, sup_distance_1d(g, m));
        }
        EXPECT_LE(best, eps);
    }
}

TEST(EpsNet, GreedyCoverComparison)
{
    const GeneratorFamily fam(config(1, 3));
    ASSERT_EQ(fam.parameter_count(), 2u);
    const double eps = 0.1;
    const auto net = build_eps_net(fam, eps);
    // greedy cover of a ~10^3 point lattice of the box in sup distance
    const std::size_t side = 32;
    const double b = fam.half_width();
    std::vector<std::vector<double>> curves;
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const std::vector<double> theta{-b + 2.0 * b * static_cast<double>(i) / (side - 1),
                                            -b + 2.0 * b * static_cast<double>(j) / (side - 1)};
            const auto map = fam.make(theta);
            std::vector<double> curve;
            for (std::size_t t = 0; t <= 100; ++t) {
                const std::vector<double> y{static_cast<double>(t) / 100.0};
                curve.push_back(map.apply(y)[0]);
            }
            curves.push_back(std::move(curve));
        }
    }
    const auto dist = [&](std::size_t a, std::size_t c) {
        double s = 0.0;
        for (std::size_t t = 0; t < curves[a].size(); ++t) {
            s = std::max(s, std::abs(curves[a][t] - curves[c][t]));
        }
        return s;
    };
    std::vector<bool> covered(curves.size(), false);
    std::size_t greedy = 0;
    for (;;) {
        std::size_t best = curves.size();
        std::size_t best_gain = 0;
        for (std::size_t c = 0; c < curves.size(); ++c) {
            std::size_t gain = 0;
            for (std::size_t a = 0; a < curves.size(); ++a) {
                gain += !covered[a] && dist(a, c) <= eps ? 1 : 0;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        if (best == curves.size()) {
            break;
        }
        ++greedy;
        for (std::size_t a = 0; a < curves.size(); ++a) {
            covered[a] = covered[a] || dist(a, best) <= eps;
        }
    }
    EXPECT_LE(static_cast<double>(net.size()), 4.0 * static_cast<double>(greedy));
    EXPECT_GE(4.0 * static_cast<double>(net.size()), static_cast<double>(greedy));
}

TEST(EpsNet, TooLarge)
{
    const GeneratorFamily fam(config(2, 4));
    try {
        build_eps_net(fam, 1e-4, NetOptions{1000, false});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NetTooLarge);
    }
}

TEST(EpsNet, MembersPassCertificationProperty)
{
    for (std::size_t d : {1u, 2u}) {
        const auto c = config(d, 3);
        const GeneratorFamily fam(c);
        const auto net = build_eps_net(fam, 0.5 * fam.half_width() * fam.sup_lipschitz());
        ASSERT_GT(net.size(), 1u);
        for (const auto& theta : net.members) {
            const auto map = fam.make(theta);
            const auto table = tabulate_map(d, d == 1 ? 257 : 33, d, [&](std::span<const double> x, std::span<double> out) {
                const auto v = map.apply(x);
                std::copy(v.begin(), v.end(), out.begin());
            });
            EXPECT_LE(estimate_holder_norm(table, c.k, c.alpha).total, c.K);
            const EvalGrid g{d, 17, QuadRule::trapezoid};
            std::vector<double> y(d);
            for (std::size_t i = 0; i < g.size(); ++i) {
                g.node(i, y);
                EXPECT_GE(map.jacobian(y), 1.0 / c.K);
            }
        }
    }
}

TEST(Realizability, InverseRosenblattApproachedAsDegreeGrows)
{
    // target generator for the tilted density: phi(x) = sqrt(1 + 3x) - 1.
    // The certified box shrinks with degree at fixed K, so each degree's
    // least-squares approximant is certified through its own coefficients.
    const auto target = [](double x) { return std::sqrt(1.0 + 3.0 * x) - 1.0; };
    std::vector<double> errors;
    for (int degree : {3, 5, 7}) {
        const GeneratorFamily span_family(config(1, degree, 4.0));
        const std::size_t p = span_family.parameter_count();
        const double step = 0.01 * span_family.half_width();
        std::vector<double> ata(p * p, 0.0);
        std::vector<double> atb(p, 0.0);
        for (int i = 1; i < 200; ++i) {
            const double t = i / 200.0;
            const std::vector<double> y{t};
            std::vector<double> row(p);
            for (std::size_t r = 0; r < p; ++r) {
                std::vector<double> e(p, 0.0);
                e[r] = step;
                row[r] = (span_family.make(e).apply(y)[0] - t) / step;
            }
            for (std::size_t r = 0; r < p; ++r) {
                atb[r] += row[r] * (target(t) - t);
                for (std::size_t c = 0; c < p; ++c) {
                    ata[r * p + c] += row[r] * row[c];
                }
            }
        }
        std::vector<double> theta = atb;
        for (std::size_t c = 0; c < p; ++c) {
            for (std::size_t r = c + 1; r < p; ++r) {
                const double f = ata[r * p + c] / ata[c * p + c];
                for (std::size_t q = c; q < p; ++q) {
                    ata[r * p + q] -= f * ata[c * p + q];
                }
                theta[r] -= f * theta[c];
            }
        }
        for (std::size_t c = p; c-- > 0;) {
            for (std::size_t q = c + 1; q < p; ++q) {
                theta[c] -= ata[c * p + q] * theta[q];
            }
            theta[c] /= ata[c * p + c];
        }
        // per-vector certificate: a member of the class for K_needed, even
        // where the uniform box around the identity no longer contains it
        const auto cert = span_family.certify(theta);
        ASSERT_GT(cert.jac_lower, 0.0) << "degree " << degree;
        const double k_needed = std::max({cert.norm_upper, cert.c1_upper, 1.0 / cert.jac_lower});
        EXPECT_TRUE(std::isfinite(k_needed));
        const TriangularMap map(std::make_shared<GeneratorComponents>(
            std::make_shared<ProfileSet>(span_family.profiles()), 1, 1, theta));
        const std::vector<double> mid{0.3};
        EXPECT_NEAR(map.invert(map.apply(mid))[0], 0.3, 1e-10);
        double sup = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const std::vector<double> y{i / 400.0};
            sup = std::max(sup, std::abs(map.apply(y)[0] - target(y[0])));
        }
        errors.push_back(sup);
    }
    EXPECT_LT(errors[1], errors[0]);
    EXPECT_LT(errors[2], errors[1]);
    EXPECT_LT(errors[2], 1e-3);
}

TEST(Realizability, BoxSaturatesAtFixedK)
{
    // at fixed K the certified half-width decreases with degree
    double previous = 1e300;
    for (int degree : {3, 4, 5, 6, 7}) {
        const GeneratorFamily fam(config(1, degree, 4.0));
        EXPECT_LT(fam.half_width(), previous);
        previous = fam.half_width();
    }
}

TEST(Factorial, SmallValues)
{
    EXPECT_EQ(factorial(0), 1.0);
    EXPECT_EQ(factorial(3), 6.0);
    EXPECT_EQ(factorial(7), 5040.0);
}

TEST(DiscriminatorPairs, CountAndHalf)
{
    const auto pairs = discriminator_pairs(5);
    EXPECT_EQ(pairs.size(), 5u * 4u + 1u);
    EXPECT_EQ(pairs.front(), std::make_pair(std::size_t{0}, std::size_t{0}));
}

} // namespace
} // namespace rgan
