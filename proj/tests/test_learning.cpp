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
#include <cmath>
#include <numbers>
#include <vector>

#include "rgan/divergence.hpp"
#include "rgan/families.hpp"
#include "rgan/hypothesis.hpp"
#include "rgan/learning.hpp"
#include "rgan/parallel.hpp"
#include "rgan/random.hpp"
#include "rgan/rosenblatt.hpp"

namespace rgan {
namespace {

const double kLog2 = std::numbers::ln2;

HypothesisConfig config(int degree)
{
    HypothesisConfig c;
    c.dim = 1;
    c.degree = degree;
    c.K = 4.0;
    return c;
}

/// Lattice net with `per` points per parameter (odd counts contain the identity).
EpsNet lattice(const GeneratorFamily& fam, std::size_t per, bool include_center = false)
{
    const double eps = fam.half_width() * fam.sup_lipschitz() / static_cast<double>(per) * (1.0 + 1e-9);
    return build_eps_net(fam, eps, NetOptions{1000000, include_center});
}

/// Target whose density is the pushforward of a family member, tabulated on
/// the default evaluation grid so the theory matrix sees it exactly.
GridDensity member_target(const GeneratorFamily& fam, std::span<const double> theta)
{
    const PushforwardDensity f(fam.make(theta));
    return normalize(tabulate_density(1, 129, f));
}

struct ThreadGuard {
    explicit ThreadGuard(std::size_t n) { set_thread_count(n); }
    ~ThreadGuard() { set_thread_count(1); }
    ThreadGuard(const ThreadGuard&) = delete;
    ThreadGuard& operator=(const ThreadGuard&) = delete;
};

TEST(CompensatedSum, CancelsRoundoff)
{
    std::vector<double> v{1.0, 1e100, 1.0, -1e100};
    EXPECT_EQ(compensated_sum(v), 2.0);
}

TEST(TrainingSample, DeterministicAndInCube)
{
    const auto gen = build_generator(make_named_density("coupled", 2, 65));
    const auto a = draw_training_sample(gen, 500, 42);
    const auto b = draw_training_sample(gen, 500, 42);
    EXPECT_EQ(a.real_points, b.real_points);
    EXPECT_EQ(a.noise_points, b.noise_points);
    const auto c = draw_training_sample(gen, 500, 43);
    EXPECT_NE(a.real_points, c.real_points);
    for (double v : a.real_points) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    for (double v : a.noise_points) {
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

TEST(EmpiricalLoss, HalfDiscriminatorGivesMinusLog2)
{
    const GeneratorFamily fam(config(3));
    const auto theta = lattice(fam, 3).members[1];
    const auto disc = make_discriminator(fam, theta, theta);
    const auto s = draw_training_sample(build_generator(make_named_density("tilted", 1, 129)), 1000, 1);
    EXPECT_DOUBLE_EQ(empirical_loss(disc, fam.make(theta), s), -kLog2);
}

TEST(EmpiricalLoss, SinglePointArithmetic)
{
    TrainingSample s;
    s.n = 1;
    s.dim = 1;
    s.real_points = {0.3};
    s.noise_points = {0.7};
    DiscriminatorFn d;
    d.eval = [](std::span<const double> x) { return x[0] == 0.3 ? 0.2 : 0.8; };
    EXPECT_NEAR(empirical_loss(d, identity_map(1), s), std::log(0.2), 1e-15);
}

TEST(EmpiricalLoss, RejectsOutOfRange)
{
    TrainingSample s;
    s.n = 1;
    s.dim = 1;
    s.real_points = {0.3};
    s.noise_points = {0.7};
    DiscriminatorFn d;
    d.eval = [](std::span<const double>) { return 0.0; };
    try {
        empirical_loss(d, identity_map(1), s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DiscriminatorOutOfRange);
    }
}

TEST(EmpiricalLoss, UnbiasedForTheoreticalLossProperty)
{
    // t-statistic of mean(L_hat) - L over 200 resamples stays within 3
    const GeneratorFamily fam(config(3));
    const auto target = make_named_density("tilted", 1, 129);
    const auto gen = build_generator(target);
    const auto net = lattice(fam, 3);
    const CounterRng rng(3, Stream::Test);
    for (std::uint64_t pair = 0; pair < 3; ++pair) {
        const auto pick = [&](std::uint64_t i) {
            return net.members[static_cast<std::size_t>(rng.uniform(10 * pair + i) * static_cast<double>(net.size()))];
        };
        const auto a = pick(0);
        auto b = pick(1);
        if (a == b) {
            b = net.members[(std::find(net.members.begin(), net.members.end(), a) - net.members.begin() + 1) %
                            net.size()];
        }
        const auto phi = fam.make(pick(2));
        const auto disc = make_discriminator(fam, a, b);
        const double L = theoretical_loss(target, PushforwardDensity(phi), disc, EvalGrid{1, 4097, QuadRule::trapezoid});
        std::vector<double> values(200);
        for (std::size_t t = 0; t < values.size(); ++t) {
            values[t] = empirical_loss(disc, phi, draw_training_sample(gen, 200, derive_seed(11, pair, t)));
        }
        const auto summary = summarize(200, values);
        const double tstat = (summary.mean - L) / (summary.stddev / std::sqrt(200.0));
        EXPECT_LE(std::abs(tstat), 3.0) << "pair " << pair;
    }
}

TEST(Summary, QuantilesAndMoments)
{
    const auto s = summarize(10, {4.0, 1.0, 3.0, 2.0, 5.0});
    EXPECT_EQ(s.mean, 3.0);
    EXPECT_NEAR(s.stddev, std::sqrt(2.5), 1e-15);
    EXPECT_EQ(s.q50, 3.0);
    EXPECT_NEAR(s.q05, 1.2, 1e-15);
    EXPECT_NEAR(s.q95, 4.8, 1e-15);
    EXPECT_EQ(s.values.front(), 4.0);
}

TEST(NetExperiment, TheoryMatchesQuadraturePerPair)
{
    const GeneratorFamily fam(config(3));
    const auto target = make_named_density("tilted", 1, 129);
    const auto net = lattice(fam, 2);
    const NetExperiment ex(fam, net, target);
    for (std::size_t c = 0; c < ex.generator_count(); ++c) {
        for (std::size_t p = 0; p < ex.discriminator_count(); ++p) {
            const auto [a, b] = ex.pairs()[p];
            const auto disc = make_discriminator(fam, ex.members()[a], ex.members()[b]);
            const double L =
                theoretical_loss(target, PushforwardDensity(fam.make(ex.members()[c])), disc, default_eval_grid(1));
            EXPECT_NEAR(ex.theoretical_loss(c, p), L, 1e-12);
        }
    }
}

TEST(NetExperiment, EmpiricalMatrixMatchesEmpiricalLoss)
{
    const GeneratorFamily fam(config(3));
    const NetExperiment ex(fam, lattice(fam, 2), make_named_density("tilted", 1, 129));
    const auto s = ex.trial_sample(300, 5, 0);
    const auto emp = ex.empirical_losses(s);
    for (std::size_t c = 0; c < ex.generator_count(); ++c) {
        for (std::size_t p = 0; p < ex.discriminator_count(); ++p) {
            const auto [a, b] = ex.pairs()[p];
            const auto disc = make_discriminator(fam, ex.members()[a], ex.members()[b]);
            EXPECT_NEAR(emp[c * ex.discriminator_count() + p], empirical_loss(disc, fam.make(ex.members()[c]), s),
                        1e-12);
        }
    }
}

TEST(ErrorDecomposition, FiniteNetInequalityProperty)
{
    const GeneratorFamily fam(config(3));
    const NetExperiment ex(fam, lattice(fam, 3), make_named_density("tilted", 1, 129));
    const double best = ex.theoretical_inner()[ex.best_theoretical_generator()];
    for (std::size_t n : {10u, 100u, 1000u}) {
        for (std::size_t t = 0; t < 20; ++t) {
            const auto trial = ex.evaluate(ex.trial_sample(n, 17, t));
            const double excess = trial.theoretical_at_best - best;
            EXPECT_GE(excess, 0.0);
            EXPECT_LE(excess, 2.0 * trial.sampling_error);
        }
    }
}

TEST(Minimax, UniformTargetRecoversIdentity)
{
    // Y and Z are independent, so at small n another member can win the
    // empirical min-max; the realizable bound js <= 2 eps_hat still holds.
    const GeneratorFamily fam(config(3));
    const auto net = lattice(fam, 3, true);
    const NetExperiment ex(fam, net, make_named_density("uniform", 1, 129));
    const auto identity = static_cast<std::size_t>(
        std::find(net.members.begin(), net.members.end(), fam.neutral()) - net.members.begin());
    ASSERT_LT(identity, net.size());
    EXPECT_EQ(ex.best_theoretical_generator(), identity);
    EXPECT_LT(ex.js_to_target(identity), 1e-8);
    for (std::size_t n : {1u, 50u, 2000u}) {
        const auto s = ex.trial_sample(n, 3, 0);
        const auto r = minimax_fit(ex, s, Strategy::net_exhaustive);
        EXPECT_LE(r.js_to_target, 2.0 * ex.evaluate(s).sampling_error + 1e-12) << "n=" << n;
    }
    const auto r = minimax_fit(ex, ex.trial_sample(2000, 3, 0), Strategy::net_exhaustive);
    EXPECT_EQ(r.best_generator.coefficients, fam.neutral());
    EXPECT_LT(r.js_to_target, 1e-8);
}

TEST(Minimax, TiltedTargetLargeSample)
{
    const GeneratorFamily fam(config(3));
    const NetExperiment ex(fam, lattice(fam, 5), make_named_density("tilted", 1, 129));
    const auto r = minimax_fit(ex, ex.trial_sample(10000, 4, 0), Strategy::net_exhaustive);
    EXPECT_LT(r.js_to_target, 0.01);
    EXPECT_GE(r.js_to_target, 0.0);
}

TEST(Minimax, JsBoundedByTwiceSamplingErrorProperty)
{
    // realizable target: its density is a net member's, so the net contains
    // every optimal discriminator D_phi and the net max equals JS - log 2
    const GeneratorFamily fam(config(3));
    const auto net = lattice(fam, 3);
    for (std::size_t member : {0u, 4u, 7u}) {
        const NetExperiment ex(fam, net, member_target(fam, net.members[member]));
        EXPECT_LT(ex.js_to_target(member), 1e-12);
        for (std::size_t t = 0; t < 10; ++t) {
            const auto s = ex.trial_sample(200, 23, t);
            const auto r = minimax_fit(ex, s, Strategy::net_exhaustive);
            const auto trial = ex.evaluate(s);
            EXPECT_LE(r.js_to_target, 2.0 * trial.sampling_error + 1e-12);
        }
    }
}

TEST(Minimax, AchievedValueMatchesEmpiricalLoss)
{
    const GeneratorFamily fam(config(3));
    const NetExperiment ex(fam, lattice(fam, 3), make_named_density("tilted", 1, 129));
    const auto s = ex.trial_sample(500, 8, 0);
    for (auto strategy : {Strategy::net_exhaustive, Strategy::alternating_gradient}) {
        const auto r = minimax_fit(ex, s, strategy);
        const auto disc = make_discriminator(fam, r.discriminator_a, r.discriminator_b);
        EXPECT_NEAR(r.achieved_value, empirical_loss(disc, fam.make(r.best_generator.coefficients), s), 1e-12);
        EXPECT_GE(r.js_to_target, 0.0);
    }
}

TEST(Minimax, ReorderInvariance)
{
    const GeneratorFamily fam(config(3));
    const auto net = lattice(fam, 3);
    auto reversed = net;
    std::reverse(reversed.members.begin(), reversed.members.end());
    const auto target = make_named_density("tilted", 1, 129);
    const NetExperiment ex(fam, net, target);
    const NetExperiment ex_rev(fam, reversed, target);
    for (std::size_t t = 0; t < 5; ++t) {
        const auto s = ex.trial_sample(300, 31, t);
        const auto a = minimax_fit(ex, s, Strategy::net_exhaustive);
        const auto b = minimax_fit(ex_rev, s, Strategy::net_exhaustive);
        EXPECT_EQ(a.achieved_value, b.achieved_value);
        EXPECT_EQ(a.best_generator.coefficients, b.best_generator.coefficients);
        EXPECT_EQ(ex.evaluate(s).sampling_error, ex_rev.evaluate(s).sampling_error);
    }
}

TEST(Minimax, GradientModeStaysCertified)
{
    const GeneratorFamily fam(config(3));
    const NetExperiment ex(fam, lattice(fam, 3), make_named_density("tilted", 1, 129));
    const auto s = ex.trial_sample(400, 9, 0);
    GradientOptions opts;
    opts.max_iterations = 5;
    const auto r = minimax_fit(ex, s, Strategy::alternating_gradient, opts);
    EXPECT_TRUE(fam.in_box(r.best_generator.coefficients));
    EXPECT_TRUE(fam.in_box(r.discriminator_a));
    EXPECT_TRUE(fam.in_box(r.discriminator_b));
    EXPECT_FALSE(r.trace.empty());
    EXPECT_LE(r.trace.size(), opts.max_iterations);
    EXPECT_TRUE(std::isfinite(r.optimization_gap));
}

TEST(SamplingError, ReproducibleAndThreadIndependent)
{
    const GeneratorFamily fam(config(3));
    const NetExperiment ex(fam, lattice(fam, 3), make_named_density("tilted", 1, 129));
    const auto a = estimate_sampling_error(ex, 256, 1, 99);
    const auto b = estimate_sampling_error(ex, 256, 1, 99);
    EXPECT_EQ(a.values, b.values);
    const auto serial = estimate_sampling_error(ex, 128, 6, 5);
    ThreadGuard guard(3);
    const auto threaded = estimate_sampling_error(ex, 128, 6, 5);
    EXPECT_EQ(serial.values, threaded.values);
    EXPECT_EQ(serial.mean, threaded.mean);
}

TEST(SamplingError, DecreasesAcrossDecadesProperty)
{
    const GeneratorFamily fam(config(2));
    const NetExperiment ex(fam, lattice(fam, 5), make_named_density("tilted", 1, 129));
    std::vector<SamplingErrorSummary> rows;
    for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
        rows.push_back(estimate_sampling_error(ex, n, n >= 100000 ? 8 : 20, 13));
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double se = std::sqrt(rows[i].stddev * rows[i].stddev / static_cast<double>(rows[i].trials) +
                                    rows[i + 1].stddev * rows[i + 1].stddev / static_cast<double>(rows[i + 1].trials));
        EXPECT_LE(rows[i + 1].mean, rows[i].mean + 2.0 * se) << "n=" << rows[i + 1].n;
    }
    EXPECT_LT(rows.back().mean, rows.front().mean);
}

TEST(Rate, SingletonGridFlagsSlope)
{
    const GeneratorFamily fam(config(2));
    const NetExperiment ex(fam, lattice(fam, 5), make_named_density("tilted", 1, 129));
    const std::vector<std::size_t> grid{512};
    const auto rep = rate_experiment(ex, grid, 4, 21);
    EXPECT_FALSE(rep.slope.has_value());
    EXPECT_FALSE(rep.warnings.empty());
    ASSERT_EQ(rep.rows.size(), 1u);
    EXPECT_EQ(rep.rows[0].summary.values, estimate_sampling_error(ex, 512, 4, 21).values);
}

TEST(Rate, EnvelopeAndTailDominate)
{
    const GeneratorFamily fam(config(2));
    const NetExperiment ex(fam, lattice(fam, 5), make_named_density("tilted", 1, 129));
    const std::vector<std::size_t> grid{64, 1024};
    RateOptions opts;
    opts.delta = 0.25;
    const auto rep = rate_experiment(ex, grid, 8, 22, opts);
    ASSERT_TRUE(rep.regularity_ok);
    ASSERT_TRUE(rep.slope.has_value());
    for (const auto& row : rep.rows) {
        EXPECT_LE(row.summary.mean, row.bound_C_over_sqrt_n);
        EXPECT_LE(row.exceed_frac, row.tail_probability);
    }
}

TEST(Rate, IrregularConfigSuppressesBounds)
{
    auto c = config(2);
    c.k = 1;
    c.alpha = 0.2; // 1 <= 1 - 0.2 + 0.5
    const GeneratorFamily fam(c);
    const NetExperiment ex(fam, lattice(fam, 3), make_named_density("tilted", 1, 129));
    const std::vector<std::size_t> grid{64, 128};
    const auto rep = rate_experiment(ex, grid, 2, 1);
    EXPECT_FALSE(rep.regularity_ok);
    EXPECT_TRUE(std::isnan(rep.rows[0].bound_C_over_sqrt_n));
    EXPECT_FALSE(rep.warnings.empty());
}

TEST(LogLogSlope, ExactPowerLaw)
{
    const std::vector<double> n{64, 256, 1024, 4096};
    std::vector<double> y;
    for (double v : n) {
        y.push_back(3.0 / std::sqrt(v));
    }
    EXPECT_NEAR(*loglog_slope(n, y), -0.5, 1e-14);
    EXPECT_FALSE(loglog_slope(std::span<const double>(n.data(), 1), y).has_value());
}

TEST(Strategy, Parse)
{
    EXPECT_EQ(parse_strategy("net"), Strategy::net_exhaustive);
    EXPECT_EQ(parse_strategy("grad"), Strategy::alternating_gradient);
    EXPECT_THROW(parse_strategy("adam"), Error);
}

} // namespace
} // namespace rgan
