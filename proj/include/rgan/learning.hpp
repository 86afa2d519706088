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

#ifndef RGAN_LEARNING_HPP
#define RGAN_LEARNING_HPP

// Empirical GAN loss, exact minimax over finite nets, projected gradient
// minimax, and Monte Carlo estimates of the sampling error
//     sup over (generator, discriminator) of |empirical loss - loss|
// where the sup runs over a generator net and the paired-generator
// discriminators built from it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rgan/bounds.hpp"
#include "rgan/density.hpp"
#include "rgan/divergence.hpp"
#include "rgan/error.hpp"
#include "rgan/hypothesis.hpp"
#include "rgan/parallel.hpp"
#include "rgan/random.hpp"
#include "rgan/rosenblatt.hpp"

namespace rgan {

/// Neumaier-compensated sum in index order (deterministic, nearly exact).
inline double compensated_sum(std::span<const double> v)
{
    double s = 0.0;
    double c = 0.0;
    for (double x : v) {
        const double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + c;
}

/// Real points Y_i ~ target and uniform noise Z_i, regenerated from (seed, n).
struct TrainingSample {
    std::size_t n = 0;
    std::size_t dim = 1;
    std::vector<double> real_points;  ///< n x dim, row-major
    std::vector<double> noise_points; ///< n x dim, row-major
    std::uint64_t seed = 0;

    std::span<const double> real(std::size_t i) const { return {real_points.data() + i * dim, dim}; }
    std::span<const double> noise(std::size_t i) const { return {noise_points.data() + i * dim, dim}; }
};

/// Y_i = target_generator(U_i) from the target stream; Z_i from the generator stream.
inline TrainingSample draw_training_sample(const TriangularMap& target_generator, std::size_t n, std::uint64_t seed)
{
    if (n == 0) {
        fail(ErrorKind::ConfigInvalid, "sample size must be positive");
    }
    TrainingSample s;
    s.n = n;
    s.dim = target_generator.dim();
    s.seed = seed;
    s.real_points = sample(target_generator, n, seed, Stream::TargetNoise);
    s.noise_points.resize(n * s.dim);
    const CounterRng rng(seed, Stream::GeneratorNoise);
    for (std::size_t i = 0; i < n; ++i) {
        rng.uniform_point(i, std::span<double>(s.noise_points.data() + i * s.dim, s.dim));
    }
    return s;
}

/// (1/2n) sum log D(Y_i) + (1/2n) sum log(1 - D(generator(Z_i))).
inline double empirical_loss(const DiscriminatorFn& disc, const TriangularMap& generator, const TrainingSample& s)
{
    if (s.n == 0) {
        fail(ErrorKind::ConfigInvalid, "empty training sample");
    }
    std::vector<double> real_terms(s.n), fake_terms(s.n);
    parallel_for(s.n, [&](std::size_t begin, std::size_t end) {
        double x[8];
        for (std::size_t i = begin; i < end; ++i) {
            const double dr = disc(s.real(i));
            generator.apply(s.noise(i), std::span<double>(x, s.dim));
            const double df = disc(std::span<const double>(x, s.dim));
            if (!(dr > 0.0 && dr < 1.0) || !(df > 0.0 && df < 1.0)) {
                fail(ErrorKind::DiscriminatorOutOfRange, "discriminator value outside (0,1)");
            }
            real_terms[i] = std::log(dr);
            fake_terms[i] = std::log1p(-df);
        }
    });
    const double nn = 2.0 * static_cast<double>(s.n);
    return compensated_sum(real_terms) / nn + compensated_sum(fake_terms) / nn;
}

struct SamplingErrorSummary {
    std::size_t n = 0;
    std::size_t trials = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    std::vector<double> values;
};

/// Linear-interpolation quantile of sorted data.
inline double quantile_sorted(std::span<const double> sorted, double q)
{
    if (sorted.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline SamplingErrorSummary summarize(std::size_t n, std::vector<double> values)
{
    SamplingErrorSummary s;
    s.n = n;
    s.trials = values.size();
    s.mean = compensated_sum(values) / static_cast<double>(values.size());
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        sq[i] = (values[i] - s.mean) * (values[i] - s.mean);
    }
    s.stddev = values.size() > 1 ? std::sqrt(compensated_sum(sq) / static_cast<double>(values.size() - 1)) : 0.0;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    s.q05 = quantile_sorted(sorted, 0.05);
    s.q50 = quantile_sorted(sorted, 0.50);
    s.q95 = quantile_sorted(sorted, 0.95);
    s.values = std::move(values);
    return s;
}

/// Everything one trial yields on the finite nets.
struct NetTrial {
    double sampling_error = 0.0;   ///< max |L_hat - L| over the nets
    std::size_t best_generator = 0; ///< argmin over generators of max over discriminators of L_hat
    std::size_t best_discriminator = 0;
    double empirical_value = 0.0;  ///< min-max of L_hat
    double theoretical_at_best = 0.0; ///< max over discriminators of L at best_generator
    std::vector<double> empirical_inner; ///< max over discriminators of L_hat, per generator
};

/// Generator net, the discriminators of all ordered member pairs, and the
/// theoretical loss of every (generator, discriminator) combination,
/// precomputed once by quadrature and shared by every trial.
class NetExperiment {
public:
    NetExperiment(const GeneratorFamily& family, const EpsNet& net, const GridDensity& target,
                  std::optional<EvalGrid> grid = std::nullopt)
        : family_(&family), target_(target), target_generator_(build_generator(target))
    {
        if (net.size() == 0) {
            fail(ErrorKind::ConfigInvalid, "empty net");
        }
        if (target.dim() != family.config().dim) {
            fail(ErrorKind::ConfigInvalid, "target dimension differs from the family dimension");
        }
        members_ = net.members;
        for (const auto& theta : members_) {
            densities_.emplace_back(family.make(theta));
        }
        pairs_ = discriminator_pairs(members_.size());
        const GridTable table(grid.value_or(default_eval_grid(target.dim())));
        const std::size_t nodes = table.grid.size();
        const std::size_t ng = members_.size();
        std::vector<std::vector<double>> fg(ng);
        parallel_for(ng, [&](std::size_t begin, std::size_t end) {
            for (std::size_t g = begin; g < end; ++g) {
                fg[g] = tabulate(table.grid, densities_[g]);
            }
        });
        auto fmu = table.values([this](std::span<const double> x) { return target_(x); });
        fmu = detail::unit_mass(table, std::move(fmu));
        std::vector<std::vector<double>> fg_unit(ng);
        for (std::size_t g = 0; g < ng; ++g) {
            fg_unit[g] = detail::unit_mass(table, fg[g]);
        }
        js_.resize(ng);
        for (std::size_t g = 0; g < ng; ++g) {
            js_[g] = js_from_values(table, fmu, fg[g]);
        }
        // L(c, (a,b)) = 1/2 int f_mu log(f_a/(f_a+f_b)) + 1/2 int f_c log(f_b/(f_a+f_b))
        const std::size_t np = pairs_.size();
        theory_.assign(ng * np, 0.0);
        parallel_for(np, [&](std::size_t begin, std::size_t end) {
            std::vector<double> log_d(nodes), log_1md(nodes), terms(nodes);
            for (std::size_t p = begin; p < end; ++p) {
                const auto [a, b] = pairs_[p];
                for (std::size_t i = 0; i < nodes; ++i) {
                    const double s = fg[a][i] + fg[b][i];
                    log_d[i] = std::log(fg[a][i] / s);
                    log_1md[i] = std::log(fg[b][i] / s);
                }
                for (std::size_t i = 0; i < nodes; ++i) {
                    terms[i] = table.weights[i] * fmu[i] * log_d[i];
                }
                const double real_part = 0.5 * pairwise_sum(terms);
                for (std::size_t c = 0; c < ng; ++c) {
                    for (std::size_t i = 0; i < nodes; ++i) {
                        terms[i] = table.weights[i] * fg_unit[c][i] * log_1md[i];
                    }
                    theory_[c * np + p] = real_part + 0.5 * pairwise_sum(terms);
                }
            }
        });
        theory_inner_.assign(ng, -std::numeric_limits<double>::infinity());
        for (std::size_t c = 0; c < ng; ++c) {
            for (std::size_t p = 0; p < np; ++p) {
                theory_inner_[c] = std::max(theory_inner_[c], theory_[c * np + p]);
            }
        }
        best_theory_ = static_cast<std::size_t>(
            std::min_element(theory_inner_.begin(), theory_inner_.end()) - theory_inner_.begin());
    }

    const GeneratorFamily& family() const { return *family_; }
    const GridDensity& target() const { return target_; }
    const TriangularMap& target_generator() const { return target_generator_; }
    std::size_t generator_count() const { return members_.size(); }
    std::size_t discriminator_count() const { return pairs_.size(); }
    std::size_t index_size() const { return members_.size() * pairs_.size(); }
    std::span<const std::vector<double>> members() const { return members_; }
    std::span<const std::pair<std::size_t, std::size_t>> pairs() const { return pairs_; }
    double theoretical_loss(std::size_t g, std::size_t p) const { return theory_[g * pairs_.size() + p]; }
    /// max over discriminators of L, per generator
    std::span<const double> theoretical_inner() const { return theory_inner_; }
    std::size_t best_theoretical_generator() const { return best_theory_; }
    double js_to_target(std::size_t g) const { return js_[g]; }

    /// L_hat for every (generator, discriminator), row-major by generator.
    std::vector<double> empirical_losses(const TrainingSample& s) const
    {
        const std::size_t ng = members_.size();
        const std::size_t np = pairs_.size();
        const std::size_t n = s.n;
        const std::size_t d = s.dim;
        // density of every member at every real point and at every generated point
        std::vector<double> at_real(ng * n);
        std::vector<double> at_fake(ng * ng * n); // [c][g][i]
        parallel_for(ng, [&](std::size_t begin, std::size_t end) {
            double x[8];
            for (std::size_t c = begin; c < end; ++c) {
                const TriangularMap& gen = densities_[c].base_map();
                for (std::size_t i = 0; i < n; ++i) {
                    at_real[c * n + i] = densities_[c](s.real(i));
                    gen.apply(s.noise(i), std::span<double>(x, d));
                    for (std::size_t g = 0; g < ng; ++g) {
                        at_fake[(c * ng + g) * n + i] = densities_[g](std::span<const double>(x, d));
                    }
                }
            }
        });
        std::vector<double> out(ng * np);
        const double nn = 2.0 * static_cast<double>(n);
        parallel_for(np, [&](std::size_t begin, std::size_t end) {
            std::vector<double> terms(n);
            for (std::size_t p = begin; p < end; ++p) {
                const auto [a, b] = pairs_[p];
                for (std::size_t i = 0; i < n; ++i) {
                    const double fa = at_real[a * n + i];
                    const double fb = at_real[b * n + i];
                    terms[i] = std::log(fa / (fa + fb));
                }
                const double real_part = compensated_sum(terms) / nn;
                for (std::size_t c = 0; c < ng; ++c) {
                    const double* fc = at_fake.data() + c * ng * n;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double fa = fc[a * n + i];
                        const double fb = fc[b * n + i];
                        terms[i] = std::log(fb / (fa + fb));
                    }
                    out[c * np + p] = real_part + compensated_sum(terms) / nn;
                }
            }
        });
        return out;
    }

    NetTrial evaluate(const TrainingSample& s) const
    {
        const auto emp = empirical_losses(s);
        const std::size_t ng = members_.size();
        const std::size_t np = pairs_.size();
        NetTrial t;
        t.empirical_inner.assign(ng, -std::numeric_limits<double>::infinity());
        std::vector<std::size_t> arg(ng, 0);
        for (std::size_t c = 0; c < ng; ++c) {
            for (std::size_t p = 0; p < np; ++p) {
                const double v = emp[c * np + p];
                t.sampling_error = std::max(t.sampling_error, std::abs(v - theory_[c * np + p]));
                if (v > t.empirical_inner[c]) {
                    t.empirical_inner[c] = v;
                    arg[c] = p;
                }
            }
        }
        t.best_generator = static_cast<std::size_t>(
            std::min_element(t.empirical_inner.begin(), t.empirical_inner.end()) - t.empirical_inner.begin());
        t.best_discriminator = arg[t.best_generator];
        t.empirical_value = t.empirical_inner[t.best_generator];
        t.theoretical_at_best = theory_inner_[t.best_generator];
        return t;
    }

    /// Fresh sample of trial `trial` at size n: seeds derive from (seed, n, trial).
    TrainingSample trial_sample(std::size_t n, std::uint64_t seed, std::size_t trial) const
    {
        return draw_training_sample(target_generator_, n, derive_seed(seed, n, trial));
    }

private:
    const GeneratorFamily* family_;
    GridDensity target_;
    TriangularMap target_generator_;
    std::vector<std::vector<double>> members_;
    std::vector<PushforwardDensity> densities_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<double> theory_;
    std::vector<double> theory_inner_;
    std::vector<double> js_;
    std::size_t best_theory_ = 0;
};

inline SamplingErrorSummary estimate_sampling_error(const NetExperiment& ex, std::size_t n, std::size_t trials,
                                                    std::uint64_t seed)
{
    if (trials == 0) {
        fail(ErrorKind::ConfigInvalid, "trials must be >= 1");
    }
    std::vector<double> values(trials);
    parallel_for(trials, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            values[t] = ex.evaluate(ex.trial_sample(n, seed, t)).sampling_error;
        }
    });
    return summarize(n, std::move(values));
}

enum class Strategy { net_exhaustive, alternating_gradient };

inline Strategy parse_strategy(std::string_view s)
{
    if (s == "net" || s == "net_exhaustive") {
        return Strategy::net_exhaustive;
    }
    if (s == "grad" || s == "alternating_gradient") {
        return Strategy::alternating_gradient;
    }
    fail(ErrorKind::ConfigInvalid, "unknown strategy '" + std::string(s) + "'");
}

struct TraceEntry {
    std::size_t iteration = 0;
    double value = 0.0;
    double step = 0.0;
};

struct MinimaxResult {
    GeneratorParams best_generator;
    std::vector<double> discriminator_a; ///< inner maximizer D = f_a / (f_a + f_b)
    std::vector<double> discriminator_b;
    std::vector<double> inner_values;    ///< max over discriminators of L_hat, per outer candidate
    double achieved_value = 0.0;
    double js_to_target = 0.0;
    double optimization_gap = 0.0; ///< gradient mode: distance to the exact net min-max of L_hat
    bool converged = true;
    std::vector<TraceEntry> trace;
};

struct GradientOptions {
    std::size_t max_iterations = 300;
    double step = 0.5;
    double tolerance = 1e-7;
};

namespace detail {

inline double pair_loss(const GeneratorFamily& family, std::span<const double> g, std::span<const double> a,
                        std::span<const double> b, const TrainingSample& s)
{
    const PushforwardDensity fa(family.make(a));
    const PushforwardDensity fb(family.make(b));
    DiscriminatorFn d;
    d.eval = [&](std::span<const double> x) {
        const double va = fa(x);
        const double vb = fb(x);
        return va / (va + vb);
    };
    return empirical_loss(d, family.make(g), s);
}

inline void project(std::vector<double>& theta, double b)
{
    for (double& v : theta) {
        v = std::clamp(v, -b, b);
    }
}

} // namespace detail

/// Min over generators of max over discriminators of L_hat on the nets (exact),
/// or projected simultaneous descent/ascent from the neutral point.
inline MinimaxResult minimax_fit(const NetExperiment& ex, const TrainingSample& s, Strategy strategy,
                                 GradientOptions options = {})
{
    const GeneratorFamily& family = ex.family();
    const NetTrial trial = ex.evaluate(s);
    const GridTable table(default_eval_grid(family.config().dim));
    const auto fmu = table.values([&](std::span<const double> x) { return ex.target()(x); });
    MinimaxResult r;
    if (strategy == Strategy::net_exhaustive) {
        const auto& theta = ex.members()[trial.best_generator];
        r.best_generator = family.params(theta);
        const auto [a, b] = ex.pairs()[trial.best_discriminator];
        r.discriminator_a = ex.members()[a];
        r.discriminator_b = ex.members()[b];
        r.inner_values = trial.empirical_inner;
        r.achieved_value = trial.empirical_value;
        r.js_to_target = ex.js_to_target(trial.best_generator);
        return r;
    }
    const double box = family.half_width();
    std::vector<double> g = family.neutral();
    std::vector<double> a = family.neutral();
    std::vector<double> b = family.neutral();
    if (!g.empty()) {
        // start the discriminator off the symmetric saddle
        a[0] = 0.5 * box;
        b[0] = -0.5 * box;
    }
    const double h = 1e-4 * box;
    double eta = options.step;
    r.converged = false;
    auto value = [&](const auto& gg, const auto& aa, const auto& bb) { return detail::pair_loss(family, gg, aa, bb, s); };
    double current = value(g, a, b);
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        auto grad = [&](std::vector<double>& v) {
            std::vector<double> out(v.size());
            for (std::size_t q = 0; q < v.size(); ++q) {
                const double keep = v[q];
                const double up = std::min(keep + h, box);
                const double dn = std::max(keep - h, -box);
                v[q] = up;
                const double fu = value(g, a, b);
                v[q] = dn;
                const double fd = value(g, a, b);
                v[q] = keep;
                out[q] = (fu - fd) / (up - dn);
            }
            return out;
        };
        const auto gg = grad(g);
        const auto ga = grad(a);
        const auto gb = grad(b);
        double step_norm = 0.0;
        for (int halving = 0; halving < 30; ++halving) {
            auto ng = g;
            auto na = a;
            auto nb = b;
            bool outside = false;
            for (std::size_t q = 0; q < g.size(); ++q) {
                ng[q] -= eta * gg[q];
                na[q] += eta * ga[q];
                nb[q] += eta * gb[q];
                outside = outside || std::abs(ng[q]) > box || std::abs(na[q]) > box || std::abs(nb[q]) > box;
            }
            if (outside && halving < 29) {
                eta *= 0.5;
                continue;
            }
            detail::project(ng, box);
            detail::project(na, box);
            detail::project(nb, box);
            step_norm = 0.0;
            for (std::size_t q = 0; q < g.size(); ++q) {
                step_norm = std::max({step_norm, std::abs(ng[q] - g[q]), std::abs(na[q] - a[q]), std::abs(nb[q] - b[q])});
            }
            g = std::move(ng);
            a = std::move(na);
            b = std::move(nb);
            break;
        }
        current = value(g, a, b);
        r.trace.push_back({it, current, step_norm});
        if (step_norm < options.tolerance) {
            r.converged = true;
            break;
        }
    }
    r.best_generator = family.params(g);
    r.discriminator_a = a;
    r.discriminator_b = b;
    r.achieved_value = current;
    r.inner_values = {current};
    const PushforwardDensity fg(family.make(g));
    r.js_to_target = js_from_values(table, fmu, tabulate(table.grid, fg));
    // empirical inner max of the gradient iterate against the net discriminators
    double inner = -std::numeric_limits<double>::infinity();
    for (const auto& [pa, pb] : ex.pairs()) {
        inner = std::max(inner, detail::pair_loss(family, g, ex.members()[pa], ex.members()[pb], s));
    }
    r.optimization_gap = inner - trial.empirical_value;
    return r;
}

struct RateRow {
    SamplingErrorSummary summary;
    double bound_C_over_sqrt_n = 0.0;
    double tail_threshold = 0.0;
    double tail_probability = 0.0;
    double exceed_frac = 0.0;
};

struct RateReport {
    std::vector<RateRow> rows;
    std::optional<double> slope; ///< log-log least-squares slope; empty with fewer than two sizes
    bool regularity_ok = false;
    double delta = 0.1;
    double delta1 = 0.0;
    double K = 0.0;
    std::vector<std::string> warnings;
};

struct RateOptions {
    double delta = 0.1;
    bool exact_integral = false;
    double c1_star = 1.0;
};

/// Least-squares slope of log y against log x.
inline std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() < 2) {
        return std::nullopt;
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (!(sxx > 0.0)) {
        return std::nullopt;
    }
    return sxy / sxx;
}

/// One row of a rate experiment: sampling-error summary at size n and, when
/// the regularity condition holds, the bound envelope and tail threshold.
inline RateRow rate_row(const NetExperiment& ex, std::size_t n, std::size_t trials, std::uint64_t seed,
                        const RateOptions& options = {})
{
    const auto& c = ex.family().config();
    RateRow row;
    row.summary = estimate_sampling_error(ex, n, trials, seed);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.bound_C_over_sqrt_n = nan;
    row.tail_threshold = nan;
    row.tail_probability = nan;
    row.exceed_frac = nan;
    if (!c.regularity_ok()) {
        return row;
    }
    const double delta1 = certified_diameter(ex.family());
    const double nd = static_cast<double>(n);
    row.bound_C_over_sqrt_n = dudley_bound(c.dim, c.alpha, c.k, c.K, nd, delta1, options.exact_integral, options.c1_star);
    const auto tail = tail_threshold_and_prob(c.dim, c.alpha, c.k, c.K, nd, options.delta, delta1, options.c1_star);
    row.tail_threshold = tail.threshold;
    row.tail_probability = tail.probability;
    std::size_t exceed = 0;
    for (double v : row.summary.values) {
        exceed += v >= tail.threshold ? 1 : 0;
    }
    row.exceed_frac = static_cast<double>(exceed) / static_cast<double>(trials);
    return row;
}

/// Fills the slope and warnings of a report from its rows.
inline void finish_rate_report(RateReport& rep)
{
    std::vector<double> xs, ys;
    for (const auto& row : rep.rows) {
        xs.push_back(static_cast<double>(row.summary.n));
        ys.push_back(row.summary.mean);
    }
    rep.slope = loglog_slope(xs, ys);
    if (!rep.regularity_ok) {
        rep.warnings.emplace_back("k <= 1 - alpha + d/2: bound comparison suppressed");
    }
    if (!rep.slope) {
        rep.warnings.emplace_back("slope undefined: fewer than two distinct sample sizes");
    }
}

inline RateReport rate_experiment(const NetExperiment& ex, std::span<const std::size_t> n_grid, std::size_t trials,
                                  std::uint64_t seed, RateOptions options = {})
{
    if (n_grid.empty()) {
        fail(ErrorKind::ConfigInvalid, "n_grid must not be empty");
    }
    const auto& c = ex.family().config();
    RateReport rep;
    rep.regularity_ok = c.regularity_ok();
    rep.delta = options.delta;
    rep.K = c.K;
    rep.delta1 = certified_diameter(ex.family());
    for (std::size_t n : n_grid) {
        rep.rows.push_back(rate_row(ex, n, trials, seed, options));
    }
    finish_rate_report(rep);
    return rep;
}

} // namespace rgan

#endif // RGAN_LEARNING_HPP
