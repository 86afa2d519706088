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

#ifndef RGAN_DIVERGENCE_HPP
#define RGAN_DIVERGENCE_HPP

// KL and Jensen-Shannon divergences, the GAN loss and its optimal
// discriminator, all by tensor quadrature on an evaluation grid. Both
// densities are rescaled to unit quadrature mass on that grid first, so
// divergences vanish exactly for identical inputs.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "rgan/error.hpp"
#include "rgan/parallel.hpp"
#include "rgan/quadrature.hpp"

namespace rgan {

using DensityEval = std::function<double(std::span<const double>)>;

/// A discriminator [0,1]^d -> (0,1) with recorded range bounds.
struct DiscriminatorFn {
    std::function<double(std::span<const double>)> eval;
    double lower = 0.0;
    double upper = 1.0;

    double operator()(std::span<const double> x) const { return eval(x); }
};

/// Known pointwise bounds lo <= f <= hi of a density (defaults are vacuous).
struct DensityRange {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

/// Node values of one or more functions on an evaluation grid.
struct GridTable {
    EvalGrid grid;
    std::vector<double> weights;

    explicit GridTable(const EvalGrid& g) : grid(g), weights(g.weights()) {}

    template <class F>
    std::vector<double> values(const F& f) const
    {
        return tabulate(grid, f);
    }

    double integral(std::span<const double> v) const
    {
        return weighted_sum(weights, [&](std::size_t i) { return v[i]; });
    }
};

namespace detail {

inline std::vector<double> unit_mass(const GridTable& table, std::vector<double> v)
{
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            fail(ErrorKind::NonPositiveDensity, "density must be finite and strictly positive on the evaluation grid");
        }
    }
    const double mass = table.integral(v);
    for (double& x : v) {
        x /= mass;
    }
    return v;
}

} // namespace detail

/// KL divergence from node values (both rescaled to unit mass).
inline double kl_from_values(const GridTable& table, std::vector<double> f, std::vector<double> g)
{
    f = detail::unit_mass(table, std::move(f));
    g = detail::unit_mass(table, std::move(g));
    return weighted_sum(table.weights, [&](std::size_t i) { return f[i] * std::log(f[i] / g[i]); });
}

/// JS divergence from node values (both rescaled to unit mass).
inline double js_from_values(const GridTable& table, std::vector<double> f, std::vector<double> g)
{
    f = detail::unit_mass(table, std::move(f));
    g = detail::unit_mass(table, std::move(g));
    return 0.5 * weighted_sum(table.weights, [&](std::size_t i) {
               const double m = 0.5 * (f[i] + g[i]);
               return f[i] * std::log(f[i] / m) + g[i] * std::log(g[i] / m);
           });
}

/// 0.5 * int [f_mu log D + f_phi log(1 - D)] from node values.
inline double loss_from_values(const GridTable& table, std::vector<double> f_mu, std::vector<double> f_phi,
                               std::span<const double> disc)
{
    for (double v : disc) {
        if (!(v > 0.0 && v < 1.0)) {
            fail(ErrorKind::DiscriminatorOutOfRange, "discriminator value outside (0,1)");
        }
    }
    f_mu = detail::unit_mass(table, std::move(f_mu));
    f_phi = detail::unit_mass(table, std::move(f_phi));
    return 0.5 * weighted_sum(table.weights, [&](std::size_t i) {
               return f_mu[i] * std::log(disc[i]) + f_phi[i] * std::log1p(-disc[i]);
           });
}

inline double kl_divergence(const DensityEval& f, const DensityEval& g, const EvalGrid& grid)
{
    const GridTable t(grid);
    return kl_from_values(t, t.values(f), t.values(g));
}

inline double js_divergence(const DensityEval& f, const DensityEval& g, const EvalGrid& grid)
{
    const GridTable t(grid);
    return js_from_values(t, t.values(f), t.values(g));
}

/// D = f_mu / (f_mu + f_phi); range bounds follow from the density bounds.
inline DiscriminatorFn optimal_discriminator(DensityEval f_mu, DensityEval f_phi, DensityRange mu_range = {},
                                             DensityRange phi_range = {})
{
    DiscriminatorFn d;
    d.eval = [f_mu = std::move(f_mu), f_phi = std::move(f_phi)](std::span<const double> x) {
        const double a = f_mu(x);
        const double b = f_phi(x);
        return a / (a + b);
    };
    d.lower = mu_range.lo > 0.0 ? mu_range.lo / (mu_range.lo + phi_range.hi) : 0.0;
    d.upper = phi_range.lo > 0.0 ? mu_range.hi / (mu_range.hi + phi_range.lo) : 1.0;
    if (!std::isfinite(mu_range.hi)) {
        d.upper = 1.0;
    }
    return d;
}

inline double theoretical_loss(const DensityEval& f_mu, const DensityEval& f_phi, const DiscriminatorFn& disc,
                               const EvalGrid& grid)
{
    const GridTable t(grid);
    const auto dv = t.values(disc.eval);
    return loss_from_values(t, t.values(f_mu), t.values(f_phi), dv);
}

} // namespace rgan

#endif // RGAN_DIVERGENCE_HPP
