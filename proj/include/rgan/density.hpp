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

#ifndef RGAN_DENSITY_HPP
#define RGAN_DENSITY_HPP

// Strictly positive probability densities on [0,1]^d stored on uniform tensor
// grids. Off-node values come from multilinear interpolation, and every
// cumulative quantity (conditional CDFs) integrates that interpolant exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rgan/error.hpp"
#include "rgan/quadrature.hpp"

namespace rgan {

namespace detail {

inline std::size_t ipow(std::size_t base, std::size_t exp)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

/// Cell index and fractional offset of coordinate x on m uniform nodes.
inline std::pair<std::size_t, double> locate(double x, std::size_t m)
{
    const double scaled = std::clamp(x, 0.0, 1.0) * static_cast<double>(m - 1);
    auto cell = static_cast<std::size_t>(scaled);
    if (cell >= m - 1) {
        cell = m - 2;
    }
    return {cell, scaled - static_cast<double>(cell)};
}

/// Multilinear interpolation of row-major values with `k` axes of m nodes,
/// where each entry is a block of `stride` consecutive values; returns the
/// interpolated block into `out` (size stride).
inline void interpolate_block(std::span<const double> values, std::size_t m, std::span<const double> x,
                              std::size_t stride, std::span<double> out)
{
    const std::size_t k = x.size();
    std::fill(out.begin(), out.end(), 0.0);
    std::size_t cells[8];
    double fracs[8];
    for (std::size_t a = 0; a < k; ++a) {
        const auto [c, f] = locate(x[a], m);
        cells[a] = c;
        fracs[a] = f;
    }
    const std::size_t corners = std::size_t{1} << k;
    for (std::size_t corner = 0; corner < corners; ++corner) {
        double w = 1.0;
        std::size_t flat = 0;
        for (std::size_t a = 0; a < k; ++a) {
            const bool up = (corner >> (k - 1 - a)) & 1u;
            w *= up ? fracs[a] : 1.0 - fracs[a];
            flat = flat * m + cells[a] + (up ? 1 : 0);
        }
        if (w == 0.0) {
            continue;
        }
        const double* src = values.data() + flat * stride;
        for (std::size_t s = 0; s < stride; ++s) {
            out[s] += w * src[s];
        }
    }
}

/// Contracts the trailing axis of a row-major array (outer x m) with weights.
inline std::vector<double> contract_last(std::span<const double> values, std::size_t m, std::span<const double> w)
{
    const std::size_t outer = values.size() / m;
    std::vector<double> out(outer, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        double s = 0.0;
        const double* row = values.data() + o * m;
        for (std::size_t i = 0; i < m; ++i) {
            s += w[i] * row[i];
        }
        out[o] = s;
    }
    return out;
}

} // namespace detail

/// A positive density on [0,1]^dim sampled on `resolution` nodes per axis.
/// Values are row-major with the first axis varying slowest.
class GridDensity {
public:
    GridDensity(std::size_t dim, std::size_t resolution, std::vector<double> values,
                QuadRule rule = QuadRule::trapezoid)
        : dim_(dim), m_(resolution), values_(std::move(values)), rule_(rule)
    {
        if (dim_ == 0 || dim_ > 8) {
            fail(ErrorKind::ConfigInvalid, "density dimension must be in 1..8");
        }
        if (m_ < 2) {
            fail(ErrorKind::InsufficientResolution, "density grid needs at least 2 nodes per axis");
        }
        if (values_.size() != detail::ipow(m_, dim_)) {
            fail(ErrorKind::ConfigInvalid, "density value count does not match resolution^dim");
        }
        kappa_ = values_.front();
        for (double v : values_) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                fail(ErrorKind::NonPositiveDensity, "density values must be finite and strictly positive");
            }
            kappa_ = std::min(kappa_, v);
        }
    }

    std::size_t dim() const { return dim_; }
    std::size_t resolution() const { return m_; }
    std::span<const double> values() const { return values_; }
    double kappa() const { return kappa_; }
    QuadRule quad_rule() const { return rule_; }
    double spacing() const { return 1.0 / static_cast<double>(m_ - 1); }
    EvalGrid grid() const { return EvalGrid{dim_, m_, rule_}; }

    /// Multilinear interpolant at x in [0,1]^dim.
    double operator()(std::span<const double> x) const
    {
        double v = 0.0;
        detail::interpolate_block(values_, m_, x.first(dim_), 1, std::span<double>(&v, 1));
        return v;
    }

    /// Quadrature of the stored values over [0,1]^dim with the density's rule.
    double integral() const
    {
        const auto w = axis_weights(m_, rule_);
        std::vector<double> cur(values_.begin(), values_.end());
        for (std::size_t a = 0; a < dim_; ++a) {
            cur = detail::contract_last(cur, m_, w);
        }
        return cur.front();
    }

private:
    std::size_t dim_;
    std::size_t m_;
    std::vector<double> values_;
    QuadRule rule_;
    double kappa_ = 0.0;
};

/// Tabulates an analytic function on the grid (no normalization).
template <class F>
GridDensity tabulate_density(std::size_t dim, std::size_t resolution, const F& f, QuadRule rule = QuadRule::trapezoid)
{
    const EvalGrid g{dim, resolution, rule};
    return GridDensity(dim, resolution, tabulate(g, f), rule);
}

/// Rescales by one constant so the quadrature integral is 1.
inline GridDensity normalize(const GridDensity& density)
{
    const double total = density.integral();
    if (!(total > 0.0)) {
        fail(ErrorKind::NonPositiveDensity, "density integral is not positive");
    }
    std::vector<double> v(density.values().begin(), density.values().end());
    for (double& x : v) {
        x /= total;
    }
    return GridDensity(density.dim(), density.resolution(), std::move(v), density.quad_rule());
}

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Tensor-product quadrature over an axis-aligned subbox. Full axes use the
/// density's rule; partial axes integrate the linear interpolant exactly.
inline double integrate(const GridDensity& density, const Box& box)
{
    const std::size_t d = density.dim();
    if (box.lo.size() != d || box.hi.size() != d) {
        fail(ErrorKind::BoxOutOfDomain, "box dimension does not match density");
    }
    for (std::size_t a = 0; a < d; ++a) {
        if (!(box.lo[a] >= 0.0) || !(box.hi[a] <= 1.0) || box.lo[a] > box.hi[a]) {
            fail(ErrorKind::BoxOutOfDomain, "box exceeds [0,1]^d");
        }
    }
    const std::size_t m = density.resolution();
    std::vector<double> cur(density.values().begin(), density.values().end());
    for (std::size_t a = d; a-- > 0;) {
        const bool full = box.lo[a] == 0.0 && box.hi[a] == 1.0;
        const auto w = full ? axis_weights(m, density.quad_rule()) : interval_weights(m, box.lo[a], box.hi[a]);
        cur = detail::contract_last(cur, m, w);
    }
    return cur.front();
}

/// Density of the leading `keep` coordinates (1 <= keep <= dim), normalized.
inline GridDensity marginal(const GridDensity& density, std::size_t keep)
{
    if (keep == 0 || keep > density.dim()) {
        fail(ErrorKind::ConfigInvalid, "marginal: keep must be in 1..dim");
    }
    const std::size_t m = density.resolution();
    const auto w = axis_weights(m, density.quad_rule());
    std::vector<double> cur(density.values().begin(), density.values().end());
    for (std::size_t a = density.dim(); a > keep; --a) {
        cur = detail::contract_last(cur, m, w);
    }
    return normalize(GridDensity(keep, m, std::move(cur), density.quad_rule()));
}

/// Conditional distribution function of one coordinate given the preceding ones.
/// Between knots the CDF is the exact integral of the linearly interpolated
/// conditional density, so it is piecewise quadratic and C^1.
struct ConditionalCDF {
    std::size_t axis = 0;           ///< 0-based coordinate index j
    std::vector<double> context;    ///< y_0 .. y_{j-1}
    std::vector<double> knots;      ///< uniform nodes of [0,1]
    std::vector<double> cdf_values; ///< pinned: front() == 0, back() == 1
    std::vector<double> density;    ///< conditional density at the knots

    double operator()(double t) const
    {
        if (t <= 0.0) {
            return 0.0;
        }
        if (t >= 1.0) {
            return 1.0;
        }
        const std::size_t m = knots.size();
        const auto [i, frac] = detail::locate(t, m);
        const double h = knots[1] - knots[0];
        const double s = frac * h;
        const double v = cdf_values[i] + density[i] * s + (density[i + 1] - density[i]) * s * s / (2.0 * h);
        return std::clamp(v, 0.0, 1.0);
    }

    double pdf(double t) const
    {
        const auto [i, frac] = detail::locate(t, knots.size());
        return (1.0 - frac) * density[i] + frac * density[i + 1];
    }
};

namespace detail {

/// Interpolated conditional-density profile along the last axis of a
/// (j+1)-axis row-major array, for the context point of j coordinates.
inline std::vector<double> context_profile(std::span<const double> values, std::size_t m,
                                           std::span<const double> context)
{
    std::vector<double> profile(m);
    interpolate_block(values, m, context, m, profile);
    return profile;
}

/// Running trapezoid sums of a profile on uniform nodes (exact for the interpolant).
inline std::vector<double> cumulative(std::span<const double> profile, double h)
{
    std::vector<double> c(profile.size(), 0.0);
    for (std::size_t i = 1; i < profile.size(); ++i) {
        c[i] = c[i - 1] + 0.5 * h * (profile[i - 1] + profile[i]);
    }
    return c;
}

} // namespace detail

/// CDF of coordinate `axis` (0-based) given context y_0..y_{axis-1}.
inline ConditionalCDF conditional_cdf(const GridDensity& density, std::size_t axis, std::span<const double> context)
{
    if (axis >= density.dim() || context.size() != axis) {
        fail(ErrorKind::ConfigInvalid, "conditional_cdf: context must hold exactly `axis` coordinates");
    }
    for (double c : context) {
        if (!(c >= 0.0 && c <= 1.0)) {
            fail(ErrorKind::BoxOutOfDomain, "conditional_cdf: context outside [0,1]");
        }
    }
    const std::size_t m = density.resolution();
    const GridDensity joint = axis + 1 == density.dim() ? density : marginal(density, axis + 1);
    auto profile = detail::context_profile(joint.values(), m, context);
    auto cum = detail::cumulative(profile, density.spacing());
    const double total = cum.back();
    if (!(total > 0.0)) {
        fail(ErrorKind::ZeroMarginal, "conditional_cdf: marginal of the context vanishes");
    }
    ConditionalCDF out;
    out.axis = axis;
    out.context.assign(context.begin(), context.end());
    out.knots.resize(m);
    out.cdf_values.resize(m);
    out.density.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.knots[i] = node_coordinate(i, m);
        out.cdf_values[i] = cum[i] / total;
        out.density[i] = profile[i] / total;
    }
    out.cdf_values.front() = 0.0;
    out.cdf_values.back() = 1.0;
    return out;
}

/// Returns a copy with axes reordered: new axis a is old axis order[a].
inline GridDensity permute_axes(const GridDensity& density, std::span<const std::size_t> order)
{
    const std::size_t d = density.dim();
    const std::size_t m = density.resolution();
    std::vector<bool> seen(d, false);
    if (order.size() != d) {
        fail(ErrorKind::ConfigInvalid, "axis order must list every axis once");
    }
    for (std::size_t a : order) {
        if (a >= d || seen[a]) {
            fail(ErrorKind::ConfigInvalid, "axis order must be a permutation");
        }
        seen[a] = true;
    }
    std::vector<double> out(density.values().size());
    std::vector<std::size_t> idx(d);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::size_t rest = flat;
        for (std::size_t a = d; a-- > 0;) {
            idx[a] = rest % m;
            rest /= m;
        }
        std::size_t src = 0;
        // new index idx[a] is the coordinate along old axis order[a]
        std::vector<std::size_t> old(d);
        for (std::size_t a = 0; a < d; ++a) {
            old[order[a]] = idx[a];
        }
        for (std::size_t a = 0; a < d; ++a) {
            src = src * m + old[a];
        }
        out[flat] = density.values()[src];
    }
    return GridDensity(d, m, std::move(out), density.quad_rule());
}

struct MollifyResult {
    GridDensity density;
    double kappa_lower_bound; ///< guaranteed lower bound on density.kappa()
};

namespace detail {

/// Normalized wrapped-Gaussian weights on the periodic grid of `period` nodes,
/// truncated at 8 sigma.
inline std::vector<double> wrapped_gaussian_kernel(std::size_t period, double h, double sigma)
{
    std::vector<double> w(period, 0.0);
    const double reach = 8.0 * sigma;
    const auto max_shift = static_cast<long long>(std::floor(reach / h));
    const auto p = static_cast<long long>(period);
    for (long long k = -max_shift; k <= max_shift; ++k) {
        const double x = static_cast<double>(k) * h;
        const long long slot = ((k % p) + p) % p;
        w[static_cast<std::size_t>(slot)] += std::exp(-0.5 * x * x / (sigma * sigma));
    }
    double total = 0.0;
    for (double v : w) {
        total += v;
    }
    for (double& v : w) {
        v /= total;
    }
    return w;
}

} // namespace detail

/// Circular convolution with a wrapped Gaussian of standard deviation sigma on
/// each axis, followed by normalization. Node 0 and node m-1 coincide on the
/// torus, so their values are first averaged on every axis; this keeps the
/// trapezoid mass unchanged.
inline MollifyResult mollify_with_bound(const GridDensity& density, double sigma)
{
    if (!(sigma > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "mollify: sigma must be positive");
    }
    const std::size_t d = density.dim();
    const std::size_t m = density.resolution();
    const std::size_t period = m - 1;
    const auto kernel = detail::wrapped_gaussian_kernel(period, density.spacing(), sigma);
    const double kernel_min = *std::min_element(kernel.begin(), kernel.end());

    std::vector<double> v(density.values().begin(), density.values().end());
    const std::size_t lines = v.size() / m;
    auto line_base = [&](std::size_t a, std::size_t l) {
        const std::size_t stride = detail::ipow(m, d - 1 - a);
        return std::pair{(l / stride) * stride * m + l % stride, stride};
    };
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t l = 0; l < lines; ++l) {
            const auto [base, stride] = line_base(a, l);
            const double avg = 0.5 * (v[base] + v[base + period * stride]);
            v[base] = avg;
            v[base + period * stride] = avg;
        }
    }
    double torus_sum = 0.0;
    double torus_min = v.front();
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        std::size_t rest = flat;
        bool on_torus = true;
        for (std::size_t a = 0; a < d; ++a) {
            on_torus = on_torus && rest % m != period;
            rest /= m;
        }
        if (on_torus) {
            torus_sum += v[flat];
            torus_min = std::min(torus_min, v[flat]);
        }
    }
    std::vector<double> line(period), conv(period);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t l = 0; l < lines; ++l) {
            const auto [base, stride] = line_base(a, l);
            for (std::size_t i = 0; i < period; ++i) {
                line[i] = v[base + i * stride];
            }
            for (std::size_t i = 0; i < period; ++i) {
                double s = 0.0;
                for (std::size_t k = 0; k < period; ++k) {
                    s += kernel[k] * line[(i + period - k) % period];
                }
                conv[i] = s;
            }
            for (std::size_t i = 0; i < period; ++i) {
                v[base + i * stride] = conv[i];
            }
            v[base + period * stride] = conv[0];
        }
    }
    // Every output node is a convex combination of torus samples with tensor
    // weights of at least kernel_min^d each.
    const double lower = std::max(torus_min, std::pow(kernel_min, static_cast<double>(d)) * torus_sum);
    GridDensity raw(d, m, std::move(v), density.quad_rule());
    const double total = raw.integral();
    return MollifyResult{normalize(raw), lower / total};
}

inline GridDensity mollify(const GridDensity& density, double sigma)
{
    return mollify_with_bound(density, sigma).density;
}

} // namespace rgan

#endif // RGAN_DENSITY_HPP
