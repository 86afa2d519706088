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

#ifndef RGAN_ROSENBLATT_HPP
#define RGAN_ROSENBLATT_HPP

// Rosenblatt (Knothe) transform of a grid density, sampling by pushforward of
// uniform noise, and pushforward densities of arbitrary triangular maps.
//
// Component j is the conditional CDF of coordinate j given y_0..y_{j-1}.
// Unnormalized marginals g_j on the first j+1 axes are tabulated together with
// their running trapezoid integrals along axis j. For a context point the
// tables are blended with multilinear weights; the blended CDF integrates the
// blended (piecewise-linear in t) marginal exactly. Since g_{j-1} equals the
// total of g_j along axis j node by node, the diagonal partials telescope and
// the Jacobian equals the multilinear interpolant of the density.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rgan/density.hpp"
#include "rgan/error.hpp"
#include "rgan/parallel.hpp"
#include "rgan/random.hpp"
#include "rgan/triangular_map.hpp"

namespace rgan {

namespace detail {

/// Multilinear corner weights for a point of `k` coordinates on m nodes per axis.
struct CornerStencil {
    std::size_t count = 0;
    std::array<std::size_t, 128> index{};
    std::array<double, 128> weight{};

    CornerStencil(std::span<const double> x, std::size_t m)
    {
        const std::size_t k = x.size();
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
            if (w != 0.0) {
                index[count] = flat;
                weight[count] = w;
                ++count;
            }
        }
    }
};

} // namespace detail

class RosenblattComponents final : public MapComponents {
public:
    explicit RosenblattComponents(GridDensity density) : density_(std::move(density))
    {
        const std::size_t d = density_.dim();
        if (d > 7) {
            fail(ErrorKind::ConfigInvalid, "Rosenblatt tables support dim <= 7");
        }
        m_ = density_.resolution();
        h_ = density_.spacing();
        marg_.resize(d);
        cum_.resize(d);
        total_.resize(d);
        marg_[d - 1].assign(density_.values().begin(), density_.values().end());
        for (std::size_t j = d; j-- > 0;) {
            const auto& g = marg_[j];
            const std::size_t rows = g.size() / m_;
            auto& c = cum_[j];
            c.assign(g.size(), 0.0);
            total_[j].assign(rows, 0.0);
            for (std::size_t r = 0; r < rows; ++r) {
                const double* gr = g.data() + r * m_;
                double* cr = c.data() + r * m_;
                for (std::size_t i = 1; i < m_; ++i) {
                    cr[i] = cr[i - 1] + 0.5 * h_ * (gr[i - 1] + gr[i]);
                }
                total_[j][r] = cr[m_ - 1];
                if (!(total_[j][r] > 0.0)) {
                    fail(ErrorKind::ZeroMarginal, "marginal vanishes on a grid line");
                }
            }
            if (j > 0) {
                marg_[j - 1] = total_[j];
            }
        }
    }

    std::size_t dim() const override { return density_.dim(); }
    std::string kind() const override { return "rosenblatt"; }
    const GridDensity& density() const { return density_; }

    double component(std::size_t j, std::span<const double> y) const override
    {
        const double t = y[j];
        if (t <= 0.0) {
            return 0.0;
        }
        if (t >= 1.0) {
            return 1.0;
        }
        const detail::CornerStencil ctx(y.first(j), m_);
        const auto [i, frac] = detail::locate(t, m_);
        const double s = frac * h_;
        double a = 0.0;
        double tot = 0.0;
        for (std::size_t c = 0; c < ctx.count; ++c) {
            const std::size_t row = ctx.index[c] * m_;
            const double g0 = marg_[j][row + i];
            const double g1 = marg_[j][row + i + 1];
            a += ctx.weight[c] * (cum_[j][row + i] + g0 * s + (g1 - g0) * s * s / (2.0 * h_));
            tot += ctx.weight[c] * total_[j][ctx.index[c]];
        }
        return std::clamp(a / tot, 0.0, 1.0);
    }

    double diagonal_partial(std::size_t j, std::span<const double> y) const override
    {
        const detail::CornerStencil ctx(y.first(j), m_);
        const auto [i, frac] = detail::locate(y[j], m_);
        double g = 0.0;
        double tot = 0.0;
        for (std::size_t c = 0; c < ctx.count; ++c) {
            const std::size_t row = ctx.index[c] * m_;
            g += ctx.weight[c] * ((1.0 - frac) * marg_[j][row + i] + frac * marg_[j][row + i + 1]);
            tot += ctx.weight[c] * total_[j][ctx.index[c]];
        }
        return g / tot;
    }

    /// Locates the cell by bisection on the blended node cumulatives, solves
    /// the quadratic on that cell in closed form and polishes with Newton.
    double solve_component(std::size_t j, std::span<double> y, double x) const override
    {
        if (x <= 0.0) {
            return 0.0;
        }
        if (x >= 1.0) {
            return 1.0;
        }
        const detail::CornerStencil ctx(y.first(j), m_);
        double tot = 0.0;
        for (std::size_t c = 0; c < ctx.count; ++c) {
            tot += ctx.weight[c] * total_[j][ctx.index[c]];
        }
        const double target = x * tot;
        auto blended = [&](const std::vector<double>& table, std::size_t i) {
            double v = 0.0;
            for (std::size_t c = 0; c < ctx.count; ++c) {
                v += ctx.weight[c] * table[ctx.index[c] * m_ + i];
            }
            return v;
        };
        std::size_t lo = 0;
        std::size_t hi = m_ - 1;
        if (!(blended(cum_[j], hi) >= target)) {
            fail(ErrorKind::RootNotBracketed, "conditional CDF does not reach the requested level");
        }
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (blended(cum_[j], mid) <= target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double g0 = blended(marg_[j], lo);
        const double g1 = blended(marg_[j], lo + 1);
        const double r = target - blended(cum_[j], lo);
        const double qa = (g1 - g0) / (2.0 * h_);
        const double disc = std::max(0.0, g0 * g0 + 4.0 * qa * r);
        double s = 2.0 * r / (g0 + std::sqrt(disc));
        s = std::clamp(s, 0.0, h_);
        const double cell_lo = node_coordinate(lo, m_);
        double t = std::clamp(cell_lo + s, 0.0, 1.0);
        y[j] = t;
        const double slope = diagonal_partial(j, y);
        if (slope > 0.0) {
            const double step = t - (component(j, y) - x) / slope;
            if (step >= cell_lo && step <= node_coordinate(lo + 1, m_)) {
                t = step;
            }
        }
        return t;
    }

private:
    GridDensity density_;
    std::size_t m_ = 0;
    double h_ = 0.0;
    std::vector<std::vector<double>> marg_;
    std::vector<std::vector<double>> cum_;
    std::vector<std::vector<double>> total_;
};

/// Rosenblatt transform psi of a positive density. `order` optionally
/// permutes the coordinates (new axis a is old axis order[a]).
inline TriangularMap build_rosenblatt(const GridDensity& density, std::vector<std::size_t> order = {})
{
    if (!order.empty()) {
        auto components = std::make_shared<RosenblattComponents>(permute_axes(density, order));
        return TriangularMap(std::move(components), Direction::forward, std::move(order));
    }
    return TriangularMap(std::make_shared<RosenblattComponents>(density), Direction::forward);
}

/// Inverse Rosenblatt transform phi: pushes uniform noise to the density.
inline TriangularMap build_generator(const GridDensity& density, std::vector<std::size_t> order = {})
{
    return build_rosenblatt(density, std::move(order)).inverse();
}

inline std::vector<double> invert(const TriangularMap& map, std::span<const double> x) { return map.invert(x); }

inline double jacobian(const TriangularMap& map, std::span<const double> y) { return map.jacobian(y); }

/// n points phi(Z_i), Z_i uniform from the counter-based stream keyed by
/// (seed, stream, i); row-major n x d.
inline std::vector<double> sample(const TriangularMap& generator, std::size_t n, std::uint64_t seed,
                                  Stream stream = Stream::GeneratorNoise)
{
    const std::size_t d = generator.dim();
    std::vector<double> out(n * d);
    const CounterRng rng(seed, stream);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        double z[8];
        for (std::size_t i = begin; i < end; ++i) {
            rng.uniform_point(i, std::span<double>(z, d));
            generator.apply(std::span<const double>(z, d), std::span<double>(out.data() + i * d, d));
        }
    });
    return out;
}

/// Density of the pushforward of the uniform measure under a generator:
/// f(x) = |J_{phi^-1}(x)| = 1 / J_phi(phi^-1(x)).
class PushforwardDensity {
public:
    explicit PushforwardDensity(TriangularMap generator) : generator_(std::move(generator)) {}

    const TriangularMap& base_map() const { return generator_; }
    std::size_t dim() const { return generator_.dim(); }

    double operator()(std::span<const double> x) const
    {
        const std::size_t d = generator_.dim();
        const MapComponents& comp = generator_.components();
        double pre[8];
        if (generator_.direction() == Direction::inverse) {
            // generator = T^-1, so phi^-1 = T and f = J_T(x)
            const auto order = generator_.order();
            for (std::size_t a = 0; a < d; ++a) {
                pre[a] = x[order[a]];
            }
            return diagonal_product(comp, std::span<const double>(pre, d), false);
        }
        double y[8];
        generator_.solve_components(x.first(d), std::span<double>(y, d));
        const auto order = generator_.order();
        for (std::size_t a = 0; a < d; ++a) {
            pre[a] = y[order[a]];
        }
        return diagonal_product(comp, std::span<const double>(pre, d), true);
    }

private:
    static double diagonal_product(const MapComponents& comp, std::span<const double> z, bool reciprocal)
    {
        double prod = 1.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
            const double p = comp.diagonal_partial(j, z);
            if (!(p >= 1e-12)) {
                fail(ErrorKind::DegenerateJacobian, "diagonal partial below 1e-12");
            }
            prod *= p;
        }
        return reciprocal ? 1.0 / prod : prod;
    }

    TriangularMap generator_;
};

inline PushforwardDensity pushforward_density(const TriangularMap& generator) { return PushforwardDensity(generator); }

} // namespace rgan

#endif // RGAN_ROSENBLATT_HPP
