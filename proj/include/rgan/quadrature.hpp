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

#ifndef RGAN_QUADRATURE_HPP
#define RGAN_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rgan/error.hpp"
#include "rgan/parallel.hpp"

namespace rgan {

enum class QuadRule { trapezoid, simpson };

inline std::string_view to_string(QuadRule r) { return r == QuadRule::trapezoid ? "trapezoid" : "simpson"; }

inline QuadRule parse_quad_rule(std::string_view s)
{
    if (s == "trapezoid") {
        return QuadRule::trapezoid;
    }
    if (s == "simpson") {
        return QuadRule::simpson;
    }
    fail(ErrorKind::ConfigInvalid, "unknown quadrature rule '" + std::string(s) + "'");
}

inline double node_coordinate(std::size_t i, std::size_t m)
{
    return static_cast<double>(i) / static_cast<double>(m - 1);
}

/// Composite weights on the m uniform nodes of [0,1]. Simpson needs an even
/// number of intervals; with an odd count the last interval falls back to a
/// trapezoid panel.
inline std::vector<double> axis_weights(std::size_t m, QuadRule rule)
{
    std::vector<double> w(m, 0.0);
    const double h = 1.0 / static_cast<double>(m - 1);
    const std::size_t intervals = m - 1;
    if (rule == QuadRule::trapezoid || intervals < 2) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
            w[i] += 0.5 * h;
            w[i + 1] += 0.5 * h;
        }
        return w;
    }
    const std::size_t even = intervals - intervals % 2;
    for (std::size_t i = 0; i + 2 <= even; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (even < intervals) {
        w[m - 2] += 0.5 * h;
        w[m - 1] += 0.5 * h;
    }
    return w;
}

/// Weights that integrate the piecewise-linear interpolant of node values
/// exactly over [a, b] (0 <= a <= b <= 1).
inline std::vector<double> interval_weights(std::size_t m, double a, double b)
{
    std::vector<double> w(m, 0.0);
    const double h = 1.0 / static_cast<double>(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double x0 = node_coordinate(i, m);
        const double x1 = node_coordinate(i + 1, m);
        const double lo = std::max(a, x0);
        const double hi = std::min(b, x1);
        if (hi <= lo) {
            continue;
        }
        // integral of the hat pieces (x1 - x)/h and (x - x0)/h over [lo, hi]
        const double len = hi - lo;
        const double mid = 0.5 * (lo + hi);
        w[i] += len * (x1 - mid) / h;
        w[i + 1] += len * (mid - x0) / h;
    }
    return w;
}

/// Tensor grid with m points per axis (endpoints included) and a quadrature rule.
struct EvalGrid {
    std::size_t dim = 1;
    std::size_t points = 129;
    QuadRule rule = QuadRule::trapezoid;

    std::size_t size() const
    {
        std::size_t n = 1;
        for (std::size_t a = 0; a < dim; ++a) {
            n *= points;
        }
        return n;
    }

    /// Row-major node coordinates: the first axis varies slowest.
    void node(std::size_t flat, std::span<double> out) const
    {
        for (std::size_t a = dim; a-- > 0;) {
            out[a] = node_coordinate(flat % points, points);
            flat /= points;
        }
    }

    std::vector<double> weights() const
    {
        const auto w1 = axis_weights(points, rule);
        std::vector<double> w(size(), 1.0);
        for (std::size_t flat = 0; flat < w.size(); ++flat) {
            std::size_t rest = flat;
            double prod = 1.0;
            for (std::size_t a = 0; a < dim; ++a) {
                prod *= w1[rest % points];
                rest /= points;
            }
            w[flat] = prod;
        }
        return w;
    }
};

/// Divergence default: 129 points per axis for d <= 2, 33 for d >= 3.
inline EvalGrid default_eval_grid(std::size_t dim)
{
    return EvalGrid{dim, dim <= 2 ? std::size_t{129} : std::size_t{33}, QuadRule::trapezoid};
}

/// Evaluates f at every node of the grid (in parallel, order-stable).
template <class F>
std::vector<double> tabulate(const EvalGrid& grid, const F& f)
{
    std::vector<double> out(grid.size());
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(grid.dim);
        for (std::size_t i = begin; i < end; ++i) {
            grid.node(i, x);
            out[i] = f(std::span<const double>(x));
        }
    });
    return out;
}

/// Sum of w[i] * g(i) with a deterministic pairwise reduction.
template <class G>
double weighted_sum(std::span<const double> w, const G& g)
{
    std::vector<double> terms(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        terms[i] = w[i] * g(i);
    }
    return pairwise_sum(terms);
}

} // namespace rgan

#endif // RGAN_QUADRATURE_HPP
