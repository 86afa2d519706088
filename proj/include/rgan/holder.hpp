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

#ifndef RGAN_HOLDER_HPP
#define RGAN_HOLDER_HPP

// Finite-difference estimates of C^{k,alpha} norms for maps sampled on a grid.
// Derivative tensors are measured entrywise (max absolute entry). Every value
// is a maximum over finitely many nodes or node pairs and therefore a lower
// bound on the continuum supremum, up to O(h^2) stencil error.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rgan/density.hpp"
#include "rgan/error.hpp"
#include "rgan/quadrature.hpp"

namespace rgan {

/// A map [0,1]^dim -> R^codim sampled on a uniform tensor grid (row-major,
/// first axis slowest, `codim` consecutive values per node).
struct GridFunction {
    std::size_t dim = 1;
    std::size_t resolution = 2;
    std::size_t codim = 1;
    std::vector<double> values;
};

/// Samples f(x, out) at every node; out has codim entries.
template <class F>
GridFunction tabulate_map(std::size_t dim, std::size_t resolution, std::size_t codim, const F& f)
{
    const EvalGrid grid{dim, resolution, QuadRule::trapezoid};
    GridFunction g{dim, resolution, codim, std::vector<double>(grid.size() * codim)};
    parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(dim);
        for (std::size_t i = begin; i < end; ++i) {
            grid.node(i, x);
            f(std::span<const double>(x), std::span<double>(g.values.data() + i * codim, codim));
        }
    });
    return g;
}

struct HolderEstimate {
    int k = 0;
    double alpha = 1.0;
    double ck_norm = 0.0;         ///< max over |n| <= k of sup |D^n f|
    double holder_seminorm = 0.0; ///< max over |n| = k of the alpha-quotient
    double total = 0.0;
};

namespace detail {

/// Second-order first derivative along `axis` (central inside, one-sided at the ends).
inline std::vector<double> differentiate(const GridFunction& g, std::span<const double> v, std::size_t axis)
{
    const std::size_t m = g.resolution;
    const double h = 1.0 / static_cast<double>(m - 1);
    const std::size_t stride = ipow(m, g.dim - 1 - axis) * g.codim;
    std::vector<double> out(v.size());
    const std::size_t nodes = v.size() / g.codim;
    for (std::size_t node = 0; node < nodes; ++node) {
        const std::size_t i = (node / ipow(m, g.dim - 1 - axis)) % m;
        for (std::size_t c = 0; c < g.codim; ++c) {
            const std::size_t at = node * g.codim + c;
            double dv = 0.0;
            if (i == 0) {
                dv = (-3.0 * v[at] + 4.0 * v[at + stride] - v[at + 2 * stride]) / (2.0 * h);
            } else if (i == m - 1) {
                dv = (3.0 * v[at] - 4.0 * v[at - stride] + v[at - 2 * stride]) / (2.0 * h);
            } else {
                dv = (v[at + stride] - v[at - stride]) / (2.0 * h);
            }
            out[at] = dv;
        }
    }
    return out;
}

/// n-th derivative along `axis` from one n-th difference on n+1 consecutive
/// nodes (window centred where possible, shifted inward at the ends); n = 1
/// uses `differentiate`. A single stencil avoids the boundary error that
/// nesting first differences accumulates.
inline std::vector<double> difference(const GridFunction& g, std::span<const double> v, std::size_t axis,
                                      std::size_t n)
{
    if (n == 1) {
        return differentiate(g, v, axis);
    }
    const std::size_t m = g.resolution;
    const double h = 1.0 / static_cast<double>(m - 1);
    const std::size_t stride = ipow(m, g.dim - 1 - axis) * g.codim;
    std::vector<double> coef(n + 1);
    double binom = 1.0;
    for (std::size_t j = 0; j <= n; ++j) {
        coef[j] = ((n - j) % 2 == 0 ? 1.0 : -1.0) * binom;
        binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
    const double scale = std::pow(h, -static_cast<double>(n));
    std::vector<double> out(v.size());
    const std::size_t nodes = v.size() / g.codim;
    for (std::size_t node = 0; node < nodes; ++node) {
        const std::size_t i = (node / ipow(m, g.dim - 1 - axis)) % m;
        const std::size_t start = std::min(i > n / 2 ? i - n / 2 : std::size_t{0}, m - 1 - n);
        for (std::size_t c = 0; c < g.codim; ++c) {
            const std::size_t base = node * g.codim + c - (i - start) * stride;
            double dv = 0.0;
            for (std::size_t j = 0; j <= n; ++j) {
                dv += coef[j] * v[base + j * stride];
            }
            out[node * g.codim + c] = dv * scale;
        }
    }
    return out;
}

inline double max_abs(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) {
        s = std::max(s, std::abs(x));
    }
    return s;
}

/// Node pairs searched by the Holder quotient: all pairs for small grids,
/// otherwise a strided subgrid (all pairs) plus every axis-neighbour pair.
inline std::vector<std::size_t> quotient_nodes(std::size_t dim, std::size_t m, std::size_t limit)
{
    std::size_t stride = 1;
    while (ipow((m - 1) / stride + 1, dim) > limit) {
        ++stride;
    }
    std::vector<std::size_t> nodes;
    const std::size_t total = ipow(m, dim);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        bool keep = true;
        for (std::size_t a = 0; a < dim; ++a) {
            const std::size_t i = rest % m;
            keep = keep && (i % stride == 0 || i == m - 1);
            rest /= m;
        }
        if (keep) {
            nodes.push_back(flat);
        }
    }
    return nodes;
}

} // namespace detail

/// Estimates the C^{k,alpha} norm of a sampled map; see the file comment.
inline HolderEstimate estimate_holder_norm(const GridFunction& g, int k, double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0) || k < 0) {
        fail(ErrorKind::ConfigInvalid, "holder estimate needs k >= 0 and alpha in (0,1]");
    }
    const std::size_t m = g.resolution;
    if (m < static_cast<std::size_t>(k) + 2 || m < 3) {
        fail(ErrorKind::InsufficientResolution, "grid too coarse for the requested derivative order");
    }
    if (g.values.size() != detail::ipow(m, g.dim) * g.codim) {
        fail(ErrorKind::ConfigInvalid, "sampled map size does not match its grid");
    }

    // Multi-indices of order r are enumerated as nondecreasing axis
    // sequences; each partial applies one difference stencil per axis.
    struct Partial {
        std::vector<double> values;
    };
    std::vector<Partial> level;
    double ck = detail::max_abs(g.values);
    std::vector<std::vector<std::size_t>> sequences{{}};
    for (int order = 1; order <= k; ++order) {
        std::vector<std::vector<std::size_t>> longer;
        for (const auto& seq : sequences) {
            for (std::size_t a = seq.empty() ? 0 : seq.back(); a < g.dim; ++a) {
                auto next = seq;
                next.push_back(a);
                longer.push_back(std::move(next));
            }
        }
        sequences = std::move(longer);
        level.clear();
        for (const auto& seq : sequences) {
            std::vector<double> v = g.values;
            for (std::size_t a = 0; a < g.dim; ++a) {
                const auto n = static_cast<std::size_t>(std::count(seq.begin(), seq.end(), a));
                if (n > 0) {
                    v = detail::difference(g, v, a, n);
                }
            }
            ck = std::max(ck, detail::max_abs(v));
            level.push_back({std::move(v)});
        }
    }
    if (k == 0) {
        level.push_back({g.values});
    }

    const EvalGrid grid{g.dim, m, QuadRule::trapezoid};
    const auto nodes = detail::quotient_nodes(g.dim, m, 10000);
    std::vector<std::vector<double>> coords(nodes.size(), std::vector<double>(g.dim));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        grid.node(nodes[i], coords[i]);
    }
    auto quotient = [&](std::span<const double> v, std::size_t a, std::size_t b, double dist) {
        double diff = 0.0;
        for (std::size_t c = 0; c < g.codim; ++c) {
            diff = std::max(diff, std::abs(v[a * g.codim + c] - v[b * g.codim + c]));
        }
        return diff / std::pow(dist, alpha);
    };
    double seminorm = 0.0;
    for (const auto& p : level) {
        std::vector<double> best(nodes.size(), 0.0);
        parallel_for(nodes.size(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                double local = 0.0;
                for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                    double d2 = 0.0;
                    for (std::size_t a = 0; a < g.dim; ++a) {
                        const double t = coords[i][a] - coords[j][a];
                        d2 += t * t;
                    }
                    local = std::max(local, quotient(p.values, nodes[i], nodes[j], std::sqrt(d2)));
                }
                best[i] = local;
            }
        });
        for (double b : best) {
            seminorm = std::max(seminorm, b);
        }
        if (nodes.size() < grid.size()) {
            const double h = 1.0 / static_cast<double>(m - 1);
            for (std::size_t flat = 0; flat < grid.size(); ++flat) {
                for (std::size_t a = 0; a < g.dim; ++a) {
                    const std::size_t stride = detail::ipow(m, g.dim - 1 - a);
                    if ((flat / stride) % m + 1 < m) {
                        seminorm = std::max(seminorm, quotient(p.values, flat, flat + stride, h));
                    }
                }
            }
        }
    }
    return HolderEstimate{k, alpha, ck, seminorm, ck + seminorm};
}

/// Lipschitz bound d! * c1_norm^(d-1) / jac_inf for the inverse of a C^1 map
/// whose Jacobian determinant is at least jac_inf.
inline double inverse_lipschitz_bound(double c1_norm, double jac_inf, std::size_t d)
{
    if (!(jac_inf > 0.0)) {
        fail(ErrorKind::DegenerateJacobian, "inverse Lipschitz bound needs a positive Jacobian infimum");
    }
    if (!(c1_norm > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "inverse Lipschitz bound needs a positive C^1 norm");
    }
    double factorial = 1.0;
    for (std::size_t i = 2; i <= d; ++i) {
        factorial *= static_cast<double>(i);
    }
    return factorial * std::pow(c1_norm, static_cast<double>(d) - 1.0) / jac_inf;
}

} // namespace rgan

#endif // RGAN_HOLDER_HPP
