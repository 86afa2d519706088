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

#ifndef RGAN_TRIANGULAR_MAP_HPP
#define RGAN_TRIANGULAR_MAP_HPP

// Lower-triangular monotone maps of the unit cube. A map is a shared,
// immutable set of components T_j(y_0..y_j), each strictly increasing in y_j
// with T_j(.., 0) = 0 and T_j(.., 1) = 1, plus a direction (evaluate T, or
// evaluate T^-1 by sequential root solves) and a coordinate order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rgan/error.hpp"

namespace rgan {

class MapComponents {
public:
    virtual ~MapComponents() = default;

    virtual std::size_t dim() const = 0;

    /// T_j at y; only y[0..j] are read.
    virtual double component(std::size_t j, std::span<const double> y) const = 0;

    /// dT_j / dy_j at y.
    virtual double diagonal_partial(std::size_t j, std::span<const double> y) const = 0;

    /// Solves T_j(y[0..j-1], t) = x for t. The default brackets the root by
    /// bisection to width 1e-12 (smallest t with T_j >= x when T_j is flat),
    /// then applies one Newton step when it stays inside the bracket.
    /// Throws RootNotBracketed if T_j does not span [0,1].
    virtual double solve_component(std::size_t j, std::span<double> y, double x) const
    {
        if (x <= 0.0) {
            return 0.0;
        }
        if (x >= 1.0) {
            return 1.0;
        }
        double lo = 0.0;
        double hi = 1.0;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            y[j] = mid;
            if (component(j, y) < x) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (hi == 1.0 || lo == 0.0) {
            y[j] = hi == 1.0 ? 1.0 : 0.0;
            const double end = component(j, y);
            if ((hi == 1.0 && end < x - 1e-9) || (lo == 0.0 && end > x + 1e-9)) {
                fail(ErrorKind::RootNotBracketed, "component is not onto [0,1] along its own coordinate");
            }
        }
        double t = 0.5 * (lo + hi);
        y[j] = t;
        const double slope = diagonal_partial(j, y);
        if (slope > 0.0) {
            const double step = t - (component(j, y) - x) / slope;
            if (step >= lo && step <= hi) {
                t = step;
            }
        }
        return t;
    }

    /// Short human-readable kind tag used in serialized descriptors.
    virtual std::string kind() const = 0;
};

enum class Direction {
    forward, ///< apply evaluates the components directly
    inverse, ///< apply evaluates the inverse of the components
};

class TriangularMap {
public:
    TriangularMap(std::shared_ptr<const MapComponents> components, Direction direction = Direction::forward,
                  std::vector<std::size_t> order = {})
        : components_(std::move(components)), direction_(direction), order_(std::move(order))
    {
        if (!components_) {
            fail(ErrorKind::ConfigInvalid, "triangular map needs components");
        }
        const std::size_t d = components_->dim();
        if (order_.empty()) {
            order_.resize(d);
            std::iota(order_.begin(), order_.end(), std::size_t{0});
        }
        std::vector<bool> seen(d, false);
        if (order_.size() != d) {
            fail(ErrorKind::ConfigInvalid, "coordinate order must list every axis once");
        }
        for (std::size_t a : order_) {
            if (a >= d || seen[a]) {
                fail(ErrorKind::ConfigInvalid, "coordinate order must be a permutation");
            }
            seen[a] = true;
        }
    }

    std::size_t dim() const { return components_->dim(); }
    Direction direction() const { return direction_; }
    std::span<const std::size_t> order() const { return order_; }
    const MapComponents& components() const { return *components_; }
    std::shared_ptr<const MapComponents> shared_components() const { return components_; }

    TriangularMap inverse() const
    {
        return TriangularMap(components_, direction_ == Direction::forward ? Direction::inverse : Direction::forward,
                             order_);
    }

    void apply(std::span<const double> in, std::span<double> out) const
    {
        direction_ == Direction::forward ? run_components(in, out) : solve_components(in, out);
    }

    void invert(std::span<const double> in, std::span<double> out) const
    {
        direction_ == Direction::forward ? solve_components(in, out) : run_components(in, out);
    }

    std::vector<double> apply(std::span<const double> in) const
    {
        std::vector<double> out(dim());
        apply(in, out);
        return out;
    }

    std::vector<double> invert(std::span<const double> in) const
    {
        std::vector<double> out(dim());
        invert(in, out);
        return out;
    }

    /// Determinant of the Jacobian of `apply` at y.
    double jacobian(std::span<const double> y) const
    {
        if (direction_ == Direction::forward) {
            return component_jacobian(y);
        }
        double pre[8];
        solve_components(y, std::span<double>(pre, dim()));
        return 1.0 / component_jacobian(std::span<const double>(pre, dim()));
    }

    /// Smallest diagonal partial of the components at y (for degeneracy checks).
    double min_diagonal_partial(std::span<const double> y) const
    {
        double z[8];
        to_internal(y, std::span<double>(z, dim()));
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < dim(); ++j) {
            mn = std::min(mn, components_->diagonal_partial(j, std::span<const double>(z, dim())));
        }
        return mn;
    }

    /// Product of the diagonal partials of the components at y.
    double component_jacobian(std::span<const double> y) const
    {
        double z[8];
        to_internal(y, std::span<double>(z, dim()));
        double prod = 1.0;
        for (std::size_t j = 0; j < dim(); ++j) {
            prod *= components_->diagonal_partial(j, std::span<const double>(z, dim()));
        }
        return prod;
    }

    /// Evaluates the components T at y (regardless of direction).
    void run_components(std::span<const double> in, std::span<double> out) const
    {
        const std::size_t d = dim();
        double z[8];
        double w[8];
        to_internal(in, std::span<double>(z, d));
        for (std::size_t j = 0; j < d; ++j) {
            w[j] = components_->component(j, std::span<const double>(z, d));
        }
        from_internal(std::span<const double>(w, d), out);
    }

    /// Solves T(y) = x for y, coordinate by coordinate.
    void solve_components(std::span<const double> in, std::span<double> out) const
    {
        const std::size_t d = dim();
        double x[8];
        double y[8] = {};
        to_internal(in, std::span<double>(x, d));
        for (std::size_t j = 0; j < d; ++j) {
            y[j] = components_->solve_component(j, std::span<double>(y, d), x[j]);
        }
        from_internal(std::span<const double>(y, d), out);
    }

private:
    void to_internal(std::span<const double> in, std::span<double> z) const
    {
        for (std::size_t a = 0; a < order_.size(); ++a) {
            z[a] = in[order_[a]];
        }
    }

    void from_internal(std::span<const double> z, std::span<double> out) const
    {
        for (std::size_t a = 0; a < order_.size(); ++a) {
            out[order_[a]] = z[a];
        }
    }

    std::shared_ptr<const MapComponents> components_;
    Direction direction_;
    std::vector<std::size_t> order_;
};

/// The identity map of [0,1]^d.
class IdentityComponents final : public MapComponents {
public:
    explicit IdentityComponents(std::size_t d) : d_(d) {}
    std::size_t dim() const override { return d_; }
    double component(std::size_t j, std::span<const double> y) const override { return y[j]; }
    double diagonal_partial(std::size_t, std::span<const double>) const override { return 1.0; }
    double solve_component(std::size_t, std::span<double>, double x) const override { return std::clamp(x, 0.0, 1.0); }
    std::string kind() const override { return "identity"; }

private:
    std::size_t d_;
};

inline TriangularMap identity_map(std::size_t d)
{
    if (d == 0 || d > 8) {
        fail(ErrorKind::ConfigInvalid, "map dimension must be in 1..8");
    }
    return TriangularMap(std::make_shared<IdentityComponents>(d));
}

} // namespace rgan

#endif // RGAN_TRIANGULAR_MAP_HPP
