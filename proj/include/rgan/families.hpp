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

#ifndef RGAN_FAMILIES_HPP
#define RGAN_FAMILIES_HPP

// Built-in analytic test densities on [0,1]^d.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <string>

#include "rgan/density.hpp"
#include "rgan/error.hpp"

namespace rgan {

using DensityParams = std::map<std::string, double>;

namespace detail {

inline double param_or(const DensityParams& p, const std::string& key, double fallback)
{
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

inline void check_param_keys(const DensityParams& p, std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : p) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            fail(ErrorKind::ConfigInvalid, "unknown density parameter '" + key + "'");
        }
    }
}

} // namespace detail

using DensityFn = std::function<double(std::span<const double>)>;

/// Uniform density.
inline DensityFn uniform_density()
{
    return [](std::span<const double>) { return 1.0; };
}

/// (1 + slope * y_1) / (1 + slope / 2); slope in (-1, inf).
inline DensityFn tilted_density(double slope = 1.0)
{
    if (!(slope > -1.0)) {
        fail(ErrorKind::NonPositiveDensity, "tilted density needs slope > -1");
    }
    return [slope](std::span<const double> y) { return (1.0 + slope * y[0]) / (1.0 + 0.5 * slope); };
}

/// Product density. Factor per axis: 1 + 0.5 sin(2 pi y), (2/3)(1 + y), 1 + 0.3 cos(2 pi y).
inline DensityFn product_density(std::size_t dim)
{
    return [dim](std::span<const double> y) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double v = 1.0 + 0.5 * std::sin(two_pi * y[0]);
        if (dim >= 2) {
            v *= (2.0 / 3.0) * (1.0 + y[1]);
        }
        if (dim >= 3) {
            v *= 1.0 + 0.3 * std::cos(two_pi * y[2]);
        }
        return v;
    };
}

/// Non-separable 2D density 1 + c (2y_1 - 1)(2y_2 - 1) + w sin(2 pi (y_1 + y_2)).
inline DensityFn coupled_density(double coupling = 0.6, double wave = 0.2)
{
    if (std::abs(coupling) + std::abs(wave) >= 1.0) {
        fail(ErrorKind::NonPositiveDensity, "coupled density needs |coupling| + |wave| < 1");
    }
    return [coupling, wave](std::span<const double> y) {
        return 1.0 + coupling * (2.0 * y[0] - 1.0) * (2.0 * y[1] - 1.0) +
               wave * std::sin(2.0 * std::numbers::pi * (y[0] + y[1]));
    };
}

/// Equal mixture of two isotropic Gaussian bumps centred on the diagonal.
inline DensityFn bimodal_density(double left = 0.3, double right = 0.7, double width = 0.08)
{
    return [=](std::span<const double> y) {
        double a = 0.0;
        double b = 0.0;
        for (double t : y) {
            a += (t - left) * (t - left);
            b += (t - right) * (t - right);
        }
        const double s2 = 2.0 * width * width;
        return std::exp(-a / s2) + std::exp(-b / s2);
    };
}

/// Builds a normalized grid density from a named family:
/// "uniform", "tilted" {slope}, "product", "coupled" {coupling, wave},
/// "bimodal-mollified" {left, right, width, sigma}.
inline GridDensity make_named_density(const std::string& name, std::size_t dim, std::size_t resolution,
                                      const DensityParams& params = {}, QuadRule rule = QuadRule::trapezoid)
{
    if (name == "uniform") {
        detail::check_param_keys(params, {});
        return normalize(tabulate_density(dim, resolution, uniform_density(), rule));
    }
    if (name == "tilted") {
        detail::check_param_keys(params, {"slope"});
        return normalize(tabulate_density(dim, resolution, tilted_density(detail::param_or(params, "slope", 1.0)), rule));
    }
    if (name == "product") {
        detail::check_param_keys(params, {});
        if (dim < 2 || dim > 3) {
            fail(ErrorKind::ConfigInvalid, "product density is defined for dim 2 or 3");
        }
        return normalize(tabulate_density(dim, resolution, product_density(dim), rule));
    }
    if (name == "coupled") {
        detail::check_param_keys(params, {"coupling", "wave"});
        if (dim != 2) {
            fail(ErrorKind::ConfigInvalid, "coupled density is defined for dim 2");
        }
        const auto f = coupled_density(detail::param_or(params, "coupling", 0.6), detail::param_or(params, "wave", 0.2));
        return normalize(tabulate_density(dim, resolution, f, rule));
    }
    if (name == "bimodal-mollified") {
        detail::check_param_keys(params, {"left", "right", "width", "sigma"});
        const auto f = bimodal_density(detail::param_or(params, "left", 0.3), detail::param_or(params, "right", 0.7),
                                       detail::param_or(params, "width", 0.08));
        return mollify(tabulate_density(dim, resolution, f, rule), detail::param_or(params, "sigma", 0.05));
    }
    fail(ErrorKind::ConfigInvalid, "unknown density family '" + name + "'");
}

} // namespace rgan

#endif // RGAN_FAMILIES_HPP
