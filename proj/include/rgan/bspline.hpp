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

#ifndef RGAN_BSPLINE_HPP
#define RGAN_BSPLINE_HPP

// Clamped B-spline bases on [0,1] and the zero-mean "bump profiles" used by
// the generator families. A Bernstein basis of degree p is the clamped
// B-spline basis without interior knots.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "rgan/error.hpp"

namespace rgan {

class SplineBasis {
public:
    SplineBasis(int degree, std::vector<double> knots) : p_(degree), knots_(std::move(knots))
    {
        if (p_ < 0 || knots_.size() < static_cast<std::size_t>(2 * p_ + 2)) {
            fail(ErrorKind::ConfigInvalid, "spline basis needs at least 2(p+1) knots");
        }
    }

    /// Clamped uniform knots with `interior` interior knots.
    static SplineBasis clamped_uniform(int degree, std::size_t interior)
    {
        std::vector<double> k(static_cast<std::size_t>(degree) + 1, 0.0);
        for (std::size_t i = 1; i <= interior; ++i) {
            k.push_back(static_cast<double>(i) / static_cast<double>(interior + 1));
        }
        k.insert(k.end(), static_cast<std::size_t>(degree) + 1, 1.0);
        return SplineBasis(degree, std::move(k));
    }

    int degree() const { return p_; }
    std::size_t size() const { return knots_.size() - static_cast<std::size_t>(p_) - 1; }
    std::span<const double> knots() const { return knots_; }

    /// Evaluates the p+1 basis functions that may be nonzero at t into
    /// vals[0..p]; returns the index of the first one.
    std::size_t eval_nonzero(double t, std::span<double> vals) const
    {
        const auto p = static_cast<std::size_t>(p_);
        const std::size_t n = size();
        t = std::clamp(t, 0.0, 1.0);
        std::size_t span = p;
        if (t >= knots_[n]) {
            span = n - 1;
        } else {
            span = static_cast<std::size_t>(std::upper_bound(knots_.begin() + static_cast<long>(p),
                                                             knots_.begin() + static_cast<long>(n) + 1, t) -
                                            knots_.begin()) -
                   1;
        }
        double left[16];
        double right[16];
        vals[0] = 1.0;
        for (std::size_t j = 1; j <= p; ++j) {
            left[j] = t - knots_[span + 1 - j];
            right[j] = knots_[span + j] - t;
            double saved = 0.0;
            for (std::size_t r = 0; r < j; ++r) {
                const double tmp = vals[r] / (right[r + 1] + left[j - r]);
                vals[r] = saved + right[r + 1] * tmp;
                saved = left[j - r] * tmp;
            }
            vals[j] = saved;
        }
        return span - p;
    }

    /// Value of sum_i coefs[i] N_i(t).
    double evaluate(std::span<const double> coefs, double t) const
    {
        double vals[16];
        const std::size_t first = eval_nonzero(t, std::span<double>(vals, 16));
        double s = 0.0;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(p_); ++i) {
            s += coefs[first + i] * vals[i];
        }
        return s;
    }

    /// Integral of N_i over [0,1].
    double basis_integral(std::size_t i) const
    {
        return (knots_[i + static_cast<std::size_t>(p_) + 1] - knots_[i]) / static_cast<double>(p_ + 1);
    }

    /// Basis of degree p+1 whose partial sums represent antiderivatives.
    SplineBasis raised() const
    {
        std::vector<double> k;
        k.reserve(knots_.size() + 2);
        k.push_back(knots_.front());
        k.insert(k.end(), knots_.begin(), knots_.end());
        k.push_back(knots_.back());
        return SplineBasis(p_ + 1, std::move(k));
    }

    /// Basis of degree p-1 that carries derivatives (interior knot vector).
    SplineBasis lowered() const
    {
        return SplineBasis(p_ - 1, std::vector<double>(knots_.begin() + 1, knots_.end() - 1));
    }

    /// Coefficients of the derivative in the lowered basis.
    std::vector<double> derivative_coefficients(std::span<const double> coefs) const
    {
        std::vector<double> out;
        if (p_ == 0) {
            return out;
        }
        const auto p = static_cast<std::size_t>(p_);
        for (std::size_t i = 0; i + 1 < coefs.size(); ++i) {
            const double width = knots_[i + p + 1] - knots_[i + 1];
            out.push_back(width > 0.0 ? static_cast<double>(p_) * (coefs[i + 1] - coefs[i]) / width : 0.0);
        }
        return out;
    }

private:
    int p_;
    std::vector<double> knots_;
};

/// Zero-mean densities rho_r = sum_m e_r(m) N_m / (G int N_m) for r = 1..G-1,
/// with e_r(m) = cos(pi r (m + 1/2) / G), and their antiderivatives beta_r
/// (beta_r(0) = beta_r(1) = 0). Because the basis is a partition of unity,
/// the largest coefficient magnitude bounds each function and every derivative.
class ProfileSet {
public:
    explicit ProfileSet(SplineBasis basis) : rho_basis_(std::move(basis)), beta_basis_(rho_basis_.raised())
    {
        const std::size_t g = rho_basis_.size();
        if (g < 2) {
            fail(ErrorKind::ConfigInvalid, "profile set needs at least two basis functions");
        }
        for (std::size_t r = 1; r < g; ++r) {
            std::vector<double> rho(g), beta(g + 1, 0.0);
            double running = 0.0;
            for (std::size_t m = 0; m < g; ++m) {
                const double e = std::cos(std::numbers::pi * static_cast<double>(r) * (static_cast<double>(m) + 0.5) /
                                          static_cast<double>(g));
                rho[m] = e / (static_cast<double>(g) * rho_basis_.basis_integral(m));
                running += e / static_cast<double>(g);
                beta[m + 1] = running;
            }
            beta.back() = 0.0;
            rho_coefs_.push_back(std::move(rho));
            beta_coefs_.push_back(std::move(beta));
        }
        // sup bounds of beta^(q), q = 0 .. p+1
        for (const auto& beta : beta_coefs_) {
            std::vector<double> bound;
            std::vector<double> coefs = beta;
            SplineBasis b = beta_basis_;
            for (int q = 0;; ++q) {
                double mx = 0.0;
                for (double c : coefs) {
                    mx = std::max(mx, std::abs(c));
                }
                bound.push_back(mx);
                if (b.degree() == 0) {
                    break;
                }
                coefs = b.derivative_coefficients(coefs);
                b = b.lowered();
            }
            sup_bounds_.push_back(std::move(bound));
        }
    }

    std::size_t count() const { return rho_coefs_.size(); }
    const SplineBasis& rho_basis() const { return rho_basis_; }
    const SplineBasis& beta_basis() const { return beta_basis_; }
    std::span<const double> rho_coefficients(std::size_t r) const { return rho_coefs_[r]; }
    std::span<const double> beta_coefficients(std::size_t r) const { return beta_coefs_[r]; }

    /// Upper bound on sup |beta_r^(q)| (zero beyond the polynomial degree).
    double sup_bound(std::size_t r, std::size_t q) const
    {
        return q < sup_bounds_[r].size() ? sup_bounds_[r][q] : 0.0;
    }

    /// Fills rho[r] and beta[r] for all profiles at t.
    void evaluate(double t, std::span<double> rho, std::span<double> beta) const
    {
        double nv[16];
        double bv[16];
        const std::size_t rf = rho_basis_.eval_nonzero(t, std::span<double>(nv, 16));
        const std::size_t bf = beta_basis_.eval_nonzero(t, std::span<double>(bv, 16));
        const auto pr = static_cast<std::size_t>(rho_basis_.degree());
        for (std::size_t r = 0; r < count(); ++r) {
            double sr = 0.0;
            double sb = 0.0;
            for (std::size_t i = 0; i <= pr; ++i) {
                sr += rho_coefs_[r][rf + i] * nv[i];
            }
            for (std::size_t i = 0; i <= pr + 1; ++i) {
                sb += beta_coefs_[r][bf + i] * bv[i];
            }
            rho[r] = sr;
            beta[r] = sb;
        }
    }

private:
    SplineBasis rho_basis_;
    SplineBasis beta_basis_;
    std::vector<std::vector<double>> rho_coefs_;
    std::vector<std::vector<double>> beta_coefs_;
    std::vector<std::vector<double>> sup_bounds_;
};

} // namespace rgan

#endif // RGAN_BSPLINE_HPP
