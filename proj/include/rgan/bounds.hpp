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

#ifndef RGAN_BOUNDS_HPP
#define RGAN_BOUNDS_HPP

// Closed-form constants of the sampling-error analysis: covering-number
// bounds for Holder balls, the subgaussian increment metric, the chaining
// (Dudley) bound and its constants, the bounded-differences tail, and the
// K = (log n)^beta schedule.
//
// The covering constant of Holder balls is known only up to an absolute
// factor c1_star; every value here is "up to c1_star" (default 1).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>

#include "rgan/error.hpp"
#include "rgan/hypothesis.hpp"

namespace rgan {

/// C1 = c1_star * codim^(1 + dim / (2 smoothness)).
inline double covering_constant(std::size_t dim, std::size_t codim, double smoothness, double c1_star = 1.0)
{
    return c1_star *
           std::pow(static_cast<double>(codim), 1.0 + static_cast<double>(dim) / (2.0 * smoothness));
}

/// Upper bound C1 (K / eps)^(dim / (alpha + k)) on log N(B[0,K], sup, eps).
inline double covering_bound(std::size_t dim, std::size_t codim, int k, double alpha, double K, double epsilon,
                             double c1_star = 1.0)
{
    if (!(epsilon > 0.0) || !(K > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "covering bound needs epsilon > 0 and K > 0");
    }
    const double s = alpha + static_cast<double>(k);
    return covering_constant(dim, codim, s, c1_star) * std::pow(K / epsilon, static_cast<double>(dim) / s);
}

struct RhoMetricParams {
    std::size_t d = 1;
    double K = 1.0;
    double n = 1.0;

    /// 1 + d! K^(d+1)
    double a() const { return 1.0 + factorial(d) * std::pow(K, static_cast<double>(d) + 1.0); }
    /// d^2 (d!)^3 K^(3d+2)
    double b() const
    {
        const double f = factorial(d);
        return static_cast<double>(d * d) * f * f * f * std::pow(K, 3.0 * static_cast<double>(d) + 2.0);
    }
};

/// rho_n = (1 + d! K^(d+1)) / sqrt(n) * [dD + d^2 (d!)^3 K^(3d+2) dPhi].
inline double rho_metric(const RhoMetricParams& p, double d_disc, double d_gen)
{
    if (d_disc < 0.0 || d_gen < 0.0 || !(p.n >= 1.0)) {
        fail(ErrorKind::ConfigInvalid, "rho metric needs nonnegative distances and n >= 1");
    }
    const double rho1 = p.a() * (d_disc + p.b() * d_gen);
    return rho1 / std::sqrt(p.n);
}

struct ChainingExponents {
    double a; ///< d / (2 (alpha + k))
    double b; ///< d / (2 (alpha + k - 1))
};

inline ChainingExponents chaining_exponents(std::size_t d, double alpha, int k)
{
    const double s = alpha + static_cast<double>(k);
    const ChainingExponents e{static_cast<double>(d) / (2.0 * s), static_cast<double>(d) / (2.0 * (s - 1.0))};
    if (!(s - 1.0 > 0.0) || e.b >= 1.0) {
        fail(ErrorKind::IntegralDivergent, "entropy integral diverges: need k > 1 - alpha + d/2");
    }
    return e;
}

/// max{C1(d -> R^d, alpha + k), C1(d -> R, alpha + k - 1)}.
inline double c2_constant(std::size_t d, double alpha, int k, double c1_star = 1.0)
{
    const double s = alpha + static_cast<double>(k);
    return std::max(covering_constant(d, d, s, c1_star), covering_constant(d, 1, s - 1.0, c1_star));
}

inline double c3_constant(std::size_t d, double alpha, int k, double K, double c1_star = 1.0)
{
    const double s = alpha + static_cast<double>(k);
    const double f = factorial(d);
    const double dd = static_cast<double>(d);
    const double lead = 1.0 + f * std::pow(K, dd + 1.0);
    const double gen_base = 2.0 * dd * dd * f * f * f * std::pow(K, 3.0 * dd + 3.0) * lead;
    const double disc_base = 2.0 * K * lead;
    const double m = std::max(std::pow(gen_base, dd / s), std::pow(disc_base, dd / (s - 1.0)));
    return std::sqrt(c2_constant(d, alpha, k, c1_star) * m);
}

namespace detail {

inline double diameter_bracket(std::size_t d, double alpha, int k, double delta1, bool exact_integral)
{
    if (!(delta1 > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "diameter delta1 must be positive");
    }
    const auto e = chaining_exponents(d, alpha, k);
    const double ta = std::pow(delta1, 1.0 - e.a);
    const double tb = std::pow(delta1, 1.0 - e.b);
    return exact_integral ? ta / (1.0 - e.a) + tb / (1.0 - e.b) : ta + tb;
}

} // namespace detail

/// C = 12 C3 [delta1^(1-a) + delta1^(1-b)]; with exact_integral the two
/// terms carry the antiderivative factors 1/(1-a) and 1/(1-b).
inline double full_C(std::size_t d, double alpha, int k, double K, double delta1, bool exact_integral = false,
                     double c1_star = 1.0)
{
    const double bracket = detail::diameter_bracket(d, alpha, k, delta1, exact_integral);
    return 12.0 * c3_constant(d, alpha, k, K, c1_star) * bracket;
}

/// Chaining bound C / sqrt(n) on the expected sampling error.
inline double dudley_bound(std::size_t d, double alpha, int k, double K, double n, double delta1,
                           bool exact_integral = false, double c1_star = 1.0)
{
    if (!(n >= 1.0)) {
        fail(ErrorKind::ConfigInvalid, "n must be >= 1");
    }
    return full_C(d, alpha, k, K, delta1, exact_integral, c1_star) / std::sqrt(n);
}

/// gamma = 48 d^2 (d!)^4 C2^(1/2) [delta1^(1-a) + delta1^(1-b)]; C <= gamma K^(4(d+1)) for K > 1.
inline double gamma_constant(std::size_t d, double alpha, int k, double delta1, double c1_star = 1.0)
{
    const double f = factorial(d);
    const double bracket = detail::diameter_bracket(d, alpha, k, delta1, false);
    return 48.0 * static_cast<double>(d * d) * f * f * f * f * std::sqrt(c2_constant(d, alpha, k, c1_star)) *
           bracket;
}

/// P(sup >= E sup + t) <= exp(-n t^2 / log^2 B1).
inline double mcdiarmid_tail(double b1, double n, double t)
{
    if (!(b1 > 0.0 && b1 < 1.0) || t < 0.0 || !(n > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "McDiarmid tail needs B1 in (0,1), n > 0, t >= 0");
    }
    const double lb = std::log(b1);
    return std::exp(-n * t * t / (lb * lb));
}

struct TailBound {
    double threshold;
    double probability;
    double log_probability; ///< exact exponent; probability underflows to 0 quickly
};

/// threshold 2 gamma K^(4(d+1)) n^(delta - 1/2) and its tail probability.
inline TailBound tail_threshold_and_prob(std::size_t d, double alpha, int k, double K, double n, double delta,
                                          double delta1, double c1_star = 1.0)
{
    if (!(K > 1.0) || !(delta > 0.0) || !(n >= 1.0)) {
        fail(ErrorKind::ConfigInvalid, "tail bound needs K > 1, delta > 0, n >= 1");
    }
    const double g = gamma_constant(d, alpha, k, delta1, c1_star);
    const double dd = static_cast<double>(d);
    const double scale = g * std::pow(K, 4.0 * (dd + 1.0));
    const double lead = std::log1p(factorial(d) * std::pow(K, dd + 1.0));
    const double log_p = -scale * scale * std::pow(n, 2.0 * delta) / (lead * lead);
    return TailBound{2.0 * scale * std::pow(n, delta - 0.5), std::exp(log_p), log_p};
}

/// K = (log n)^beta.
inline double k_schedule(double n, double beta)
{
    if (!(n > 1.0) || !(beta > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "schedule needs n > 1 and beta > 0");
    }
    return std::pow(std::log(n), beta);
}

/// rho_1 diameter of the generator x discriminator index set of a family:
/// generator sup-distances are at most min(1, 2 b Lip) and discriminator
/// values lie in [B1, B2].
inline double certified_diameter(const GeneratorFamily& family)
{
    const auto& c = family.config();
    const auto [b1, b2] = discriminator_bounds(c.dim, c.K);
    const double d_gen = std::min(1.0, 2.0 * family.half_width() * family.sup_lipschitz());
    return rho_metric(RhoMetricParams{c.dim, c.K, 1.0}, b2 - b1, d_gen);
}

struct BoundInputs {
    std::size_t d = 1;
    double alpha = 0.5;
    int k = 3;
    double K = 2.0;
    double n = 1000.0;
    double delta = 0.1;
    double delta1 = 1.0;
    double c1_star = 1.0;
    bool exact_integral = false;
};

struct BoundReport {
    BoundInputs inputs;
    double B1 = 0.0;
    double B2 = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    std::optional<double> C3, gamma, C, dudley_value, mcdiarmid_tail, tail_threshold, tail_probability,
        tail_log_probability;
    bool regularity_ok = false;
};

/// Evaluates every constant; those that need the regularity condition are
/// left empty when it fails.
inline BoundReport make_bound_report(const BoundInputs& in)
{
    BoundReport r;
    r.inputs = in;
    std::tie(r.B1, r.B2) = discriminator_bounds(in.d, in.K);
    const double s = in.alpha + static_cast<double>(in.k);
    r.C1 = covering_constant(in.d, in.d, s, in.c1_star);
    r.C2 = c2_constant(in.d, in.alpha, in.k, in.c1_star);
    r.regularity_ok = static_cast<double>(in.k) > 1.0 - in.alpha + 0.5 * static_cast<double>(in.d);
    if (!r.regularity_ok) {
        return r;
    }
    r.C3 = c3_constant(in.d, in.alpha, in.k, in.K, in.c1_star);
    r.gamma = gamma_constant(in.d, in.alpha, in.k, in.delta1, in.c1_star);
    r.C = full_C(in.d, in.alpha, in.k, in.K, in.delta1, in.exact_integral, in.c1_star);
    r.dudley_value = *r.C / std::sqrt(in.n);
    if (in.K > 1.0) {
        const auto tail = tail_threshold_and_prob(in.d, in.alpha, in.k, in.K, in.n, in.delta, in.delta1, in.c1_star);
        r.tail_threshold = tail.threshold;
        r.tail_probability = tail.probability;
        r.tail_log_probability = tail.log_probability;
        const double t = 0.5 * tail.threshold;
        r.mcdiarmid_tail = mcdiarmid_tail(r.B1, in.n, t);
    }
    return r;
}

} // namespace rgan

#endif // RGAN_BOUNDS_HPP
