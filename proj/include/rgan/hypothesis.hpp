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

#ifndef RGAN_HYPOTHESIS_HPP
#define RGAN_HYPOTHESIS_HPP

// Finite-parameter generator families with certified norm and Jacobian
// bounds, paired-generator discriminators, and lattice epsilon-nets.
//
// Component j of a generator is
//     phi_j(y) = t + sum_r h_r(y_0..y_{j-1}) beta_r(t),   t = y_j,
//     h_r(y)   = theta_{r,0} + sum_{l<j} sum_{s=1..c} theta_{r,l,s} (2 y_l - 1)^s,
// where beta_r are the zero-endpoint antiderivatives of the B-spline bump
// profiles in ProfileSet. theta = 0 is the identity. The diagonal partial is
// 1 + sum_r h_r rho_r(t), which stays in [1 - U_j, 1 + U_j] with
// U_j = sum_r sup|h_r| sup|rho_r|; all derivative bounds come from
// coefficient magnitudes, so they are certified upper bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rgan/bspline.hpp"
#include "rgan/divergence.hpp"
#include "rgan/error.hpp"
#include "rgan/rosenblatt.hpp"
#include "rgan/triangular_map.hpp"

namespace rgan {

enum class FamilyKind { bernstein_triangular, spline_triangular };

inline std::string_view to_string(FamilyKind f)
{
    return f == FamilyKind::bernstein_triangular ? "bernstein_triangular" : "spline_triangular";
}

inline FamilyKind parse_family(std::string_view s)
{
    if (s == "bernstein_triangular" || s == "bernstein") {
        return FamilyKind::bernstein_triangular;
    }
    if (s == "spline_triangular" || s == "spline") {
        return FamilyKind::spline_triangular;
    }
    fail(ErrorKind::ConfigInvalid, "unknown generator family '" + std::string(s) + "'");
}

struct HypothesisConfig {
    std::size_t dim = 1;
    int k = 3;
    double alpha = 0.5;
    double K = 4.0;
    FamilyKind family = FamilyKind::bernstein_triangular;
    int degree = 3;                  ///< polynomial degree of each component in its own coordinate
    std::size_t interior_knots = 0;  ///< spline family only
    std::size_t coupling_degree = 1; ///< degree of the prefix polynomials h_r
    double half_width = 0.0;         ///< parameter box half-width; 0 derives the largest certified one

    /// k > 1 - alpha + d/2, the condition under which the entropy integrals converge.
    bool regularity_ok() const { return static_cast<double>(k) > 1.0 - alpha + 0.5 * static_cast<double>(dim); }
};

inline double factorial(std::size_t n)
{
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= static_cast<double>(i);
    }
    return f;
}

/// Range bounds B1 = 1/(1 + d! K^(d+1)) and B2 = 1 - B1 of paired-generator discriminators.
inline std::pair<double, double> discriminator_bounds(std::size_t d, double K)
{
    const double b1 = 1.0 / (1.0 + factorial(d) * std::pow(K, static_cast<double>(d) + 1.0));
    return {b1, 1.0 - b1};
}

/// Certified bounds of one generator (or of a whole parameter box).
struct Certificate {
    std::vector<double> spread; ///< U_j per component
    double jac_lower = 0.0;     ///< inf of the Jacobian determinant
    double jac_upper = 0.0;     ///< sup of the Jacobian determinant
    double c1_upper = 0.0;      ///< C^1 norm bound
    double norm_upper = 0.0;    ///< C^{k,alpha} norm bound
};

struct GeneratorParams {
    std::vector<double> coefficients;
    Certificate certificate;
};

class GeneratorComponents final : public MapComponents {
public:
    GeneratorComponents(std::shared_ptr<const ProfileSet> profiles, std::size_t dim, std::size_t coupling,
                        std::vector<double> theta)
        : profiles_(std::move(profiles)), dim_(dim), coupling_(coupling), theta_(std::move(theta))
    {
        std::size_t offset = 0;
        for (std::size_t j = 0; j < dim_; ++j) {
            offsets_.push_back(offset);
            offset += profiles_->count() * (1 + j * coupling_);
        }
        if (offset != theta_.size()) {
            fail(ErrorKind::ConfigInvalid, "generator parameter count mismatch");
        }
    }

    std::size_t dim() const override { return dim_; }
    std::string kind() const override { return "generator"; }
    std::span<const double> parameters() const { return theta_; }

    double component(std::size_t j, std::span<const double> y) const override
    {
        double h[64];
        prefix_weights(j, y, h);
        return value(h, y[j]);
    }

    double diagonal_partial(std::size_t j, std::span<const double> y) const override
    {
        double h[64];
        prefix_weights(j, y, h);
        return slope(h, y[j]);
    }

    /// Safeguarded Newton iteration inside a shrinking bracket.
    double solve_component(std::size_t j, std::span<double> y, double x) const override
    {
        if (x <= 0.0) {
            return 0.0;
        }
        if (x >= 1.0) {
            return 1.0;
        }
        double h[64];
        prefix_weights(j, y, h);
        double lo = 0.0;
        double hi = 1.0;
        double t = x;
        for (int it = 0; it < 200; ++it) {
            const double r = value(h, t) - x;
            if (r == 0.0) {
                return t;
            }
            (r < 0.0 ? lo : hi) = t;
            const double s = slope(h, t);
            double next = t - r / s;
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
            }
            if (std::abs(next - t) <= 1e-16 || hi - lo <= 1e-15) {
                return next;
            }
            t = next;
        }
        fail(ErrorKind::NonConvergence, "generator inversion did not converge");
    }

private:
    void prefix_weights(std::size_t j, std::span<const double> y, double* h) const
    {
        const std::size_t nr = profiles_->count();
        const std::size_t block = 1 + j * coupling_;
        const double* th = theta_.data() + offsets_[j];
        for (std::size_t r = 0; r < nr; ++r) {
            const double* tr = th + r * block;
            double v = tr[0];
            for (std::size_t l = 0; l < j; ++l) {
                const double u = 2.0 * y[l] - 1.0;
                double pw = 1.0;
                for (std::size_t s = 0; s < coupling_; ++s) {
                    pw *= u;
                    v += tr[1 + l * coupling_ + s] * pw;
                }
            }
            h[r] = v;
        }
    }

    double value(const double* h, double t) const
    {
        double rho[64];
        double beta[64];
        const std::size_t nr = profiles_->count();
        profiles_->evaluate(t, std::span<double>(rho, nr), std::span<double>(beta, nr));
        double v = t;
        for (std::size_t r = 0; r < nr; ++r) {
            v += h[r] * beta[r];
        }
        if (t <= 0.0) {
            return 0.0;
        }
        if (t >= 1.0) {
            return 1.0;
        }
        return std::clamp(v, 0.0, 1.0);
    }

    double slope(const double* h, double t) const
    {
        double rho[64];
        double beta[64];
        const std::size_t nr = profiles_->count();
        profiles_->evaluate(t, std::span<double>(rho, nr), std::span<double>(beta, nr));
        double v = 1.0;
        for (std::size_t r = 0; r < nr; ++r) {
            v += h[r] * rho[r];
        }
        return v;
    }

    std::shared_ptr<const ProfileSet> profiles_;
    std::size_t dim_;
    std::size_t coupling_;
    std::vector<double> theta_;
    std::vector<std::size_t> offsets_;
};

/// The admissible generator family of a configuration: parameter layout,
/// certified parameter box [-b, b]^P, and bound evaluation.
class GeneratorFamily {
public:
    explicit GeneratorFamily(HypothesisConfig config) : config_(std::move(config))
    {
        const auto& c = config_;
        if (c.dim == 0 || c.dim > 7) {
            fail(ErrorKind::ConfigInvalid, "dim must be in 1..7");
        }
        if (c.k < 1) {
            fail(ErrorKind::ConfigInvalid, "k must be >= 1");
        }
        if (!(c.alpha > 0.0 && c.alpha <= 1.0)) {
            fail(ErrorKind::ConfigInvalid, "alpha must be in (0,1]");
        }
        if (!(c.K > 1.0)) {
            fail(ErrorKind::ConfigInvalid, "K must exceed 1");
        }
        if (c.degree < 2 || c.degree > 14) {
            fail(ErrorKind::ConfigInvalid, "degree must be in 2..14");
        }
        if (c.dim > 1 && c.coupling_degree == 0) {
            fail(ErrorKind::ConfigInvalid, "coupling_degree must be >= 1 for dim > 1");
        }
        const int p = c.degree - 1;
        if (c.family == FamilyKind::bernstein_triangular) {
            if (c.interior_knots != 0) {
                fail(ErrorKind::ConfigInvalid, "bernstein family has no interior knots");
            }
            profiles_ = std::make_shared<ProfileSet>(SplineBasis::clamped_uniform(p, 0));
        } else {
            if (c.interior_knots > 0 && c.degree < c.k + 1) {
                fail(ErrorKind::ConfigInvalid, "spline degree must be at least k+1 to be C^k across knots");
            }
            profiles_ = std::make_shared<ProfileSet>(SplineBasis::clamped_uniform(p, c.interior_knots));
        }
        if (profiles_->count() > 64) {
            fail(ErrorKind::ConfigInvalid, "too many profile functions");
        }
        for (std::size_t j = 0; j < c.dim; ++j) {
            param_count_ += profiles_->count() * (1 + j * c.coupling_degree);
        }
        if (c.half_width > 0.0) {
            half_width_ = c.half_width;
            if (!box_feasible(half_width_)) {
                fail(ErrorKind::ConfigInvalid, "half_width violates the certified norm or Jacobian bounds");
            }
        } else {
            half_width_ = largest_feasible_half_width();
        }
        // sup-norm Lipschitz constant of theta -> phi with respect to max |d theta|
        for (std::size_t j = 0; j < c.dim; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < profiles_->count(); ++r) {
                s += profiles_->sup_bound(r, 0) * static_cast<double>(1 + j * c.coupling_degree);
            }
            lipschitz_ = std::max(lipschitz_, s);
        }
    }

    const HypothesisConfig& config() const { return config_; }
    std::size_t parameter_count() const { return param_count_; }
    double half_width() const { return half_width_; }
    double sup_lipschitz() const { return lipschitz_; }
    const ProfileSet& profiles() const { return *profiles_; }

    /// Bounds for a parameter vector, or for the box when `theta` is empty.
    Certificate certify(std::span<const double> theta) const
    {
        std::vector<double> mags(param_count_, half_width_);
        if (!theta.empty()) {
            if (theta.size() != param_count_) {
                fail(ErrorKind::ConfigInvalid, "parameter vector has the wrong length");
            }
            for (std::size_t i = 0; i < param_count_; ++i) {
                mags[i] = std::abs(theta[i]);
            }
        }
        return bounds_for(mags);
    }

    bool in_box(std::span<const double> theta) const
    {
        if (theta.size() != param_count_) {
            return false;
        }
        for (double v : theta) {
            if (!(std::abs(v) <= half_width_ * (1.0 + 1e-12))) {
                return false;
            }
        }
        return true;
    }

    TriangularMap make(std::span<const double> theta) const
    {
        if (!in_box(theta)) {
            fail(ErrorKind::ParamsOutOfBox, "generator parameters outside the certified box");
        }
        return TriangularMap(std::make_shared<GeneratorComponents>(profiles_, config_.dim, config_.coupling_degree,
                                                                   std::vector<double>(theta.begin(), theta.end())));
    }

    GeneratorParams params(std::span<const double> theta) const
    {
        if (!in_box(theta)) {
            fail(ErrorKind::ParamsOutOfBox, "generator parameters outside the certified box");
        }
        return GeneratorParams{std::vector<double>(theta.begin(), theta.end()), certify(theta)};
    }

    std::vector<double> neutral() const { return std::vector<double>(param_count_, 0.0); }

private:
    Certificate bounds_for(std::span<const double> mags) const
    {
        const auto& c = config_;
        const std::size_t nr = profiles_->count();
        const std::size_t cd = c.coupling_degree;
        const auto k = static_cast<std::size_t>(c.k);
        std::vector<double> m(k + 2, 0.0); // m[a] = bound on derivatives of order a
        m[0] = 1.0;
        Certificate cert;
        cert.jac_lower = 1.0;
        cert.jac_upper = 1.0;
        std::size_t offset = 0;
        for (std::size_t j = 0; j < c.dim; ++j) {
            const std::size_t block = 1 + j * cd;
            double spread = 0.0;
            std::vector<double> hsup(nr, 0.0);
            for (std::size_t r = 0; r < nr; ++r) {
                for (std::size_t q = 0; q < block; ++q) {
                    hsup[r] += mags[offset + r * block + q];
                }
                spread += hsup[r] * profiles_->sup_bound(r, 1);
            }
            cert.spread.push_back(spread);
            cert.jac_lower *= std::max(0.0, 1.0 - spread);
            cert.jac_upper *= 1.0 + spread;
            for (std::size_t a = 1; a <= k + 1; ++a) {
                double pure = a == 1 ? 1.0 + spread : 0.0;
                if (a >= 2) {
                    for (std::size_t r = 0; r < nr; ++r) {
                        pure += hsup[r] * profiles_->sup_bound(r, a);
                    }
                }
                m[a] = std::max(m[a], pure);
                // a_l derivatives in one prefix variable, the rest in t
                for (std::size_t l = 0; l < j; ++l) {
                    for (std::size_t al = 1; al <= a; ++al) {
                        double mixed = 0.0;
                        for (std::size_t r = 0; r < nr; ++r) {
                            double hl = 0.0;
                            for (std::size_t s = al; s <= cd; ++s) {
                                double q = std::pow(2.0, static_cast<double>(al));
                                for (std::size_t f = s - al + 1; f <= s; ++f) {
                                    q *= static_cast<double>(f);
                                }
                                hl += mags[offset + r * block + 1 + l * cd + (s - 1)] * q;
                            }
                            mixed += hl * profiles_->sup_bound(r, a - al);
                        }
                        m[a] = std::max(m[a], mixed);
                    }
                }
            }
            offset += nr * block;
        }
        double ck = 0.0;
        for (std::size_t a = 0; a <= k; ++a) {
            ck = std::max(ck, m[a]);
        }
        cert.c1_upper = std::max(m[0], m[1]);
        cert.norm_upper = ck + std::pow(static_cast<double>(c.dim), (2.0 - c.alpha) / 2.0) * m[k + 1];
        return cert;
    }

    bool box_feasible(double b) const
    {
        const std::vector<double> mags(param_count_, b);
        const Certificate cert = bounds_for(mags);
        const double floor = std::pow(config_.K, -1.0 / static_cast<double>(config_.dim));
        for (double u : cert.spread) {
            if (!(1.0 - u >= floor) || !(u < 1.0)) {
                return false;
            }
        }
        return cert.norm_upper <= config_.K;
    }

    double largest_feasible_half_width() const
    {
        if (!box_feasible(0.0)) {
            fail(ErrorKind::ConfigInvalid, "identity is not certified for this K");
        }
        double lo = 0.0;
        double hi = 1.0;
        while (box_feasible(hi)) {
            lo = hi;
            hi *= 2.0;
        }
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (box_feasible(mid) ? lo : hi) = mid;
        }
        return lo;
    }

    HypothesisConfig config_;
    std::shared_ptr<const ProfileSet> profiles_;
    std::size_t param_count_ = 0;
    double half_width_ = 0.0;
    double lipschitz_ = 0.0;
};

inline TriangularMap make_generator(const GeneratorFamily& family, std::span<const double> theta)
{
    return family.make(theta);
}

/// D(x) = f_a(x) / (f_a(x) + f_b(x)) for the pushforward densities of two
/// family members; recorded range [B1, B2].
inline DiscriminatorFn make_discriminator(const GeneratorFamily& family, std::span<const double> theta_a,
                                          std::span<const double> theta_b)
{
    const PushforwardDensity fa(family.make(theta_a));
    const PushforwardDensity fb(family.make(theta_b));
    const auto [b1, b2] = discriminator_bounds(family.config().dim, family.config().K);
    DiscriminatorFn d;
    d.eval = [fa, fb](std::span<const double> x) {
        const double a = fa(x);
        const double b = fb(x);
        return a / (a + b);
    };
    d.lower = b1;
    d.upper = b2;
    return d;
}

struct NetOptions {
    std::size_t cap = 1000000;
    bool include_center = false; ///< odd lattice per parameter so the identity is a member
};

/// Cell-midpoint lattice over [-b, b]^P: every parameter vector of the box is
/// within b/N per coordinate of a member, hence within epsilon in sup-norm of
/// the maps.
struct EpsNet {
    double epsilon = 0.0;
    std::size_t points_per_param = 1;
    std::vector<std::vector<double>> members;

    std::size_t size() const { return members.size(); }
};

inline EpsNet build_eps_net(const GeneratorFamily& family, double epsilon, NetOptions options = {})
{
    if (!(epsilon > 0.0)) {
        fail(ErrorKind::ConfigInvalid, "epsilon must be positive");
    }
    const double b = family.half_width();
    const double ratio = b * family.sup_lipschitz() / epsilon;
    std::size_t per = ratio <= 1.0 ? 1 : static_cast<std::size_t>(std::ceil(ratio));
    if (options.include_center && per % 2 == 0) {
        ++per;
    }
    const std::size_t p = family.parameter_count();
    double card = std::pow(static_cast<double>(per), static_cast<double>(p));
    if (card > static_cast<double>(options.cap)) {
        fail(ErrorKind::NetTooLarge, "epsilon-net would have " + std::to_string(card) + " members");
    }
    EpsNet net;
    net.epsilon = epsilon;
    net.points_per_param = per;
    const auto count = static_cast<std::size_t>(card);
    net.members.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<double> theta(p);
        std::size_t rest = idx;
        for (std::size_t q = p; q-- > 0;) {
            const std::size_t i = rest % per;
            rest /= per;
            theta[q] = per == 1 ? 0.0 : -b + (2.0 * static_cast<double>(i) + 1.0) * b / static_cast<double>(per);
        }
        net.members.push_back(std::move(theta));
    }
    return net;
}

/// Discriminators of a net of N generators: all ordered pairs (a, b) with
/// a != b, plus the constant 1/2 represented by (0, 0).
inline std::vector<std::pair<std::size_t, std::size_t>> discriminator_pairs(std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 0}};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b) {
                pairs.emplace_back(a, b);
            }
        }
    }
    return pairs;
}

} // namespace rgan

#endif // RGAN_HYPOTHESIS_HPP
