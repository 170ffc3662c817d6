#pragma once

#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "uavnoma/link_params.hpp"

namespace uavnoma {

/// Finite mixture of Gamma densities
///
///     f(x) = sum_k weight_k * x^(shape_k - 1) exp(-x / scale_k) / ((shape_k - 1)! scale_k^shape_k)
///
/// with integer shapes. This is the common representation of every channel
/// power gain and residual-interference power in the system. Weights sum to
/// one; all weights produced by the library are nonnegative.
struct MGDist
{
    Eigen::ArrayXd weight;
    Eigen::ArrayXd scale;
    Eigen::ArrayXi shape;

    MGDist() = default;
    MGDist(Eigen::ArrayXd w, Eigen::ArrayXd s, Eigen::ArrayXi m);

    /// Single Gamma(shape, scale) component.
    static MGDist gamma(int shape, double scale);
    static MGDist exponential(double mean) { return gamma(1, mean); }

    Eigen::Index size() const { return weight.size(); }
    double mean() const;

    /// Draw one variate: component selection followed by a Gamma draw.
    template <class URBG>
    double sample(URBG& rng) const;
};

/// Density at x. Throws std::domain_error for x < 0.
double mg_pdf(const MGDist& d, double x);
/// CDF at x (x = +inf gives 1). Throws std::domain_error for x < 0.
double mg_cdf(const MGDist& d, double x);
/// Survival function Pr[X > x].
double mg_sf(const MGDist& d, double x);

/// Upper incomplete gamma Gamma(n, x) for integer n >= 1 via the finite sum
/// (n-1)! e^{-x} sum_{k<n} x^k / k!.
double upper_gamma_int(int n, double x);
/// log Gamma(n, x); finite for large x where Gamma(n, x) underflows.
double log_upper_gamma_int(int n, double x);
/// Regularized upper incomplete gamma Q(n, x) = Gamma(n, x) / (n-1)!.
double gamma_q_int(int n, double x);
/// Regularized lower incomplete gamma P(n, x) = 1 - Q(n, x), accurate for small x.
double gamma_p_int(int n, double x);

/// G2G shadowed-Rician power gain scaled by `pathloss_linear`. One Gamma
/// component per shadowing order; weights renormalized to sum to one.
MGDist from_g2g(const ShadowedRicianParams& sr, double pathloss_linear);
/// A2G/G2A gain: LoS Gamma(m) branch with probability p_los plus an
/// exponential NLoS branch. Zero-weight branches are dropped.
MGDist from_a2g(const A2GLinkParams& link, double d);
/// Residual interference power: exponential with mean xi * mean_gain.
/// Throws std::domain_error for xi == 0 (the caller treats that as a point mass at zero).
MGDist from_residual(const ResidualParams& res);

/// Chain specification for exceedance probabilities
///
///     Pr[ X_0 > p_0 X_1 + q_0, X_1 > p_1 X_2 + q_1, ..., X_n > w ]
///
/// over independent MG variates X_0..X_n. `p` and `q` have length n.
struct ExceedanceSpec
{
    std::vector<double> p;
    std::vector<double> q;
    double w = 0.0;

    std::size_t depth() const { return p.size(); }
    void validate() const;
};

/// Pr[X_0 > w0].
double exceed_I0(const MGDist& d0, double w0);
/// Pr[X_0 > p_0 X_1 + q_0, X_1 > w].
double exceed_I1(const MGDist& d0, const MGDist& d1, const ExceedanceSpec& spec);
/// Pr[X_0 > p_0 X_1 + q_0, X_1 > p_1 X_2 + q_1, X_2 > w].
double exceed_I2(const MGDist& d0, const MGDist& d1, const MGDist& d2,
                 const ExceedanceSpec& spec);
/// Arbitrary depth, evaluated by recursive expansion of the Gamma terms.
/// Throws std::invalid_argument when dists.size() != spec.depth() + 1.
double exceed_In(std::span<const MGDist> dists, const ExceedanceSpec& spec);

// ---------------------------------------------------------------------------

template <class URBG>
double MGDist::sample(URBG& rng) const
{
    Eigen::Index k = 0;
    if (size() > 1) {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        for (; k < size() - 1; ++k) {
            u -= weight(k);
            if (u < 0.0) break;
        }
    }
    if (shape(k) == 1)
        return std::exponential_distribution<double>(1.0 / scale(k))(rng);
    return std::gamma_distribution<double>(shape(k), scale(k))(rng);
}

} // namespace uavnoma
