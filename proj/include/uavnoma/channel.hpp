#pragma once

#include <random>

#include "uavnoma/link_params.hpp"
#include "uavnoma/mgdist.hpp"
#include "uavnoma/units.hpp"

namespace uavnoma {

/// Logistic LoS probability for an elevation angle in degrees (dense urban).
/// Throws std::domain_error outside [0, 90].
double los_probability(double elev_deg);

/// 3GPP UMi LoS path loss in dB (a gain, so negative) with fc in GHz and
/// d0 = 1 m. Throws std::domain_error for d < 1 m.
double umi_pathloss_db(double d, double fc_ghz, double gain_tx_dbi, double gain_rx_dbi);

/// Free-space gain (lambda / (4 pi d))^2, linear; fc in Hz.
double free_space_gain(double d, double fc_hz);

/// A2G/G2A path loss in dB: free-space gain minus the LoS or NLoS attenuation.
double a2g_pathloss_db(double d, double fc_hz, bool los, const A2GLinkParams& params);

/// Expected power gain E[g^2 L] of an A2G/G2A link at distance d.
///
/// The Nakagami LoS branch has unit-mean power, so the LoS term is the LoS
/// path loss itself (no division by m).
double mean_gain(const A2GLinkParams& link, double d);

/// Density of g^2 for the shadowed-Rician model (closed-form series).
double g2g_power_pdf(const ShadowedRicianParams& sr, double x);
/// CDF of g^2 L for the shadowed-Rician model, evaluated through the
/// regularized lower incomplete gamma of each series term.
double g2g_gain_cdf(const ShadowedRicianParams& sr, double pathloss_linear, double x);

/// One draw of g^2 L for the C-F link.
template <class URBG>
double sample_g2g_power(const ShadowedRicianParams& sr, double pathloss_linear, URBG& rng)
{
    return from_g2g(sr, pathloss_linear).sample(rng);
}

/// Variant that reuses a precomputed mixture (hot loop in Monte Carlo).
template <class URBG>
double sample_g2g_power(const MGDist& g2g, URBG& rng)
{
    return g2g.sample(rng);
}

/// One draw of g^2 L for an A2G/G2A link: Bernoulli(p_los) branch choice,
/// then a unit-mean Gamma(m) or exponential power times the branch path loss.
template <class URBG>
double sample_a2g_power(const A2GLinkParams& link, double d, URBG& rng)
{
    const double fs = free_space_gain(d, link.carrier_freq_hz);
    const bool los = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < link.p_los;
    if (los) {
        const double pl = fs / db_to_linear(link.eta_los_db);
        if (link.m == 1) return pl * std::exponential_distribution<double>(1.0)(rng);
        return pl * std::gamma_distribution<double>(link.m, 1.0 / link.m)(rng);
    }
    return fs / db_to_linear(link.eta_nlos_db) * std::exponential_distribution<double>(1.0)(rng);
}

/// Residual-interference power; identically zero when xi == 0.
template <class URBG>
double sample_residual_power(const ResidualParams& res, URBG& rng)
{
    if (res.xi == 0.0) return 0.0;
    return std::exponential_distribution<double>(1.0 / (res.xi * res.mean_gain))(rng);
}

} // namespace uavnoma
