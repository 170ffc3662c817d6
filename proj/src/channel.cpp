#include "uavnoma/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace uavnoma {

double ShadowedRicianParams::alpha() const
{
    const double t = 2.0 * b * m;
    return std::pow(t / (t + omega), m) / (2.0 * b);
}

double ShadowedRicianParams::delta() const
{
    return omega / (2.0 * b * (2.0 * b * m + omega));
}

double ShadowedRicianParams::zeta(int l) const
{
    // (-1)^l (1-m)_l = (m-1)(m-2)...(m-l) for l <= m-1
    double num = 1.0;
    for (int i = 0; i < l; ++i) num *= static_cast<double>(m - 1 - i);
    return num * std::pow(delta(), l) / std::tgamma(l + 1.0);
}

void ShadowedRicianParams::validate() const
{
    if (m < 1) throw std::invalid_argument("shadowed rician: m must be >= 1");
    if (!(b > 0.0)) throw std::invalid_argument("shadowed rician: b must be > 0");
    if (!(omega >= 0.0)) throw std::invalid_argument("shadowed rician: omega must be >= 0");
}

void A2GLinkParams::validate() const
{
    if (m < 1) throw std::invalid_argument("a2g link: m must be >= 1");
    if (!std::isfinite(eta_los_db) || !std::isfinite(eta_nlos_db))
        throw std::invalid_argument("a2g link: attenuation must be finite");
    if (!(carrier_freq_hz > 0.0)) throw std::invalid_argument("a2g link: carrier must be > 0");
    if (!(p_los >= 0.0 && p_los <= 1.0)) throw std::invalid_argument("a2g link: p_los outside [0,1]");
}

void ResidualParams::validate() const
{
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("residual: xi outside [0,1]");
    if (!(mean_gain > 0.0)) throw std::invalid_argument("residual: mean gain must be > 0");
}

double los_probability(double elev_deg)
{
    if (!(elev_deg >= 0.0 && elev_deg <= 90.0))
        throw std::domain_error("los_probability: elevation outside [0, 90]");
    return 1.0 / (1.0 + 12.08 * std::exp(-0.11 * (elev_deg - 12.08)));
}

double umi_pathloss_db(double d, double fc_ghz, double gain_tx_dbi, double gain_rx_dbi)
{
    constexpr double d0 = 1.0;
    if (!(d >= d0)) throw std::domain_error("umi_pathloss_db: distance below reference");
    return gain_tx_dbi + gain_rx_dbi - 22.7 - 26.0 * std::log10(fc_ghz)
        - 36.7 * std::log10(d / d0);
}

double free_space_gain(double d, double fc_hz)
{
    const double ratio = (kSpeedOfLight / fc_hz) / (4.0 * std::numbers::pi * d);
    return ratio * ratio;
}

double a2g_pathloss_db(double d, double fc_hz, bool los, const A2GLinkParams& params)
{
    return linear_to_db(free_space_gain(d, fc_hz))
        - (los ? params.eta_los_db : params.eta_nlos_db);
}

double mean_gain(const A2GLinkParams& link, double d)
{
    const double fs = free_space_gain(d, link.carrier_freq_hz);
    return link.p_los * fs / db_to_linear(link.eta_los_db)
        + (1.0 - link.p_los) * fs / db_to_linear(link.eta_nlos_db);
}

double g2g_power_pdf(const ShadowedRicianParams& sr, double x)
{
    if (x < 0.0) throw std::domain_error("g2g_power_pdf: negative argument");
    const double rate = sr.beta() - sr.delta();
    double series = 1.0;
    double xl = 1.0;
    for (int l = 1; l < sr.m; ++l) {
        xl *= x / l;
        series += sr.zeta(l) * xl;
    }
    return sr.alpha() * series * std::exp(-rate * x);
}

double g2g_gain_cdf(const ShadowedRicianParams& sr, double pathloss_linear, double x)
{
    if (x < 0.0) throw std::domain_error("g2g_gain_cdf: negative argument");
    if (x == 0.0) return 0.0;
    const double rate = sr.beta() - sr.delta();
    const double y = rate * x / pathloss_linear;
    // int_0^t s^l/l! e^{-rate s} ds = P(l+1, rate t) / rate^(l+1)
    double acc = 0.0;
    for (int l = 0; l < sr.m; ++l) {
        const double z = l == 0 ? 1.0 : sr.zeta(l);
        acc += z / std::pow(rate, l + 1) * boost::math::gamma_p(l + 1.0, y);
    }
    return std::min(1.0, sr.alpha() * acc);
}

} // namespace uavnoma
