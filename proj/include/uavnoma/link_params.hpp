#pragma once

namespace uavnoma {

/// Shadowed-Rician small-scale fading of the ground-to-ground C-F link.
/// `m` is the integer shadowing severity, `b` half the multipath power and
/// `omega` the average LoS power, all linear.
struct ShadowedRicianParams
{
    int m = 5;
    double b = 0.5;
    double omega = 1.0;

    double alpha() const;
    double beta() const { return 1.0 / (2.0 * b); }
    double delta() const;
    /// Series coefficient zeta(l) = (-1)^l (1-m)_l delta^l / l!, nonnegative for l < m.
    double zeta(int l) const;

    void validate() const;
};

/// Probabilistic-LoS air/ground link. Attenuations are in dB, the carrier in Hz.
struct A2GLinkParams
{
    int m = 1;                 // Nakagami shape of the LoS branch
    double eta_los_db = 1.6;
    double eta_nlos_db = 23.0;
    double carrier_freq_hz = 3e9;
    double p_los = 0.5;

    void validate() const;
};

/// Residual interference after imperfect SIC: exponential power with mean
/// xi * mean_gain.
struct ResidualParams
{
    double xi = 0.1;
    double mean_gain = 1.0;

    void validate() const;
};

} // namespace uavnoma
