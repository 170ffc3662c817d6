#pragma once

#include <cstdint>
#include <optional>

#include "uavnoma/geometry.hpp"
#include "uavnoma/link_params.hpp"
#include "uavnoma/mgdist.hpp"

namespace uavnoma {

/// Full parameter bundle. Defaults reproduce the simulation table of the
/// reference study on the reference topology.
struct Scenario
{
    Topology topology = Topology::reference();

    double rate_c = 1.0;   // bits/s/Hz
    double rate_e = 0.05;
    double xi_u = 0.1;     // residual level at the UAV
    double xi_f = 0.1;     // residual level at the fusion center

    int m_cf = 5;
    double b_cf = 0.5;
    double omega_cf = 1.0;
    int m_cu = 3;
    int m_eu = 1;
    int m_uf = 5;

    double eta_los_db = 1.6;
    double eta_nlos_db = 23.0;
    double carrier_freq_hz = 3e9;
    double gain_c_dbi = 0.0;
    double gain_f_dbi = 0.0;

    double noise_density_dbm_hz = -144.0;
    double bandwidth_hz = 20e6;

    double p_max1_dbm = 30.0;
    double p_max2_dbm = 30.0;
    double theta1 = 0.5;
    double theta2 = 0.5;

    /// Side of the square area used for random placements, meters.
    double network_dim = 50.0;

    double noise_watt() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Everything the analytics and the sampler need that depends only on the
/// geometry and channel parameters (not on the power split).
struct LinkModel
{
    double d_cf = 0, d_cu = 0, d_eu = 0, d_uf = 0;
    double pathloss_cf = 0;   // linear UMi gain of the C-F link
    ShadowedRicianParams sr_cf;
    A2GLinkParams cu, eu, uf;

    MGDist phi_cf, phi_cu, phi_eu, phi_uf;
    // nullopt means perfect SIC (residual identically zero)
    std::optional<MGDist> res_cu, res_cf, res_uf;
    ResidualParams rp_cu, rp_cf, rp_uf;

    double noise = 0;   // watts, same at U and F
};

LinkModel build_link_model(const Scenario& s);

/// Scenario with the UAV moved to `pos_u`.
Scenario with_uav_at(const Scenario& s, const Position3D& pos_u);

/// Redraw C and E uniformly over the square [-dim/2, dim/2]^2 at ground level;
/// F and U keep their positions. Draws repeat until every node pair is at
/// least 1 m apart.
Scenario with_random_users(const Scenario& s, std::uint64_t seed);

} // namespace uavnoma
