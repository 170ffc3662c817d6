#include "uavnoma/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "uavnoma/channel.hpp"
#include "uavnoma/units.hpp"

namespace uavnoma {

namespace {

void require(bool ok, const std::string& field)
{
    if (!ok) throw std::invalid_argument("scenario: invalid " + field);
}

A2GLinkParams a2g_link(const Scenario& s, int m, const Position3D& a, const Position3D& b)
{
    A2GLinkParams l;
    l.m = m;
    l.eta_los_db = s.eta_los_db;
    l.eta_nlos_db = s.eta_nlos_db;
    l.carrier_freq_hz = s.carrier_freq_hz;
    l.p_los = los_probability(elevation_angle_deg(a, b));
    return l;
}

std::optional<MGDist> residual(const ResidualParams& rp)
{
    if (rp.xi == 0.0) return std::nullopt;
    return from_residual(rp);
}

} // namespace

double Scenario::noise_watt() const
{
    return dbm_to_watt(noise_density_dbm_hz + linear_to_db(bandwidth_hz));
}

void Scenario::validate() const
{
    topology.validate();
    require(std::isfinite(rate_c) && rate_c > 0.0, "rate_c");
    require(std::isfinite(rate_e) && rate_e > 0.0, "rate_e");
    require(xi_u >= 0.0 && xi_u <= 1.0, "xi_u");
    require(xi_f >= 0.0 && xi_f <= 1.0, "xi_f");
    require(m_cf >= 1, "m_cf");
    require(m_cu >= 1, "m_cu");
    require(m_eu >= 1, "m_eu");
    require(m_uf >= 1, "m_uf");
    require(std::isfinite(b_cf) && b_cf > 0.0, "b_cf");
    require(std::isfinite(omega_cf) && omega_cf >= 0.0, "omega_cf");
    require(std::isfinite(eta_los_db), "eta_los_db");
    require(std::isfinite(eta_nlos_db), "eta_nlos_db");
    require(std::isfinite(carrier_freq_hz) && carrier_freq_hz > 0.0, "carrier_freq_hz");
    require(std::isfinite(gain_c_dbi), "gain_c_dbi");
    require(std::isfinite(gain_f_dbi), "gain_f_dbi");
    require(std::isfinite(noise_density_dbm_hz), "noise_density_dbm_hz");
    require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth_hz");
    require(std::isfinite(p_max1_dbm), "p_max1_dbm");
    require(std::isfinite(p_max2_dbm), "p_max2_dbm");
    require(theta1 >= 0.0 && theta1 <= 1.0, "theta1");
    require(theta2 >= 0.0 && theta2 <= 1.0, "theta2");
    require(std::isfinite(network_dim) && network_dim > 0.0, "network_dim");
    require(distance(topology.pos_c, topology.pos_f) >= 1.0, "topology (C-F closer than 1 m)");
}

LinkModel build_link_model(const Scenario& s)
{
    s.validate();
    const Topology& t = s.topology;
    LinkModel lm;
    lm.d_cf = distance(t.pos_c, t.pos_f);
    lm.d_cu = distance(t.pos_c, t.pos_u);
    lm.d_eu = distance(t.pos_e, t.pos_u);
    lm.d_uf = distance(t.pos_u, t.pos_f);

    lm.pathloss_cf = db_to_linear(
        umi_pathloss_db(lm.d_cf, s.carrier_freq_hz / 1e9, s.gain_c_dbi, s.gain_f_dbi));
    lm.sr_cf = {s.m_cf, s.b_cf, s.omega_cf};
    lm.cu = a2g_link(s, s.m_cu, t.pos_c, t.pos_u);
    lm.eu = a2g_link(s, s.m_eu, t.pos_e, t.pos_u);
    lm.uf = a2g_link(s, s.m_uf, t.pos_u, t.pos_f);

    lm.phi_cf = from_g2g(lm.sr_cf, lm.pathloss_cf);
    lm.phi_cu = from_a2g(lm.cu, lm.d_cu);
    lm.phi_eu = from_a2g(lm.eu, lm.d_eu);
    lm.phi_uf = from_a2g(lm.uf, lm.d_uf);

    lm.rp_cu = {s.xi_u, mean_gain(lm.cu, lm.d_cu)};
    lm.rp_cf = {s.xi_f, lm.pathloss_cf};
    lm.rp_uf = {s.xi_f, mean_gain(lm.uf, lm.d_uf)};
    lm.res_cu = residual(lm.rp_cu);
    lm.res_cf = residual(lm.rp_cf);
    lm.res_uf = residual(lm.rp_uf);

    lm.noise = s.noise_watt();
    return lm;
}

Scenario with_uav_at(const Scenario& s, const Position3D& pos_u)
{
    Scenario out = s;
    out.topology.pos_u = pos_u;
    return out;
}

Scenario with_random_users(const Scenario& s, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-s.network_dim / 2.0, s.network_dim / 2.0);
    Scenario out = s;
    Topology& t = out.topology;
    for (;;) {
        t.pos_c = Position3D(coord(rng), coord(rng), 0.0);
        t.pos_e = Position3D(coord(rng), coord(rng), 0.0);
        const Position3D* nodes[] = {&t.pos_c, &t.pos_e, &t.pos_f, &t.pos_u};
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (distance(*nodes[i], *nodes[j]) < 1.0) { ok = false; break; }
        if (ok) break;
    }
    t.mobility_radius = distance(t.pos_c, t.pos_f) / 2.0;
    return out;
}

} // namespace uavnoma
