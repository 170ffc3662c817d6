#include "uavnoma/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "uavnoma/units.hpp"

namespace uavnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double safe_div(double num, double den)
{
    if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
    return num / den;
}

struct Order
{
    UavBranch uav;
    FcBranch fc;
};

DecodeOutcome decode(const SinrSet& s, const Thresholds& th, bool xc1_ok, Order order)
{
    DecodeOutcome out;
    out.xc1_ok = xc1_ok;
    out.uav_branch = order.uav;
    if (order.uav == UavBranch::CFirst) {
        out.xc1_at_uav_ok = s.uav_xc1_first > th.tau_c;
        out.xe_at_uav_ok = out.xc1_at_uav_ok && s.uav_xe_sic > th.tau_e;
    } else {
        out.xe_at_uav_ok = s.uav_xe_first > th.tau_e;
    }
    out.uav_silent = !out.xe_at_uav_ok;

    if (out.uav_silent) {
        out.fc_branch = FcBranch::None;
        out.xc2_ok = s.fc_xc2_alone > th.tau_c;
        out.xe_ok = false;
        return out;
    }
    out.fc_branch = order.fc;
    if (order.fc == FcBranch::CFirst) {
        out.xc2_ok = s.fc_xc2_first > th.tau_c;
        out.xe_ok = out.xc2_ok && s.fc_xe_sic > th.tau_e;
    } else {
        out.xe_ok = s.fc_xe_first > th.tau_e;
        out.xc2_ok = out.xe_ok && s.fc_xc2_sic > th.tau_c;
    }
    return out;
}

} // namespace

void PowerAllocation::validate() const
{
    if (!(theta1 >= 0.0 && theta1 <= 1.0) || !(theta2 >= 0.0 && theta2 <= 1.0))
        throw std::invalid_argument("power allocation: theta outside [0,1]");
    if (!(p_max1 > 0.0) || !(p_max2 > 0.0) || !std::isfinite(p_max1) || !std::isfinite(p_max2))
        throw std::invalid_argument("power allocation: budgets must be finite and positive");
}

PowerAllocation powers_from(const Scenario& s)
{
    return powers_from(s, s.theta1, s.theta2);
}

PowerAllocation powers_from(const Scenario& s, double theta1, double theta2)
{
    PowerAllocation pw{theta1, theta2, dbm_to_watt(s.p_max1_dbm), dbm_to_watt(s.p_max2_dbm)};
    pw.validate();
    return pw;
}

double half_frame_threshold(double rate)
{
    return std::exp2(2.0 * rate) - 1.0;
}

Thresholds derive_thresholds(double rate_c, double rate_e, double noise,
                             const PowerAllocation& pw, double tau_scale)
{
    pw.validate();
    if (!(noise > 0.0)) throw std::invalid_argument("derive_thresholds: noise must be > 0");
    if (!(rate_c > 0.0) || !(rate_e > 0.0))
        throw std::invalid_argument("derive_thresholds: rates must be > 0");

    Thresholds th;
    th.rate_c = rate_c;
    th.rate_e = rate_e;
    th.tau_c = tau_scale * half_frame_threshold(rate_c);
    th.tau_e = tau_scale * half_frame_threshold(rate_e);
    th.noise = noise;

    th.gbar_c1 = pw.p_c1() / noise;
    th.gbar_e = pw.p_e() / noise;
    th.gbar_c2 = pw.p_c2() / noise;
    th.gbar_u = pw.p_u() / noise;
    th.degenerate = th.gbar_c1 == 0.0 || th.gbar_e == 0.0 || th.gbar_c2 == 0.0 || th.gbar_u == 0.0;

    th.a1 = safe_div(th.tau_c, th.gbar_c1);
    th.a2 = safe_div(th.tau_e, th.gbar_e);
    th.alpha1 = safe_div(th.gbar_e * th.tau_c, th.gbar_c1);
    th.alpha2 = safe_div(th.gbar_c1 * th.tau_e, th.gbar_e);

    th.b1 = safe_div(th.tau_c, th.gbar_c2);
    th.b2 = safe_div(th.tau_e, th.gbar_u);
    th.beta1 = safe_div(th.gbar_u * th.tau_c, th.gbar_c2);
    th.beta2 = safe_div(th.gbar_c2 * th.tau_e, th.gbar_u);

    th.alpha1_lt1 = th.alpha1 < 1.0;
    th.alpha2_lt1 = th.alpha2 < 1.0;
    th.beta1_lt1 = th.beta1 < 1.0;
    th.beta2_lt1 = th.beta2 < 1.0;

    th.A1 = th.alpha1_lt1 ? th.a1 / (1.0 - th.alpha1) : kNaN;
    th.A2 = th.alpha2_lt1 ? th.a2 / (1.0 - th.alpha2) : kNaN;
    th.calA = th.alpha1_lt1 && th.A1 > th.a2 ? (th.A1 - th.a2) / th.alpha2 : kNaN;
    th.B1 = th.beta1_lt1 ? th.b1 / (1.0 - th.beta1) : kNaN;
    th.B2 = th.beta2_lt1 ? th.b2 / (1.0 - th.beta2) : kNaN;
    th.calB = th.beta1_lt1 && th.B1 > th.b2 ? (th.B1 - th.b2) / th.beta2 : kNaN;
    th.calB_hat = th.beta2_lt1 && th.B2 > th.b1 ? (th.B2 - th.b1) / th.beta1 : kNaN;
    return th;
}

Thresholds derive_thresholds(const Scenario& s, const PowerAllocation& pw, double tau_scale)
{
    return derive_thresholds(s.rate_c, s.rate_e, s.noise_watt(), pw, tau_scale);
}

SinrSet sinr_set(const TrialRealization& t, const PowerAllocation& pw)
{
    const double pc1 = pw.p_c1(), pe = pw.p_e(), pc2 = pw.p_c2(), pu = pw.p_u();
    SinrSet s;
    s.fc_xc1 = safe_div(pc1 * t.phi_cf, t.noise_f);
    s.uav_xc1_first = safe_div(pc1 * t.phi_cu, pe * t.phi_eu + t.noise_u);
    s.uav_xe_sic = safe_div(pe * t.phi_eu, pc1 * t.res_cu + t.noise_u);
    s.uav_xe_first = safe_div(pe * t.phi_eu, pc1 * t.phi_cu + t.noise_u);
    s.fc_xc2_first = safe_div(pc2 * t.phi_cf, pu * t.phi_uf + t.noise_f);
    s.fc_xe_sic = safe_div(pu * t.phi_uf, pc2 * t.res_cf + t.noise_f);
    s.fc_xe_first = safe_div(pu * t.phi_uf, pc2 * t.phi_cf + t.noise_f);
    s.fc_xc2_sic = safe_div(pc2 * t.phi_cf, pu * t.res_uf + t.noise_f);
    s.fc_xc2_alone = safe_div(pc2 * t.phi_cf, t.noise_f);
    return s;
}

std::string_view mechanism_name(Mechanism m)
{
    switch (m) {
    case Mechanism::ADM: return "adm";
    case Mechanism::D1: return "d1";
    case Mechanism::D2: return "d2";
    case Mechanism::D3: return "d3";
    case Mechanism::D4: return "d4";
    }
    return "?";
}

Mechanism parse_mechanism(std::string_view s)
{
    std::string low(s);
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (Mechanism m : kAllMechanisms)
        if (mechanism_name(m) == low) return m;
    throw std::invalid_argument("unknown mechanism '" + std::string(s) + "'");
}

DecodeOutcome run_adm_trial(const TrialRealization& trial, const PowerAllocation& pw,
                            const Thresholds& th)
{
    const SinrSet s = sinr_set(trial, pw);
    const Order order{trial.phi_cu >= trial.phi_eu ? UavBranch::CFirst : UavBranch::EFirst,
                      trial.phi_cf >= trial.phi_uf ? FcBranch::CFirst : FcBranch::UFirst};
    return decode(s, th, s.fc_xc1 > th.tau_c, order);
}

DecodeOutcome run_nadm_trial(const TrialRealization& trial, const PowerAllocation& pw,
                             const Thresholds& th, Mechanism order)
{
    Order o{};
    switch (order) {
    case Mechanism::D1: o = {UavBranch::CFirst, FcBranch::CFirst}; break;
    case Mechanism::D2: o = {UavBranch::EFirst, FcBranch::CFirst}; break;
    case Mechanism::D3: o = {UavBranch::CFirst, FcBranch::UFirst}; break;
    case Mechanism::D4: o = {UavBranch::EFirst, FcBranch::UFirst}; break;
    case Mechanism::ADM: throw std::invalid_argument("run_nadm_trial: ADM is not a fixed order");
    }
    const SinrSet s = sinr_set(trial, pw);
    return decode(s, th, s.fc_xc1 > th.tau_c, o);
}

DecodeOutcome run_trial(const TrialRealization& trial, const PowerAllocation& pw,
                        const Thresholds& th, Mechanism mech)
{
    if (mech == Mechanism::ADM) return run_adm_trial(trial, pw, th);
    return run_nadm_trial(trial, pw, th, mech);
}

} // namespace uavnoma
