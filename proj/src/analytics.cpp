#include "uavnoma/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uavnoma {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Pr[X0 > p0 X1 + q0, X1 > p1 X2 + q1, X2 > w2]
double chain2(const MGDist& d0, const MGDist& d1, const std::optional<MGDist>& d2,
              double p0, double q0, double p1, double q1, double w2)
{
    if (std::isinf(w2)) return 0.0;
    if (!d2) {
        if (w2 > 0.0) return 0.0;
        return exceed_I1(d0, d1, {{p0}, {q0}, q1});
    }
    return exceed_I2(d0, d1, *d2, {{p0, p1}, {q0, q1}, w2});
}

} // namespace

double varrho_sic(const MGDist& d0, const MGDist& d1, const std::optional<MGDist>& d2,
                  double a1, double alpha1, double a2, double alpha2)
{
    if (std::isinf(a1) || std::isinf(a2)) return 0.0;
    auto J = [&](double p0, double q0, double p1, double q1, double w) {
        return chain2(d0, d1, d2, p0, q0, p1, q1, w);
    };
    if (alpha1 >= 1.0) return clamp01(J(alpha1, a1, alpha2, a2, 0.0));

    const double A1 = a1 / (1.0 - alpha1);
    if (A1 <= a2) return clamp01(J(1.0, 0.0, alpha2, a2, 0.0));

    const double calA = alpha2 > 0.0 ? (A1 - a2) / alpha2
                                     : std::numeric_limits<double>::infinity();
    const double v = J(alpha1, a1, alpha2, a2, 0.0) - J(alpha1, a1, alpha2, a2, calA)
        - J(alpha1, a1, 0.0, A1, 0.0) + J(alpha1, a1, 0.0, A1, calA)
        + J(1.0, 0.0, alpha2, a2, calA)
        - J(1.0, 0.0, 0.0, A1, calA) + J(1.0, 0.0, 0.0, A1, 0.0);
    return clamp01(v);
}

double varrho_direct(const MGDist& d0, const MGDist& d1, double a, double alpha)
{
    if (std::isinf(a)) return 0.0;
    auto I = [&](double p, double q, double w) { return exceed_I1(d0, d1, {{p}, {q}, w}); };
    if (alpha >= 1.0) return clamp01(I(alpha, a, 0.0));
    const double A = a / (1.0 - alpha);
    return clamp01(I(alpha, a, 0.0) - I(alpha, a, A) + I(1.0, 0.0, A));
}

double varrho1(const LinkModel& lm, const Thresholds& th)
{
    return varrho_sic(lm.phi_cu, lm.phi_eu, lm.res_cu, th.a1, th.alpha1, th.a2, th.alpha2);
}

double varrho2(const LinkModel& lm, const Thresholds& th)
{
    return varrho_direct(lm.phi_eu, lm.phi_cu, th.a2, th.alpha2);
}

std::array<double, 2> varrho3_4(const LinkModel& lm, const Thresholds& th)
{
    return {varrho_sic(lm.phi_cf, lm.phi_uf, lm.res_cf, th.b1, th.beta1, th.b2, th.beta2),
            varrho_direct(lm.phi_uf, lm.phi_cf, th.b2, th.beta2)};
}

std::array<double, 2> varrho5_6(const LinkModel& lm, const Thresholds& th)
{
    return {varrho_direct(lm.phi_cf, lm.phi_uf, th.b1, th.beta1),
            varrho_sic(lm.phi_uf, lm.phi_cf, lm.res_uf, th.b2, th.beta2, th.b1, th.beta1)};
}

double varrho7(const LinkModel& lm, const Thresholds& th)
{
    return mg_cdf(lm.phi_cf, th.b1);
}

double varrho8(const LinkModel& lm, const Thresholds& th)
{
    return mg_cdf(lm.phi_cf, th.a1);
}

Phase1Terms phase1_terms(const LinkModel& lm, const Thresholds& th)
{
    return {varrho1(lm, th), varrho2(lm, th), varrho8(lm, th)};
}

Phase2Terms phase2_terms(const LinkModel& lm, const Thresholds& th)
{
    const auto r34 = varrho3_4(lm, th);
    const auto r56 = varrho5_6(lm, th);
    return {r34[0], r34[1], r56[0], r56[1], varrho7(lm, th)};
}

OutageSet combine(const Phase1Terms& p1, const Phase2Terms& p2)
{
    OutageSet o;
    o.rho = {p1.rho1, p1.rho2, p2.rho3, p2.rho4, p2.rho5, p2.rho6, p2.rho7, p1.rho8};
    const double uav_ok = clamp01(p1.rho1 + p1.rho2);
    const double fc_xe_ok = clamp01(p2.rho3 + p2.rho4);
    const double fc_xc_ok = clamp01(p2.rho5 + p2.rho6);
    o.op_e = clamp01(1.0 - uav_ok * fc_xe_ok);
    o.op_c2 = clamp01(uav_ok * (1.0 - fc_xc_ok) + (1.0 - uav_ok) * p2.rho7);
    o.op_c1 = clamp01(p1.rho8);
    return o;
}

OutageSet outage_set(const LinkModel& lm, const Thresholds& th)
{
    return combine(phase1_terms(lm, th), phase2_terms(lm, th));
}

OutageSet outage_set(const Scenario& s, const PowerAllocation& pw, double tau_scale)
{
    return outage_set(build_link_model(s), derive_thresholds(s, pw, tau_scale));
}

double throughput(const OutageSet& op, double rate_c, double rate_e)
{
    return rate_c / 2.0 * (1.0 - op.op_c1) + rate_e / 2.0 * (1.0 - op.op_e)
        + rate_c / 2.0 * (1.0 - op.op_c2);
}

double throughput(const Scenario& s, const PowerAllocation& pw)
{
    return throughput(outage_set(s, pw), s.rate_c, s.rate_e);
}

} // namespace uavnoma
