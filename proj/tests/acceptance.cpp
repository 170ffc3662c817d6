// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "random_scenarios.hpp"
#include "uavnoma/analytics.hpp"
#include "uavnoma/geometry.hpp"
#include "uavnoma/montecarlo.hpp"
#include "uavnoma/optimizer.hpp"

using namespace uavnoma;

namespace {

// tolerances
constexpr double kAgreementSigmas = 3.0;
constexpr std::uint64_t kAgreementTrials = 1'000'000;
constexpr double kAgreementSeconds = 60.0;
constexpr int kRandomScenarios = 10;
constexpr int kIntegralSets = 20;
constexpr double kIntegralAbsTol = 1e-6;
constexpr double kDepthTol = 1e-10;
constexpr double kMseBound = 1e-4;
constexpr double kConvergedShare = 0.95;
constexpr int kOptimizerLocations = 100;
constexpr int kMobilitySteps = 300;
constexpr std::uint64_t kMobilityTrials = 100'000;
constexpr double kNormWeightTol = 1e-9;
constexpr double kNormPdfTol = 1e-6;
constexpr double kKsBound = 0.002;
constexpr std::uint64_t kKsDraws = 1'000'000;

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Verdict
{
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Verdict& v)
{
    std::printf("[%s] criterion %d: %s (%s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
    failures += !v.pass;
}

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// ---------------------------------------------------------------------------

Verdict agreement()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Scenario> cases = {Scenario{}};
    std::mt19937_64 rng(2024);
    for (int i = 0; i < kRandomScenarios; ++i) cases.push_back(testing_support::random_scenario(rng));

    const std::array<Mechanism, 1> adm = {Mechanism::ADM};
    double worst = 0.0;
    int bad = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Scenario& s = cases[i];
        const PowerAllocation pw = powers_from(s);
        const OutageSet an = outage_set(s, pw);
        const MechanismReport mc =
            estimate(s, pw, adm, MCConfig{kAgreementTrials, 500 + i, workers(), 0.997}).at(Mechanism::ADM);
        const double n = double(kAgreementTrials);
        for (auto [p, ph] : {std::pair{an.op_e, mc.op_e.value}, std::pair{an.op_c1, mc.op_c1.value},
                             std::pair{an.op_c2, mc.op_c2.value}}) {
            const double sigma = std::sqrt(std::max(p * (1 - p), 1.0 / n) / n);
            const double z = std::abs(p - ph) / sigma;
            worst = std::max(worst, z);
            bad += z > kAgreementSigmas;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Verdict v;
    v.pass = bad == 0 && secs < kAgreementSeconds;
    v.detail = std::to_string(cases.size() * 3) + " comparisons, " + std::to_string(bad)
        + " beyond 3 sigma, worst " + fmt("%.2f", worst) + " sigma, " + fmt("%.1f s", secs);
    return v;
}

Verdict integrals()
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double e0 = 0, e1 = 0, e2 = 0, en = 0;
    double lo2 = 1, hi2 = 0;
    for (int i = 0; i < kIntegralSets; ++i) {
        const MGDist d0 = oracle::random_mg(rng), d1 = oracle::random_mg(rng),
                     d2 = oracle::random_mg(rng);
        const double w = 2 * u(rng);
        const ExceedanceSpec s1{{2 * u(rng)}, {u(rng)}, w};
        const ExceedanceSpec s2{{2 * u(rng), 2 * u(rng)}, {u(rng), u(rng)}, w};

        const double q0 = oracle::integrate_tail([&](double x) { return oracle::pdf(d0, x); }, w);
        const double q1 = oracle::I1(d0, d1, s1.p[0], s1.q[0], w);
        const double q2 = oracle::I2(d0, d1, d2, s2.p[0], s2.q[0], s2.p[1], s2.q[1], w);
        const double c0 = exceed_I0(d0, w), c1 = exceed_I1(d0, d1, s1), c2 = exceed_I2(d0, d1, d2, s2);
        e0 = std::max(e0, std::abs(c0 - q0));
        e1 = std::max(e1, std::abs(c1 - q1));
        e2 = std::max(e2, std::abs(c2 - q2));
        lo2 = std::min(lo2, q2);
        hi2 = std::max(hi2, q2);

        const std::vector<MGDist> one = {d0}, two = {d0, d1}, three = {d0, d1, d2};
        en = std::max({en, std::abs(exceed_In(one, {{}, {}, w}) - c0),
                       std::abs(exceed_In(two, s1) - c1), std::abs(exceed_In(three, s2) - c2)});
    }
    Verdict v;
    v.pass = std::max({e0, e1, e2}) <= kIntegralAbsTol && en <= kDepthTol;
    v.detail = std::to_string(kIntegralSets) + " sets, max |I0-q| " + fmt("%.1e", e0) + ", |I1-q| "
        + fmt("%.1e", e1) + ", |I2-q| " + fmt("%.1e", e2) + " over I2 in [" + fmt("%.2g", lo2) + fmt(", %.2g]", hi2)
        + ", |In-Ik| " + fmt("%.1e", en);
    return v;
}

Verdict anchors()
{
    Scenario s;
    s.rate_c = 2.0;
    s.rate_e = 0.1;
    s.p_max1_dbm = s.p_max2_dbm = 35.0;
    const OutageSet o = outage_set(s, powers_from(s));
    const double le = std::log10(o.op_e), l1 = std::log10(o.op_c1), l2 = std::log10(o.op_c2);
    const bool bands = le >= -3.3 && le <= -2.3 && l1 >= -2.3 && l1 <= -1.3 && l2 >= -1.0 && l2 <= 0.0;

    bool ordered = true;
    for (int p = 10; p <= 40; ++p) {
        s.p_max1_dbm = s.p_max2_dbm = p;
        const OutageSet q = outage_set(s, powers_from(s));
        ordered = ordered && q.op_e >= q.op_c2 && q.op_c2 >= q.op_c1;
    }
    Verdict v;
    v.pass = bands && ordered;
    v.detail = "log10 OP_E " + fmt("%.2f", le) + " in [-3.3,-2.3], log10 OP1 " + fmt("%.2f", l1)
        + " in [-2.3,-1.3], log10 OP2 " + fmt("%.2f", l2) + " in [-1,0], ordering "
        + (ordered ? "holds" : "violated") + " over 10-40 dBm";
    return v;
}

Verdict throughput_bound()
{
    const std::array<Mechanism, 1> adm = {Mechanism::ADM};
    bool ok = true;
    double slack = INFINITY;
    for (int i = 0; i <= 10; ++i) {
        Scenario s;
        s.xi_u = s.xi_f = i / 10.0;
        const PowerAllocation pw = powers_from(s);
        const OutageSet o = outage_set(s, pw);
        const double bound = s.rate_c / 2 * (1 - o.op_c1);
        const double r = throughput(o, s.rate_c, s.rate_e);
        ok = ok && r >= bound;
        slack = std::min(slack, r - bound);

        const MechanismReport mc =
            estimate(s, pw, adm, MCConfig{200'000, 900 + std::uint64_t(i), workers(), 0.997})
                .at(Mechanism::ADM);
        ok = ok && mc.throughput.value + mc.throughput.half_width >= s.rate_c / 2 * (1 - mc.op_c1.value);
    }
    Verdict v;
    v.pass = ok;
    v.detail = "11 residual levels, smallest analytic slack " + fmt("%.3g", slack);
    return v;
}

Verdict optimizer_gap()
{
    const Scenario base;
    const auto path = rwp_trace(base.topology.pos_u, base.topology.mobility_radius,
                                kOptimizerLocations, 31);
    std::vector<Scenario> locs;
    for (const auto& p : path) locs.push_back(with_uav_at(base, p));
    const TrajectoryComparison c = trajectory_mse(locs, NgdConfig{}, 101);
    int conv = 0;
    for (const auto& r : c.ngd) conv += r.converged;
    const double share = double(conv) / double(c.ngd.size());
    Verdict v;
    v.pass = c.mse <= kMseBound && share >= kConvergedShare;
    v.detail = "MSE " + fmt("%.3e", c.mse) + ", NGD converged at " + std::to_string(conv) + "/"
        + std::to_string(c.ngd.size());
    return v;
}

double stddev(const std::vector<double>& x)
{
    double m = 0;
    for (double v : x) m += v;
    m /= double(x.size());
    double s = 0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / double(x.size() - 1));
}

Verdict stability()
{
    const Scenario base;
    const auto path = rwp_trace(base.topology.pos_u, base.topology.mobility_radius, kMobilitySteps, 7);
    std::vector<std::vector<double>> r(kAllMechanisms.size());
    for (int k = 0; k < kMobilitySteps; ++k) {
        const Scenario s = with_uav_at(base, path[std::size_t(k)]);
        const OptResult opt = ngd_optimize(s, NgdConfig{});
        const OutageReport rep = estimate(s, powers_from(s, opt.theta1, opt.theta2), kAllMechanisms,
                                          MCConfig{kMobilityTrials, 3000 + std::uint64_t(k), workers(), 0.997});
        for (std::size_t m = 0; m < kAllMechanisms.size(); ++m)
            r[m].push_back(rep.at(kAllMechanisms[m]).throughput.value);
    }
    Verdict v;
    const double sa = stddev(r[0]);
    v.detail = "std ADM " + fmt("%.4f", sa);
    for (std::size_t m = 1; m < r.size(); ++m) {
        const double sd = stddev(r[m]);
        v.pass = v.pass && sa < sd;
        v.detail += std::string(", ") + std::string(mechanism_name(kAllMechanisms[m])) + " "
            + fmt("%.4f", sd);
    }
    return v;
}

Verdict properties()
{
    std::vector<std::string> broken;
    const Scenario s;
    const LinkModel lm = build_link_model(s);

    // mixture normalization
    for (const MGDist* d : {&lm.phi_cf, &lm.phi_cu, &lm.phi_eu, &lm.phi_uf}) {
        const double tot = oracle::integrate_tail([&](double x) { return mg_pdf(*d, x); }, 0.0);
        if (std::abs(d->weight.sum() - 1) > kNormWeightTol || std::abs(tot - 1) > kNormPdfTol)
            broken.push_back("normalization");
    }

    // samplers against the mixture CDF
    {
        std::vector<double> g(kKsDraws), a(kKsDraws);
        for (std::uint64_t i = 0; i < kKsDraws; ++i) {
            const TrialRealization t = sample_trial(lm, 41, i);
            g[i] = t.phi_cf;
            a[i] = t.phi_cu;
        }
        const double kg = oracle::ks_distance(g, [&](double x) { return mg_cdf(lm.phi_cf, x); });
        const double ka = oracle::ks_distance(a, [&](double x) { return mg_cdf(lm.phi_cu, x); });
        if (kg >= kKsBound || ka >= kKsBound) broken.push_back("KS");
    }

    // branch choice under common positive scaling
    {
        const PowerAllocation pw = powers_from(s);
        const Thresholds th = derive_thresholds(s, pw);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> c(0.01, 100.0);
        for (std::uint64_t i = 0; i < 20000; ++i) {
            TrialRealization t = sample_trial(lm, 43, i);
            const bool uc = t.phi_cu >= t.phi_eu, fc = t.phi_cf >= t.phi_uf;
            const DecodeOutcome a = run_adm_trial(t, pw, th);
            const double k1 = c(rng), k2 = c(rng);
            t.phi_cu *= k1;
            t.phi_eu *= k1;
            t.phi_cf *= k2;
            t.phi_uf *= k2;
            const DecodeOutcome b = run_adm_trial(t, pw, th);
            const bool same_u = (a.uav_branch == UavBranch::CFirst) == uc && a.uav_branch == b.uav_branch;
            const bool same_f = b.fc_branch == FcBranch::None
                || (b.fc_branch == FcBranch::CFirst) == fc;
            if (!same_u || !same_f) {
                broken.push_back("scale invariance");
                break;
            }
        }
    }

    // determinism across worker counts
    {
        MCConfig cfg{100'001, 8, 1, 0.997};
        const auto one = estimate(s, powers_from(s), kAllMechanisms, cfg);
        cfg.workers = 3;
        const auto three = estimate(s, powers_from(s), kAllMechanisms, cfg);
        for (std::size_t k = 0; k < one.mechanisms.size(); ++k)
            if (one.mechanisms[k].patterns != three.mechanisms[k].patterns) {
                broken.push_back("determinism");
                break;
            }
    }

    // probability sums
    {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 50; ++i) {
            const Scenario r = testing_support::random_scenario(rng);
            const OutageSet o = outage_set(r, powers_from(r));
            const auto& p = o.rho;
            if (p[0] + p[1] > 1 + 1e-12 || p[2] + p[3] > 1 + 1e-12 || p[4] + p[5] > 1 + 1e-12
                || *std::min_element(p.begin(), p.end()) < 0) {
                broken.push_back("probability sums");
                break;
            }
        }
    }

    Verdict v;
    v.pass = broken.empty();
    if (v.pass) {
        v.detail = "normalization, KS, scale invariance, determinism, probability sums";
    } else {
        for (const auto& b : broken) v.detail += (v.detail.empty() ? "" : ", ") + b;
        v.detail = "broken: " + v.detail;
    }
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> all = {
        {"closed forms agree with Monte Carlo", agreement},
        {"exceedance integrals agree with quadrature", integrals},
        {"outage anchors at 35 dBm and outage ordering", anchors},
        {"throughput lower bound over residual levels", throughput_bound},
        {"gradient ascent matches grid search along a trace", optimizer_gap},
        {"adaptive decoding has the steadiest throughput", stability},
        {"property suites", properties},
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        Verdict v;
        try {
            v = all[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        report(int(i) + 1, all[i].first, v);
    }
    return failures == 0 ? 0 : 1;
}
