#include "uavnoma/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/normal.hpp>

namespace uavnoma {

namespace {

using Counts = std::vector<std::array<std::uint64_t, 8>>;

void run_range(const LinkModel& lm, const Thresholds& th, const PowerAllocation& pw,
               std::span<const Mechanism> mechs, std::uint64_t seed,
               std::uint64_t begin, std::uint64_t end, Counts& counts)
{
    for (std::uint64_t i = begin; i < end; ++i) {
        const TrialRealization t = sample_trial(lm, seed, i);
        for (std::size_t k = 0; k < mechs.size(); ++k) {
            const DecodeOutcome o = run_trial(t, pw, th, mechs[k]);
            const unsigned pat = (o.xc1_ok ? 1u : 0u) | (o.xe_ok ? 2u : 0u) | (o.xc2_ok ? 4u : 0u);
            ++counts[k][pat];
        }
    }
}

Estimate proportion(std::uint64_t hits, std::uint64_t n, double z)
{
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, z * std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

} // namespace

void MCConfig::validate() const
{
    if (trials == 0) throw std::invalid_argument("monte carlo: trials must be >= 1");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("monte carlo: confidence must lie in (0,1)");
}

const MechanismReport& OutageReport::at(Mechanism m) const
{
    for (const auto& r : mechanisms)
        if (r.mechanism == m) return r;
    throw std::out_of_range("mechanism not in report");
}

double z_for_confidence(double confidence)
{
    boost::math::normal_distribution<double> n;
    return boost::math::quantile(n, 0.5 + confidence / 2.0);
}

OutageReport estimate(const Scenario& s, const PowerAllocation& pw,
                      std::span<const Mechanism> mechanisms, const MCConfig& cfg)
{
    return estimate(build_link_model(s), derive_thresholds(s, pw), pw, mechanisms, cfg);
}

OutageReport estimate(const LinkModel& lm, const Thresholds& th, const PowerAllocation& pw,
                      std::span<const Mechanism> mechanisms, const MCConfig& cfg)
{
    cfg.validate();
    if (mechanisms.empty()) throw std::invalid_argument("monte carlo: no mechanisms requested");

    const unsigned workers = static_cast<unsigned>(
        std::clamp<std::uint64_t>(cfg.workers, 1, cfg.trials));
    std::vector<Counts> partial(workers, Counts(mechanisms.size()));
    const std::uint64_t chunk = cfg.trials / workers;
    const std::uint64_t extra = cfg.trials % workers;

    std::vector<std::thread> pool;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        if (w + 1 == workers) {
            run_range(lm, th, pw, mechanisms, cfg.seed, begin, end, partial[w]);
        } else {
            pool.emplace_back(run_range, std::cref(lm), std::cref(th), std::cref(pw), mechanisms,
                              cfg.seed, begin, end, std::ref(partial[w]));
        }
        begin = end;
    }
    for (auto& t : pool) t.join();

    OutageReport rep;
    rep.trials = cfg.trials;
    rep.seed = cfg.seed;
    rep.z = z_for_confidence(cfg.confidence);
    const double n = static_cast<double>(cfg.trials);
    const double rc = th.rate_c / 2.0, re = th.rate_e / 2.0;

    for (std::size_t k = 0; k < mechanisms.size(); ++k) {
        MechanismReport mr;
        mr.mechanism = mechanisms[k];
        for (const auto& c : partial)
            for (int p = 0; p < 8; ++p) mr.patterns[p] += c[k][p];

        std::uint64_t fail1 = 0, faile = 0, fail2 = 0;
        double sum = 0.0, sumsq = 0.0;
        for (unsigned p = 0; p < 8; ++p) {
            const std::uint64_t c = mr.patterns[p];
            if (!(p & 1u)) fail1 += c;
            if (!(p & 2u)) faile += c;
            if (!(p & 4u)) fail2 += c;
            const double y = rc * (p & 1u) + re * ((p >> 1) & 1u) + rc * ((p >> 2) & 1u);
            sum += static_cast<double>(c) * y;
            sumsq += static_cast<double>(c) * y * y;
        }
        mr.op_c1 = proportion(fail1, cfg.trials, rep.z);
        mr.op_e = proportion(faile, cfg.trials, rep.z);
        mr.op_c2 = proportion(fail2, cfg.trials, rep.z);
        const double mean = sum / n;
        const double var = std::max(0.0, sumsq / n - mean * mean);
        mr.throughput = {mean, rep.z * std::sqrt(var / n)};
        rep.mechanisms.push_back(mr);
    }
    return rep;
}

} // namespace uavnoma
