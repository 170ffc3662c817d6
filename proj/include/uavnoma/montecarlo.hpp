#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "uavnoma/channel.hpp"
#include "uavnoma/protocol.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// SplitMix64 stream keyed by (seed, trial index). Every trial owns an
/// independent stream, so results do not depend on how trials are scheduled.
class CounterRng
{
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t index)
        : state_(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)))
    {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Draw one realization of all channel and residual powers.
template <class URBG>
TrialRealization sample_trial(const LinkModel& lm, URBG& rng)
{
    TrialRealization t;
    t.phi_cf = sample_g2g_power(lm.phi_cf, rng);
    t.phi_cu = sample_a2g_power(lm.cu, lm.d_cu, rng);
    t.phi_eu = sample_a2g_power(lm.eu, lm.d_eu, rng);
    t.phi_uf = sample_a2g_power(lm.uf, lm.d_uf, rng);
    t.res_cu = sample_residual_power(lm.rp_cu, rng);
    t.res_cf = sample_residual_power(lm.rp_cf, rng);
    t.res_uf = sample_residual_power(lm.rp_uf, rng);
    t.noise_u = lm.noise;
    t.noise_f = lm.noise;
    return t;
}

inline TrialRealization sample_trial(const LinkModel& lm, std::uint64_t seed, std::uint64_t index)
{
    CounterRng rng(seed, index);
    return sample_trial(lm, rng);
}

struct MCConfig
{
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double confidence = 0.997;

    void validate() const;
};

struct Estimate
{
    double value = 0;
    double half_width = 0;   // z * standard error
};

struct MechanismReport
{
    Mechanism mechanism = Mechanism::ADM;
    Estimate op_e, op_c1, op_c2, throughput;
    /// Trial counts per success pattern; bit 0 = phase-1 x_C, bit 1 = x_E,
    /// bit 2 = phase-2 x_C.
    std::array<std::uint64_t, 8> patterns{};
};

struct OutageReport
{
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double z = 0;
    std::vector<MechanismReport> mechanisms;

    /// Throws std::out_of_range if `m` was not simulated.
    const MechanismReport& at(Mechanism m) const;
};

/// Two-sided normal quantile for the given confidence level.
double z_for_confidence(double confidence);

/// Simulate all requested mechanisms on common channel realizations.
OutageReport estimate(const Scenario& s, const PowerAllocation& pw,
                      std::span<const Mechanism> mechanisms, const MCConfig& cfg);
OutageReport estimate(const LinkModel& lm, const Thresholds& th, const PowerAllocation& pw,
                      std::span<const Mechanism> mechanisms, const MCConfig& cfg);

} // namespace uavnoma
