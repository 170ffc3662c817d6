#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uavnoma/analytics.hpp"
#include "uavnoma/montecarlo.hpp"

using namespace uavnoma;

TEST_CASE("normal quantile")
{
    CHECK(z_for_confidence(0.95) == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(z_for_confidence(0.997) == doctest::Approx(2.967738).epsilon(1e-6));
}

TEST_CASE("counter streams")
{
    CounterRng a(1, 7), b(1, 7), c(1, 8), d(2, 7);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
}

TEST_CASE("worker count does not change the result")
{
    Scenario s;
    const PowerAllocation pw = powers_from(s);
    MCConfig cfg;
    cfg.trials = 30001;
    cfg.seed = 9;
    const OutageReport one = estimate(s, pw, kAllMechanisms, cfg);
    cfg.workers = 4;
    const OutageReport four = estimate(s, pw, kAllMechanisms, cfg);
    REQUIRE(one.mechanisms.size() == four.mechanisms.size());
    for (std::size_t k = 0; k < one.mechanisms.size(); ++k) {
        CHECK(one.mechanisms[k].patterns == four.mechanisms[k].patterns);
        CHECK(one.mechanisms[k].throughput.value == four.mechanisms[k].throughput.value);
    }
    cfg.seed = 10;
    CHECK(estimate(s, pw, kAllMechanisms, cfg).at(Mechanism::ADM).patterns
          != one.at(Mechanism::ADM).patterns);
}

TEST_CASE("common random numbers")
{
    Scenario s;
    MCConfig cfg;
    cfg.trials = 50000;
    const OutageReport r = estimate(s, powers_from(s), kAllMechanisms, cfg);
    const MechanismReport& adm = r.at(Mechanism::ADM);
    for (const auto& m : r.mechanisms) {
        std::uint64_t total = 0;
        for (auto c : m.patterns) total += c;
        CHECK(total == cfg.trials);
        // phase-1 x_C at F does not depend on the decoding order
        CHECK(m.op_c1.value == adm.op_c1.value);
    }
    CHECK_THROWS_AS(OutageReport{}.at(Mechanism::D2), std::out_of_range);
}

TEST_CASE("certain outage")
{
    Scenario s;
    s.rate_e = 40.0;
    MCConfig cfg;
    cfg.trials = 2000;
    const OutageReport r = estimate(s, powers_from(s), kAllMechanisms, cfg);
    for (const auto& m : r.mechanisms) {
        CHECK(m.op_e.value == 1.0);
        CHECK(m.op_e.half_width == 0.0);
    }
}

TEST_CASE("interval coverage")
{
    Scenario s;
    const PowerAllocation pw = powers_from(s);
    const double truth = outage_set(s, pw).op_e;
    MCConfig cfg;
    cfg.trials = 2000;
    cfg.confidence = 0.9;
    const std::array<Mechanism, 1> adm = {Mechanism::ADM};
    const int reps = 300;
    int covered = 0;
    for (int i = 0; i < reps; ++i) {
        cfg.seed = 1000 + static_cast<std::uint64_t>(i);
        const Estimate e = estimate(s, pw, adm, cfg).at(Mechanism::ADM).op_e;
        covered += std::abs(e.value - truth) <= e.half_width;
    }
    // binomial(300, 0.9) has sd 0.017
    CHECK(covered / double(reps) == doctest::Approx(0.9).epsilon(0.06));
}

TEST_CASE("input checks")
{
    Scenario s;
    MCConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(estimate(s, powers_from(s), kAllMechanisms, cfg), std::invalid_argument);
    cfg.trials = 10;
    cfg.confidence = 1.0;
    CHECK_THROWS_AS(estimate(s, powers_from(s), kAllMechanisms, cfg), std::invalid_argument);
    cfg.confidence = 0.9;
    CHECK_THROWS_AS(estimate(s, powers_from(s), std::span<const Mechanism>{}, cfg),
                    std::invalid_argument);
}
