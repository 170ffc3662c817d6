#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "uavnoma/optimizer.hpp"

using namespace uavnoma;

namespace {

double bowl(double a, double b) { return -(a - 0.3) * (a - 0.3) - (b - 0.7) * (b - 0.7); }

} // namespace

TEST_CASE("brute force lattice")
{
    const OptResult two = brute_force_search([](double a, double b) { return a - b; }, 2);
    CHECK(two.evaluations == 4);
    CHECK(two.theta1 == 1.0);
    CHECK(two.theta2 == 0.0);

    const OptResult r = brute_force_search(bowl, 101);
    CHECK(r.evaluations == 10201);
    CHECK(r.theta1 == doctest::Approx(0.3));
    CHECK(r.theta2 == doctest::Approx(0.7));

    // ties keep the first lattice point
    const OptResult flat = brute_force_search([](double, double) { return 1.0; }, 5);
    CHECK(flat.theta1 == 0.0);
    CHECK(flat.theta2 == 0.0);

    CHECK_THROWS_AS(brute_force_search(bowl, 1), std::invalid_argument);
}

TEST_CASE("separable search matches the plain search")
{
    Scenario s;
    const ThroughputObjective obj(s);
    const OptResult plain = brute_force_search([&](double a, double b) { return obj(a, b); }, 41);
    const OptResult fast = brute_force_search(s, 41);
    CHECK(fast.evaluations == 41 * 41);
    CHECK(fast.theta1 == plain.theta1);
    CHECK(fast.theta2 == plain.theta2);
    CHECK(fast.r_star == doctest::Approx(plain.r_star).epsilon(1e-13));

    // the coarse lattice is a subset of the fine one
    CHECK(brute_force_search(s, 51).r_star <= brute_force_search(s, 101).r_star);
}

TEST_CASE("objective decomposition")
{
    Scenario s;
    const ThroughputObjective obj(s);
    for (double a : {0.0, 0.25, 0.8, 1.0})
        for (double b : {0.0, 0.4, 1.0}) {
            CHECK(obj.combine(obj.phase1(a), obj.phase2(b)) == doctest::Approx(obj(a, b)).epsilon(1e-14));
            s.theta1 = a;
            s.theta2 = b;
            CHECK(obj(a, b) == doctest::Approx(throughput(s, powers_from(s))).epsilon(1e-14));
        }
}

TEST_CASE("gradient ascent on a concave bowl")
{
    NgdConfig cfg;
    cfg.step = 0.4;
    const OptResult r = ngd_optimize(bowl, cfg);
    CHECK(r.converged);
    CHECK(r.theta1 == doctest::Approx(0.3).epsilon(0.005));
    CHECK(r.theta2 == doctest::Approx(0.7).epsilon(0.005));
    CHECK(r.evaluations == 3 * static_cast<std::uint64_t>(r.iterations + 1));

    // stationary start stops at once
    cfg.theta1_init = 0.3;
    cfg.theta2_init = 0.7;
    const OptResult s = ngd_optimize(bowl, cfg);
    CHECK(s.iterations == 0);
    CHECK(s.converged);
    CHECK(s.evaluations == 3);
}

TEST_CASE("gradient ascent respects the box")
{
    NgdConfig cfg;
    const OptResult r = ngd_optimize([](double a, double b) { return a + 2 * b; }, cfg);
    CHECK(r.converged);
    CHECK(r.theta1 == 1.0);
    CHECK(r.theta2 == 1.0);
    CHECK(r.grad_norm == 0.0);

    const OptResult low = ngd_optimize([](double a, double b) { return -a - b; }, cfg);
    CHECK(low.theta1 == 0.0);
    CHECK(low.theta2 == 0.0);

    cfg.max_iterations = 3;
    cfg.step = 1e-6;
    const OptResult capped = ngd_optimize([](double a, double b) { return a + b; }, cfg);
    CHECK_FALSE(capped.converged);
    CHECK(capped.iterations == 3);

    CHECK_THROWS_AS(ngd_optimize([](double, double) { return std::numeric_limits<double>::quiet_NaN(); },
                                 NgdConfig{}),
                    std::runtime_error);
    NgdConfig bad;
    bad.step = -1;
    CHECK_THROWS_AS(ngd_optimize(bowl, bad), std::invalid_argument);
}

TEST_CASE("gradient ascent against the lattice at the reference topology")
{
    Scenario s;
    const OptResult n = ngd_optimize(s, NgdConfig{});
    const OptResult b = brute_force_search(s, 101);
    CHECK(n.converged);
    CHECK(n.r_star <= b.r_star + 1e-3);
    CHECK(n.r_star >= b.r_star - 5e-3);
}

TEST_CASE("scenario ascent matches ascent on the plain objective")
{
    const Scenario s = with_uav_at(Scenario{}, Position3D(-4.0, -9.0, 6.77));
    const ThroughputObjective obj(s);
    NgdConfig cfg;
    cfg.max_iterations = 500;
    const OptResult a = ngd_optimize(s, cfg);
    const OptResult b = ngd_optimize([&](double x, double y) { return obj(x, y); }, cfg);
    CHECK(a.theta1 == b.theta1);
    CHECK(a.theta2 == b.theta2);
    CHECK(a.r_star == b.r_star);
    CHECK(a.iterations == b.iterations);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("mean squared error")
{
    const std::vector<double> a = {1, 2, 3}, b = {1, 2, 5};
    CHECK(mse(a, b) == doctest::Approx(4.0 / 3.0));
    CHECK(mse(a, a) == 0.0);
    const std::vector<double> c = {1};
    CHECK_THROWS_AS(mse(a, c), std::invalid_argument);
}
