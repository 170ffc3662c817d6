#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "uavnoma/analytics.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

struct NgdConfig
{
    double step = 0.05;          // ascent step size
    double fd_step = 1e-4;       // finite-difference step
    double tolerance = 0.0025;   // gradient-norm stopping threshold
    int max_iterations = 10000;
    double theta1_init = 0.5;
    double theta2_init = 0.5;

    void validate() const;
};

struct OptResult
{
    double theta1 = 0, theta2 = 0;
    double r_star = 0;
    int iterations = 0;
    bool converged = false;
    double grad_norm = 0;
    std::uint64_t evaluations = 0;
};

using Objective = std::function<double(double theta1, double theta2)>;

/// Closed-form throughput over (theta1, theta2) with the link model cached.
class ThroughputObjective
{
public:
    explicit ThroughputObjective(const Scenario& s);

    double operator()(double theta1, double theta2) const;
    OutageSet outage(double theta1, double theta2) const;

    Phase1Terms phase1(double theta1) const;
    Phase2Terms phase2(double theta2) const;
    double combine(const Phase1Terms& p1, const Phase2Terms& p2) const;

    const LinkModel& links() const { return lm_; }

private:
    Scenario s_;
    LinkModel lm_;
};

/// Finite-difference gradient ascent projected onto the unit square.
/// Forward differences are used except where theta + fd_step leaves the
/// square, which switches that coordinate to a backward difference. The
/// stopping test uses the projected gradient, which equals the plain
/// gradient at interior points. Throws std::runtime_error on a non-finite
/// objective value.
OptResult ngd_optimize(const Objective& f, const NgdConfig& cfg);
OptResult ngd_optimize(const Scenario& s, const NgdConfig& cfg);

/// Exhaustive search over the lattice {i/(n-1)}^2. Ties keep the
/// lexicographically smallest (theta1, theta2).
OptResult brute_force_search(const Objective& f, int grid_n);
/// Same lattice, evaluated through the per-phase decomposition of the
/// closed form; `evaluations` still counts grid_n^2 objective values.
OptResult brute_force_search(const Scenario& s, int grid_n);

double mse(std::span<const double> a, std::span<const double> b);

struct TrajectoryComparison
{
    std::vector<OptResult> ngd;
    std::vector<OptResult> bfs;
    double mse = 0;
};

/// Run both optimizers at every scenario and compare the optimal throughputs.
TrajectoryComparison trajectory_mse(std::span<const Scenario> path, const NgdConfig& cfg,
                                    int grid_n);

} // namespace uavnoma
