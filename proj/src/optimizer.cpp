#include "uavnoma/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "uavnoma/protocol.hpp"

namespace uavnoma {

namespace {

double lattice(int i, int n)
{
    return static_cast<double>(i) / static_cast<double>(n - 1);
}

template <class T>
struct Memo
{
    double key[2] = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    T val[2]{};
    int next = 0;

    template <class F>
    const T& get(double k, F compute)
    {
        for (int i = 0; i < 2; ++i)
            if (key[i] == k) return val[i];
        const int i = next;
        next ^= 1;
        key[i] = k;
        val[i] = compute();
        return val[i];
    }
};

} // namespace

void NgdConfig::validate() const
{
    if (!(step > 0.0) || !(fd_step > 0.0) || !(tolerance > 0.0))
        throw std::invalid_argument("ngd: step, fd_step and tolerance must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("ngd: max_iterations must be >= 1");
    if (!(theta1_init >= 0.0 && theta1_init <= 1.0) || !(theta2_init >= 0.0 && theta2_init <= 1.0))
        throw std::invalid_argument("ngd: initial point outside the unit square");
}

ThroughputObjective::ThroughputObjective(const Scenario& s)
    : s_(s), lm_(build_link_model(s))
{}

Phase1Terms ThroughputObjective::phase1(double theta1) const
{
    const PowerAllocation pw = powers_from(s_, theta1, 0.5);
    return phase1_terms(lm_, derive_thresholds(s_, pw));
}

Phase2Terms ThroughputObjective::phase2(double theta2) const
{
    const PowerAllocation pw = powers_from(s_, 0.5, theta2);
    return phase2_terms(lm_, derive_thresholds(s_, pw));
}

double ThroughputObjective::combine(const Phase1Terms& p1, const Phase2Terms& p2) const
{
    return throughput(uavnoma::combine(p1, p2), s_.rate_c, s_.rate_e);
}

OutageSet ThroughputObjective::outage(double theta1, double theta2) const
{
    return uavnoma::combine(phase1(theta1), phase2(theta2));
}

double ThroughputObjective::operator()(double theta1, double theta2) const
{
    return combine(phase1(theta1), phase2(theta2));
}

OptResult ngd_optimize(const Objective& f, const NgdConfig& cfg)
{
    cfg.validate();
    OptResult r;
    double t[2] = {cfg.theta1_init, cfg.theta2_init};
    const double h = cfg.fd_step;

    auto eval = [&](double a, double b) {
        const double v = f(a, b);
        ++r.evaluations;
        if (!std::isfinite(v))
            throw std::runtime_error("ngd: objective is not finite at (" + std::to_string(a) + ", "
                                     + std::to_string(b) + ")");
        return v;
    };

    for (r.iterations = 0;; ++r.iterations) {
        const double r0 = eval(t[0], t[1]);
        double g[2];
        for (int i = 0; i < 2; ++i) {
            double u[2] = {t[0], t[1]};
            const bool back = t[i] + h > 1.0;
            u[i] += back ? -h : h;
            const double ri = eval(u[0], u[1]);
            g[i] = back ? (r0 - ri) / h : (ri - r0) / h;
        }
        // components pushing against an active bound do not count
        double pg[2];
        for (int i = 0; i < 2; ++i) {
            pg[i] = g[i];
            if ((t[i] <= 0.0 && g[i] < 0.0) || (t[i] >= 1.0 && g[i] > 0.0)) pg[i] = 0.0;
        }
        r.grad_norm = std::hypot(pg[0], pg[1]);
        r.r_star = r0;
        if (r.grad_norm < cfg.tolerance) {
            r.converged = true;
            break;
        }
        if (r.iterations >= cfg.max_iterations) break;
        for (int i = 0; i < 2; ++i) t[i] = std::clamp(t[i] + cfg.step * g[i], 0.0, 1.0);
    }
    r.theta1 = t[0];
    r.theta2 = t[1];
    return r;
}

OptResult ngd_optimize(const Scenario& s, const NgdConfig& cfg)
{
    const ThroughputObjective obj(s);
    // each iteration probes two values per axis; remember the last two of each
    Memo<Phase1Terms> m1;
    Memo<Phase2Terms> m2;
    return ngd_optimize(
        [&](double a, double b) {
            return obj.combine(m1.get(a, [&] { return obj.phase1(a); }),
                               m2.get(b, [&] { return obj.phase2(b); }));
        },
        cfg);
}

OptResult brute_force_search(const Objective& f, int grid_n)
{
    if (grid_n < 2) throw std::invalid_argument("bfs: grid_n must be >= 2");
    OptResult best;
    best.r_star = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const double v = f(lattice(i, grid_n), lattice(j, grid_n));
            ++best.evaluations;
            if (v > best.r_star) {
                best.r_star = v;
                best.theta1 = lattice(i, grid_n);
                best.theta2 = lattice(j, grid_n);
            }
        }
    }
    best.converged = true;
    return best;
}

OptResult brute_force_search(const Scenario& s, int grid_n)
{
    if (grid_n < 2) throw std::invalid_argument("bfs: grid_n must be >= 2");
    const ThroughputObjective obj(s);
    std::vector<Phase1Terms> p1(static_cast<std::size_t>(grid_n));
    std::vector<Phase2Terms> p2(static_cast<std::size_t>(grid_n));
    for (int i = 0; i < grid_n; ++i) {
        p1[static_cast<std::size_t>(i)] = obj.phase1(lattice(i, grid_n));
        p2[static_cast<std::size_t>(i)] = obj.phase2(lattice(i, grid_n));
    }
    return brute_force_search(
        [&](double a, double b) {
            const auto i = static_cast<std::size_t>(std::lround(a * (grid_n - 1)));
            const auto j = static_cast<std::size_t>(std::lround(b * (grid_n - 1)));
            return obj.combine(p1[i], p2[j]);
        },
        grid_n);
}

double mse(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("mse: sequences must be non-empty and of equal length");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return acc / static_cast<double>(a.size());
}

TrajectoryComparison trajectory_mse(std::span<const Scenario> path, const NgdConfig& cfg,
                                    int grid_n)
{
    TrajectoryComparison out;
    std::vector<double> rn, rb;
    for (const Scenario& s : path) {
        out.ngd.push_back(ngd_optimize(s, cfg));
        out.bfs.push_back(brute_force_search(s, grid_n));
        rn.push_back(out.ngd.back().r_star);
        rb.push_back(out.bfs.back().r_star);
    }
    out.mse = mse(rb, rn);
    return out;
}

} // namespace uavnoma
