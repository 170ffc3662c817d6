// Command-line front end: validate, sweep, mobility, optimize.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavnoma/analytics.hpp"
#include "uavnoma/montecarlo.hpp"
#include "uavnoma/optimizer.hpp"
#include "uavnoma/scenario_io.hpp"
#include "uavnoma/units.hpp"

using namespace uavnoma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitUsage = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Common
{
    std::string config;
    std::optional<std::uint64_t> random_topology;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out;
    std::string mechanisms = "adm,d1,d2,d3,d4";
};

void add_common(CLI::App* app, Common& c, std::uint64_t default_trials)
{
    c.trials = default_trials;
    app->add_option("--config", c.config, "Scenario JSON file");
    app->add_option("--random-topology", c.random_topology,
                    "Redraw C and E uniformly over the network area with this seed");
    app->add_option("--trials", c.trials, "Monte Carlo trials per point (0 = analytic only)")
        ->capture_default_str();
    app->add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
    app->add_option("--workers", c.workers, "Worker threads")->capture_default_str();
    app->add_option("--out", c.out, "Output file (default: stdout)");
}

Scenario resolve_scenario(const Common& c)
{
    Scenario s = c.config.empty() ? Scenario{} : load_scenario(c.config);
    if (c.random_topology) s = with_random_users(s, *c.random_topology);
    s.validate();
    return s;
}

std::vector<Mechanism> parse_mechanisms(const std::string& list)
{
    std::vector<Mechanism> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_mechanism(item));
    if (out.empty()) throw std::invalid_argument("no mechanisms given");
    return out;
}

// Owns the output file when --out is given.
struct Output
{
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path)
    {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw std::invalid_argument("cannot open output '" + path + "'");
        os = file.get();
    }
};

std::vector<std::pair<std::string, std::string>> meta_with(const Scenario& s, const Common& c,
                                                           std::vector<std::pair<std::string, std::string>> extra)
{
    auto meta = scenario_meta(s);
    meta.emplace_back("seed", std::to_string(c.seed));
    meta.emplace_back("trials", std::to_string(c.trials));
    for (auto& e : extra) meta.push_back(std::move(e));
    return meta;
}

// -------------------------------------------------------------------- validate

int cmd_validate(const Common& c, double tau_scale)
{
    const Scenario s = resolve_scenario(c);
    if (c.trials == 0) throw std::invalid_argument("validate needs --trials >= 1");
    if (c.trials < 10000)
        std::cerr << "warning: " << c.trials
                  << " trials give wide intervals; the comparison has little power\n";

    const PowerAllocation pw = powers_from(s);
    const OutageSet op = outage_set(s, pw, tau_scale);
    MCConfig mc{c.trials, c.seed, c.workers, 0.997};
    const Mechanism adm[] = {Mechanism::ADM};
    const OutageReport rep = estimate(s, pw, adm, mc);
    const MechanismReport& m = rep.at(Mechanism::ADM);

    Output out(c.out);
    CsvWriter csv(*out.os, meta_with(s, c, {{"tau_scale", std::to_string(tau_scale)}}),
                  {"metric", "analytic", "empirical", "ci_half_width", "sigma_units", "agree"});

    struct Row { const char* name; double a; Estimate e; };
    const Row rows[] = {{"op_e", op.op_e, m.op_e}, {"op_c1", op.op_c1, m.op_c1},
                        {"op_c2", op.op_c2, m.op_c2}};
    bool all_ok = true;
    double worst = -1.0;
    std::string worst_name;
    for (const Row& r : rows) {
        const double sigma = std::sqrt(r.a * (1.0 - r.a) / static_cast<double>(c.trials));
        const double dev = std::abs(r.e.value - r.a);
        const double units = sigma > 0.0 ? dev / sigma : (dev == 0.0 ? 0.0 : kInf);
        const bool ok = units <= rep.z;
        all_ok = all_ok && ok;
        if (units > worst) { worst = units; worst_name = r.name; }
        csv.row({std::string(r.name), r.a, r.e.value, r.e.half_width, units,
                 std::string(ok ? "yes" : "no")});
    }
    if (!all_ok) {
        std::cerr << "mismatch: " << worst_name << " deviates by " << worst << " sigma\n";
        return kExitMismatch;
    }
    return kExitOk;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs
{
    std::string axis;
    double from = 0, to = 0;
    int points = 11;
};

Scenario apply_axis(const Scenario& base, const std::string& axis, double v)
{
    Scenario s = base;
    if (axis == "p_max") {
        s.p_max1_dbm = s.p_max2_dbm = v;
    } else if (axis == "angle") {
        const Position3D& f = base.topology.pos_f;
        const Position3D& u = base.topology.pos_u;
        const double r = horizontal_distance(u, f);
        s = with_uav_at(base, Position3D(f(0) + r * std::cos(deg_to_rad(v)),
                                         f(1) + r * std::sin(deg_to_rad(v)), u(2)));
    } else if (axis == "xi") {
        s.xi_u = s.xi_f = v;
    } else if (axis == "rate") {
        // keeps the ratio of the two targets
        s.rate_e = base.rate_e / base.rate_c * v;
        s.rate_c = v;
    } else {
        throw std::invalid_argument("unknown axis '" + axis + "'");
    }
    s.validate();
    return s;
}

int cmd_sweep(const Common& c, const SweepArgs& a)
{
    const Scenario base = resolve_scenario(c);
    if (a.points < 1) throw std::invalid_argument("sweep: --points must be >= 1");
    if (a.points > 1 && a.from == a.to) throw std::invalid_argument("sweep: empty range");
    const auto mechs = parse_mechanisms(c.mechanisms);

    std::vector<std::string> header = {a.axis, "op_e", "op_c1", "op_c2", "throughput"};
    if (c.trials > 0) {
        for (Mechanism m : mechs) {
            const std::string n(mechanism_name(m));
            for (const char* col : {"op_e", "op_c1", "op_c2", "throughput"})
                header.push_back(n + "_mc_" + col);
        }
        header.push_back("nadm_min_op_e");
    }

    Output out(c.out);
    CsvWriter csv(*out.os, meta_with(base, c, {{"axis", a.axis}}), header);
    for (int i = 0; i < a.points; ++i) {
        const double v = a.points == 1 ? a.from
                                       : a.from + (a.to - a.from) * i / (a.points - 1);
        const Scenario s = apply_axis(base, a.axis, v);
        const PowerAllocation pw = powers_from(s);
        const OutageSet op = outage_set(s, pw);
        std::vector<CsvWriter::Cell> row = {v, op.op_e, op.op_c1, op.op_c2,
                                            throughput(op, s.rate_c, s.rate_e)};
        if (c.trials > 0) {
            const OutageReport rep = estimate(s, pw, mechs, MCConfig{c.trials, c.seed, c.workers, 0.997});
            double nadm_min = kInf;
            for (const auto& m : rep.mechanisms) {
                row.insert(row.end(), {m.op_e.value, m.op_c1.value, m.op_c2.value,
                                       m.throughput.value});
                if (m.mechanism != Mechanism::ADM) nadm_min = std::min(nadm_min, m.op_e.value);
            }
            row.push_back(std::isinf(nadm_min) ? std::nan("") : nadm_min);
        }
        csv.row(row);
    }
    return kExitOk;
}

// -------------------------------------------------------------------- mobility

int cmd_mobility(const Common& c, int steps, std::uint64_t trace_seed, const NgdConfig& ngd)
{
    const Scenario base = resolve_scenario(c);
    if (steps < 1) throw std::invalid_argument("mobility: --steps must be >= 1");
    const auto mechs = parse_mechanisms(c.mechanisms);
    const auto path = rwp_trace(base.topology.pos_u, base.topology.mobility_radius, steps,
                                trace_seed);

    std::vector<std::string> header = {"step", "x_u", "y_u", "z_u", "theta1", "theta2",
                                       "ngd_converged", "adm_analytic"};
    if (c.trials > 0)
        for (Mechanism m : mechs) header.push_back(std::string(mechanism_name(m)) + "_mc");

    Output out(c.out);
    CsvWriter csv(*out.os, meta_with(base, c, {{"trace_seed", std::to_string(trace_seed)}}),
                  header);
    for (int k = 0; k < steps; ++k) {
        const Scenario s = with_uav_at(base, path[static_cast<std::size_t>(k)]);
        const OptResult opt = ngd_optimize(s, ngd);
        const Position3D& p = path[static_cast<std::size_t>(k)];
        std::vector<CsvWriter::Cell> row = {std::int64_t{k}, p(0), p(1), p(2), opt.theta1,
                                            opt.theta2, std::int64_t{opt.converged}, opt.r_star};
        if (c.trials > 0) {
            const PowerAllocation pw = powers_from(s, opt.theta1, opt.theta2);
            const OutageReport rep = estimate(s, pw, mechs,
                                              MCConfig{c.trials, c.seed + static_cast<std::uint64_t>(k),
                                                       c.workers, 0.997});
            for (const auto& m : rep.mechanisms) row.push_back(m.throughput.value);
        }
        csv.row(row);
    }
    return kExitOk;
}

// -------------------------------------------------------------------- optimize

nlohmann::json to_json(const OptResult& r)
{
    return {{"theta1", r.theta1}, {"theta2", r.theta2}, {"r_star", r.r_star},
            {"iterations", r.iterations}, {"converged", r.converged},
            {"grad_norm", r.grad_norm}, {"evaluations", r.evaluations}};
}

int cmd_optimize(const Common& c, const std::string& method, int grid, const NgdConfig& ngd)
{
    const Scenario s = resolve_scenario(c);
    if (method != "ngd" && method != "bfs" && method != "both")
        throw std::invalid_argument("unknown method '" + method + "'");

    nlohmann::json j;
    j["scenario"] = scenario_to_json(s);
    std::optional<OptResult> rn, rb;
    if (method != "bfs") {
        rn = ngd_optimize(s, ngd);
        j["ngd"] = to_json(*rn);
        j["ngd"]["step"] = ngd.step;
    }
    if (method != "ngd") {
        rb = brute_force_search(s, grid);
        j["bfs"] = to_json(*rb);
        j["bfs"]["grid_n"] = grid;
    }
    if (rn && rb) j["gap"] = std::abs(rn->r_star - rb->r_star);

    Output out(c.out);
    *out.os << j.dump(2) << '\n';
    if (rn && !rn->converged) {
        std::cerr << "ngd did not converge after " << rn->iterations << " iterations\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

void add_ngd_options(CLI::App* app, NgdConfig& ngd, std::optional<std::uint64_t>& random_start)
{
    app->add_option("--step", ngd.step, "Ascent step size")->capture_default_str();
    app->add_option("--fd-step", ngd.fd_step, "Finite-difference step")->capture_default_str();
    app->add_option("--tol", ngd.tolerance, "Gradient-norm tolerance")->capture_default_str();
    app->add_option("--max-iter", ngd.max_iterations, "Iteration cap")->capture_default_str();
    app->add_option("--theta1-init", ngd.theta1_init, "Initial theta1")->capture_default_str();
    app->add_option("--theta2-init", ngd.theta2_init, "Initial theta2")->capture_default_str();
    app->add_option("--random-start", random_start, "Draw the initial point with this seed");
}

void apply_random_start(NgdConfig& ngd, const std::optional<std::uint64_t>& seed)
{
    if (!seed) return;
    std::mt19937_64 rng(*seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ngd.theta1_init = u(rng);
    ngd.theta2_init = u(rng);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage, throughput and power-allocation tool for UAV-relayed uplink NOMA"};
    app.require_subcommand(1);

    Common c_val, c_sweep, c_mob, c_opt;
    double tau_scale = 1.0;
    SweepArgs sweep;
    int steps = 300;
    std::uint64_t trace_seed = 1;
    NgdConfig ngd_mob, ngd_opt;
    std::optional<std::uint64_t> rs_mob, rs_opt;
    std::string method = "both";
    int grid = 101;

    auto* v = app.add_subcommand("validate", "Compare closed-form outage with Monte Carlo");
    add_common(v, c_val, 1'000'000);
    v->add_option("--debug-tau-scale", tau_scale,
                  "Scale the analytic SINR thresholds (negative control)")
        ->group("Debug");

    auto* sw = app.add_subcommand("sweep", "Sweep one parameter and tabulate outage/throughput");
    add_common(sw, c_sweep, 0);
    sw->add_option("--axis", sweep.axis, "p_max | angle | xi | rate")->required()
        ->check(CLI::IsMember({"p_max", "angle", "xi", "rate"}));
    sw->add_option("--from", sweep.from, "First value")->required();
    sw->add_option("--to", sweep.to, "Last value")->required();
    sw->add_option("--points", sweep.points, "Number of points")->capture_default_str();
    sw->add_option("--mechanisms", c_sweep.mechanisms, "Comma list of adm,d1,d2,d3,d4")
        ->capture_default_str();

    auto* mob = app.add_subcommand("mobility", "Optimize and evaluate along a random-waypoint path");
    add_common(mob, c_mob, 100'000);
    mob->add_option("--steps", steps, "Number of UAV positions")->capture_default_str();
    mob->add_option("--trace-seed", trace_seed, "Seed of the waypoint process")->capture_default_str();
    mob->add_option("--mechanisms", c_mob.mechanisms, "Comma list of adm,d1,d2,d3,d4")
        ->capture_default_str();
    add_ngd_options(mob, ngd_mob, rs_mob);

    auto* opt = app.add_subcommand("optimize", "Maximize throughput over the power split");
    add_common(opt, c_opt, 0);
    opt->add_option("--method", method, "ngd | bfs | both")->capture_default_str();
    opt->add_option("--grid", grid, "Lattice points per axis for bfs")->capture_default_str();
    add_ngd_options(opt, ngd_opt, rs_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*v) return cmd_validate(c_val, tau_scale);
        if (*sw) return cmd_sweep(c_sweep, sweep);
        if (*mob) {
            apply_random_start(ngd_mob, rs_mob);
            return cmd_mobility(c_mob, steps, trace_seed, ngd_mob);
        }
        if (*opt) {
            apply_random_start(ngd_opt, rs_opt);
            return cmd_optimize(c_opt, method, grid, ngd_opt);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMismatch;
    }
    return kExitUsage;
}
