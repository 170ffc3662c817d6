#include "uavnoma/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uavnoma/units.hpp"

namespace uavnoma {

Topology Topology::reference()
{
    Topology t;
    t.pos_f = Position3D(0.0, 0.0, 0.0);
    t.pos_c = Position3D(-1.96, 7.33, 0.0);
    t.pos_e = Position3D(-13.49, -18.85, 0.23);
    t.pos_u = Position3D(-6.66, -7.62, 6.77);
    t.mobility_radius = distance(t.pos_c, t.pos_f) / 2.0;
    return t;
}

void Topology::validate() const
{
    const Position3D* nodes[] = {&pos_c, &pos_e, &pos_f, &pos_u};
    for (const auto* p : nodes) {
        if (!p->allFinite()) throw std::invalid_argument("topology: non-finite coordinate");
        if ((*p)(2) < 0.0) throw std::invalid_argument("topology: negative altitude");
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (distance(*nodes[i], *nodes[j]) <= 0.0)
                throw std::invalid_argument("topology: coincident nodes");
    if (!(mobility_radius > 0.0))
        throw std::invalid_argument("topology: mobility radius must be positive");
}

double elevation_angle_deg(const Position3D& a, const Position3D& b)
{
    const double d = distance(a, b);
    if (d <= 0.0) throw std::domain_error("elevation_angle_deg: coincident points");
    const double s = std::min(1.0, std::abs(b(2) - a(2)) / d);
    return rad_to_deg(std::asin(s));
}

RwpState rwp_init(const Position3D& start, double radius, double v_min,
                  double v_max, std::mt19937_64& rng)
{
    if (!(v_min > 0.0) || v_max < v_min)
        throw std::invalid_argument("rwp: require 0 < v_min <= v_max");
    if (radius < 0.0) throw std::invalid_argument("rwp: negative radius");
    RwpState s;
    s.current = start;
    s.center = start;
    s.radius = radius;
    s.v_min = v_min;
    s.v_max = v_max;
    s.waypoint = rwp_sample_waypoint(s, rng);
    s.speed = std::uniform_real_distribution<double>(v_min, v_max)(rng);
    return s;
}

Position3D rwp_sample_waypoint(const RwpState& state, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // inverse CDF of the radial coordinate
    const double r = state.radius * std::sqrt(unif(rng));
    const double phi = 2.0 * std::numbers::pi * unif(rng);
    return {state.center(0) + r * std::cos(phi),
            state.center(1) + r * std::sin(phi),
            state.center(2)};
}

RwpState rwp_step(const RwpState& state, std::mt19937_64& rng)
{
    RwpState next = state;
    const Eigen::Vector2d delta = state.waypoint.head<2>() - state.current.head<2>();
    const double remaining = delta.norm();
    if (remaining <= state.speed) {
        next.current = state.waypoint;
        next.current(2) = state.center(2);
        next.waypoint = rwp_sample_waypoint(next, rng);
        next.speed = std::uniform_real_distribution<double>(state.v_min, state.v_max)(rng);
        return next;
    }
    // heading measured from +x; cos drives x and sin drives y
    const double heading = std::atan2(delta(1), delta(0));
    next.current(0) += state.speed * std::cos(heading);
    next.current(1) += state.speed * std::sin(heading);
    return next;
}

std::vector<Position3D> rwp_trace(const Position3D& start, double radius, int steps,
                                  std::uint64_t seed, double v_min, double v_max)
{
    if (steps < 1) throw std::invalid_argument("rwp: steps must be >= 1");
    std::mt19937_64 rng(seed);
    RwpState s = rwp_init(start, radius, v_min, v_max, rng);
    std::vector<Position3D> out;
    out.reserve(static_cast<std::size_t>(steps));
    out.push_back(s.current);
    for (int i = 1; i < steps; ++i) {
        s = rwp_step(s, rng);
        out.push_back(s.current);
    }
    return out;
}

} // namespace uavnoma
