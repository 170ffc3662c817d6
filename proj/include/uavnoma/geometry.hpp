#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace uavnoma {

template <class Scalar_>
using position3_type = Eigen::Matrix<Scalar_, 3, 1>;

/// Node position in meters.
using Position3D = position3_type<double>;

struct Topology
{
    Position3D pos_c;   // center user
    Position3D pos_e;   // edge user
    Position3D pos_f;   // fusion center
    Position3D pos_u;   // UAV
    double mobility_radius = 0.0;

    /// Placement used throughout the numerical study, with the mobility
    /// radius set to half the C-F separation.
    static Topology reference();

    /// Throws std::invalid_argument on coincident nodes or a non-positive radius.
    void validate() const;
};

/// Euclidean distance.
template <class Derived1, class Derived2>
inline typename Derived1::Scalar distance(
    const Eigen::MatrixBase<Derived1>& a,
    const Eigen::MatrixBase<Derived2>& b)
{
    return (a - b).norm();
}

/// Elevation angle of the a-b link in degrees, in [0, 90].
/// Throws std::domain_error for coincident points.
double elevation_angle_deg(const Position3D& a, const Position3D& b);

/// Horizontal (xy-plane) distance.
inline double horizontal_distance(const Position3D& a, const Position3D& b)
{
    return (a.head<2>() - b.head<2>()).norm();
}

/// Random-waypoint state for a UAV flying at constant altitude inside a disk.
/// Pause time at waypoints is zero.
struct RwpState
{
    Position3D current;
    Position3D waypoint;
    double speed = 0.0;       // meters per step
    Position3D center;
    double radius = 0.0;
    double v_min = 0.1;
    double v_max = 1.0;
};

/// Start a trace at `start`, with the disk centered on it.
RwpState rwp_init(const Position3D& start, double radius, double v_min,
                  double v_max, std::mt19937_64& rng);

/// Uniform point on the disk at the altitude of `state.center`.
Position3D rwp_sample_waypoint(const RwpState& state, std::mt19937_64& rng);

/// One unit-time step of motion toward the current waypoint.
RwpState rwp_step(const RwpState& state, std::mt19937_64& rng);

/// Positions visited over `steps` steps, starting with `start` itself.
std::vector<Position3D> rwp_trace(const Position3D& start, double radius, int steps,
                                  std::uint64_t seed, double v_min = 0.1, double v_max = 1.0);

} // namespace uavnoma
