// Reference generation for the built-in flight scenarios.
#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "tuav/catenary.hpp"
#include "tuav/controllers.hpp"

namespace tuav {

struct SetpointSpec {
    Eigen::Vector3d position{1.0, 1.0, 5.0};
    double yaw = 0.0;
};

/// Straight segment from `start` to `end` at cruise `speed`. A positive `accel`
/// (mean acceleration of the blend) eases the cruise in and out so reference
/// velocity and acceleration stay continuous; accel = 0 jumps straight to
/// cruise.
/// Yaw is interpolated with the same progress.
struct LinearSpec {
    Eigen::Vector3d start{0.5, -0.5, 1.0};
    Eigen::Vector3d end{2.3, 3.1, 4.6};
    double speed = 0.6;
    double accel = 0.6;
    double start_yaw = 0.0;
    double end_yaw = 0.5;
};

struct CircularSpec {
    double radius = 1.0;
    double omega = 0.2;
    double altitude = 5.0;
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    double yaw = 0.0;
};

struct WaypointSpec {
    std::vector<Eigen::Vector3d> points{{1.0, 1.0, 5.0}, {3.0, 0.0, 6.0}, {1.0, -2.0, 4.0}};
    double tolerance = 0.05;
    double yaw = 0.0;
};

using TrajectorySpec = std::variant<SetpointSpec, LinearSpec, CircularSpec, WaypointSpec>;

/// Throws Error(domain) for non-physical parameters.
void validate(const TrajectorySpec& spec);

/// Time the linear profile takes to reach its end point.
double linear_duration(const LinearSpec& spec);

/// Reference at time t. Waypoint references target points[waypoint_index].
/// Roll and pitch are left zero; the cascade supplies them. L_bar comes from
/// `policy` at the commanded point, with its time derivatives.
/// Throws Error(over_length) when the commanded point is beyond tether reach.
ReferenceSignal generate_reference(const TrajectorySpec& spec, double t, const LbarPolicy& policy,
                                   const TetherMaterial& material,
                                   std::size_t waypoint_index = 0);

/// Stateful wrapper that advances through waypoints as the UAV arrives.
class ReferenceGenerator {
public:
    ReferenceGenerator(TrajectorySpec spec, LbarPolicy policy, TetherMaterial material);

    ReferenceSignal at(double t) const;

    /// Moves to the next waypoint once `position` is within the arrival
    /// tolerance of the current one. Returns true when the target changed.
    bool advance(const Eigen::Vector3d& position);

    std::size_t waypoint_index() const { return index_; }

    /// Checks every commanded point of the trajectory against tether reach.
    void check_reach(double duration) const;

private:
    TrajectorySpec spec_;
    LbarPolicy policy_;
    TetherMaterial material_;
    std::size_t index_ = 0;
};

} // namespace tuav
