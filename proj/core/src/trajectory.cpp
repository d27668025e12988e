#include "tuav/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "tuav/error.hpp"

namespace tuav {

namespace {

struct Kinematics {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
    Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
    double yaw = 0.0;
    double yaw_rate = 0.0;
    double yaw_accel = 0.0;
};

// Distance travelled, speed and acceleration along the segment at time t.
struct Progress {
    double s = 0.0;
    double rate = 0.0;
    double accel = 0.0;
};

Progress linear_progress(const LinearSpec& spec, double t) {
    const double total = (spec.end - spec.start).norm();
    if (total == 0.0 || t <= 0.0) {
        return {0.0, 0.0, 0.0};
    }
    const double v = spec.speed;
    if (spec.accel <= 0.0) {
        const double s = std::min(v * t, total);
        return {s, s < total ? v : 0.0, 0.0};
    }
    // Half-cosine speed blends of length T = peak/accel: the blend covers
    // peak*T/2, like a constant-acceleration ramp, but the acceleration is
    // continuous at both ends.
    const double peak = std::min(v, std::sqrt(spec.accel * total));
    const double blend = peak / spec.accel;
    const double cruise_time = (total - peak * blend) / peak;
    const double end_time = 2.0 * blend + cruise_time;
    const double w = std::numbers::pi / blend;

    if (t < blend) {
        return {0.5 * peak * (t - std::sin(w * t) / w), 0.5 * peak * (1.0 - std::cos(w * t)),
                0.5 * peak * w * std::sin(w * t)};
    }
    if (t < blend + cruise_time) {
        return {0.5 * peak * blend + peak * (t - blend), peak, 0.0};
    }
    if (t < end_time) {
        const double left = end_time - t;
        return {total - 0.5 * peak * (left - std::sin(w * left) / w),
                0.5 * peak * (1.0 - std::cos(w * left)), -0.5 * peak * w * std::sin(w * left)};
    }
    return {total, 0.0, 0.0};
}

Kinematics kinematics(const TrajectorySpec& spec, double t, std::size_t index) {
    Kinematics k;
    if (const auto* sp = std::get_if<SetpointSpec>(&spec)) {
        k.position = sp->position;
        k.yaw = sp->yaw;
    } else if (const auto* lin = std::get_if<LinearSpec>(&spec)) {
        const Eigen::Vector3d delta = lin->end - lin->start;
        const double total = delta.norm();
        const Progress pr = linear_progress(*lin, t);
        const double yaw_span = lin->end_yaw - lin->start_yaw;
        if (total > 0.0) {
            const Eigen::Vector3d dir = delta / total;
            k.position = lin->start + dir * pr.s;
            k.velocity = dir * pr.rate;
            k.acceleration = dir * pr.accel;
            k.yaw = lin->start_yaw + yaw_span * pr.s / total;
            k.yaw_rate = yaw_span * pr.rate / total;
            k.yaw_accel = yaw_span * pr.accel / total;
        } else {
            k.position = lin->start;
            k.yaw = lin->end_yaw;
        }
    } else if (const auto* circ = std::get_if<CircularSpec>(&spec)) {
        const double w = circ->omega;
        const double c = std::cos(w * t), s = std::sin(w * t);
        const double r = circ->radius;
        k.position = {circ->center.x() + r * c, circ->center.y() + r * s, circ->altitude};
        k.velocity = {-r * w * s, r * w * c, 0.0};
        k.acceleration = {-r * w * w * c, -r * w * w * s, 0.0};
        k.yaw = circ->yaw;
    } else {
        const auto& wp = std::get<WaypointSpec>(spec);
        k.position = wp.points.at(std::min(index, wp.points.size() - 1));
        k.yaw = wp.yaw;
    }
    return k;
}

} // namespace

void validate(const TrajectorySpec& spec) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::domain, "trajectory: " + what); };
    if (const auto* lin = std::get_if<LinearSpec>(&spec)) {
        if (!(lin->speed > 0.0)) fail("linear speed must be > 0");
        if (!(lin->accel >= 0.0)) fail("linear accel must be >= 0");
    } else if (const auto* circ = std::get_if<CircularSpec>(&spec)) {
        if (!(circ->radius > 0.0)) fail("circle radius must be > 0");
        if (!std::isfinite(circ->omega)) fail("circle angular rate must be finite");
    } else if (const auto* wp = std::get_if<WaypointSpec>(&spec)) {
        if (wp->points.empty()) fail("waypoint list must not be empty");
        if (!(wp->tolerance > 0.0)) fail("waypoint tolerance must be > 0");
    }
}

double linear_duration(const LinearSpec& spec) {
    const double total = (spec.end - spec.start).norm();
    if (total == 0.0) {
        return 0.0;
    }
    if (spec.accel <= 0.0) {
        return total / spec.speed;
    }
    const double peak = std::min(spec.speed, std::sqrt(spec.accel * total));
    return total / peak + peak / spec.accel;
}

ReferenceSignal generate_reference(const TrajectorySpec& spec, double t, const LbarPolicy& policy,
                                   const TetherMaterial& material, std::size_t waypoint_index) {
    if (!(t >= 0.0)) {
        throw Error(ErrorKind::domain, "generate_reference: t must be >= 0");
    }
    const Kinematics k = kinematics(spec, t, waypoint_index);

    ReferenceSignal ref;
    ref.position = k.position;
    ref.velocity = k.velocity;
    ref.acceleration = k.acceleration;
    ref.attitude = {0.0, 0.0, k.yaw};
    ref.attitude_rate = {0.0, 0.0, k.yaw_rate};
    ref.attitude_accel = {0.0, 0.0, k.yaw_accel};
    ref.length = lbar_estimator(k.position, policy, material);

    if (policy.kind == LbarPolicy::Kind::slack) {
        const double norm = k.position.norm();
        if (norm > 0.0) {
            const double radial = k.position.dot(k.velocity);
            ref.length_rate = policy.slack_factor * radial / norm;
            ref.length_accel = policy.slack_factor *
                               ((k.velocity.squaredNorm() + k.position.dot(k.acceleration)) / norm -
                                radial * radial / (norm * norm * norm));
        }
    } else {
        // Central differences in time; the catenary length has no cheap
        // closed-form derivative.
        constexpr double h = 1e-4;
        const double ahead =
            lbar_estimator(kinematics(spec, t + h, waypoint_index).position, policy, material);
        const double behind =
            lbar_estimator(kinematics(spec, t - h, waypoint_index).position, policy, material);
        ref.length_rate = (ahead - behind) / (2.0 * h);
        ref.length_accel = (ahead - 2.0 * ref.length + behind) / (h * h);
    }
    return ref;
}

ReferenceGenerator::ReferenceGenerator(TrajectorySpec spec, LbarPolicy policy,
                                       TetherMaterial material)
    : spec_(std::move(spec)), policy_(policy), material_(material) {
    validate(spec_);
}

ReferenceSignal ReferenceGenerator::at(double t) const {
    return generate_reference(spec_, t, policy_, material_, index_);
}

bool ReferenceGenerator::advance(const Eigen::Vector3d& position) {
    const auto* wp = std::get_if<WaypointSpec>(&spec_);
    if (wp == nullptr || index_ + 1 >= wp->points.size()) {
        return false;
    }
    if ((position - wp->points[index_]).norm() <= wp->tolerance) {
        ++index_;
        return true;
    }
    return false;
}

void ReferenceGenerator::check_reach(double duration) const {
    if (const auto* wp = std::get_if<WaypointSpec>(&spec_)) {
        for (std::size_t i = 0; i < wp->points.size(); ++i) {
            generate_reference(spec_, 0.0, policy_, material_, i);
        }
        return;
    }
    constexpr int kSamples = 256;
    for (int i = 0; i <= kSamples; ++i) {
        generate_reference(spec_, duration * i / kSamples, policy_, material_, 0);
    }
}

} // namespace tuav
