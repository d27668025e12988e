#include "tuav/winder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tuav/error.hpp"

namespace tuav {

namespace {

Eigen::Vector3d unit_direction(const Eigen::Vector3d& uav, const Eigen::Vector3d& anchor) {
    const Eigen::Vector3d delta = uav - anchor;
    const double distance = delta.norm();
    if (!(distance > 0.0)) {
        throw Error(ErrorKind::degenerate_geometry, "winder: UAV coincides with the anchor");
    }
    return delta / distance;
}

} // namespace

void WinderParams::validate() const {
    auto check = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error(ErrorKind::domain, std::string("winder: ") + name + " must be > 0");
        }
    };
    check(drum_mass, "drum_mass");
    check(rho, "rho");
    check(max_length, "max_length");
    check(r_w, "r_w");
    check(r_i, "r_i");
    check(beta_w, "beta_w");
    check(k_t, "k_t");
    check(moment_arm(), "r_e");
    if (r_i > r_w) {
        throw Error(ErrorKind::domain, "winder: inner radius must satisfy r_i <= r_w");
    }
}

double winch_mass(const WinderParams& params, double theta) {
    const double released = released_length(params, theta);
    if (!(released >= 0.0) || released > params.max_length) {
        throw Error(ErrorKind::domain, "winch_mass: released length " + std::to_string(released) +
                                           " m outside [0, L_T]");
    }
    return params.drum_mass + (params.max_length - released) * params.rho;
}

double winch_inertia(double mass, double r_w, double r_i) {
    if (!(r_i > 0.0) || r_i > r_w) {
        throw Error(ErrorKind::domain, "winch_inertia: radii must satisfy 0 < r_i <= r_w");
    }
    if (!(mass > 0.0)) {
        throw Error(ErrorKind::domain, "winch_inertia: mass must be > 0");
    }
    return 0.5 * mass * (r_w * r_w + r_i * r_i);
}

double winch_inertia_at(const WinderParams& params, double theta) {
    const double theta_max = params.max_length / params.r_w;
    return winch_inertia(winch_mass(params, std::clamp(theta, 0.0, theta_max)), params.r_w,
                         params.r_i);
}

double tether_elongation(const Eigen::Vector3d& uav, const Eigen::Vector3d& anchor, double r_w,
                         double theta) {
    const double distance = (uav - anchor).norm();
    if (!(distance > 0.0)) {
        throw Error(ErrorKind::degenerate_geometry, "tether_elongation: UAV coincides with anchor");
    }
    return std::max(0.0, distance - r_w * theta);
}

Eigen::Vector3d pulling_force(const WinderParams& params, double elongation,
                              const Eigen::Vector3d& uav, const Eigen::Vector3d& anchor) {
    const Eigen::Vector3d direction = unit_direction(uav, anchor);
    if (params.inelastic) {
        return Eigen::Vector3d::Zero();
    }
    return params.k_t * elongation * direction;
}

double winch_accel(const WinderParams& params, const WinderState& state, double pull_norm,
                   double torque) {
    const double inertia = winch_inertia_at(params, state.theta);
    const double friction = -params.beta_w * state.theta_dot;
    const double drive = params.r_w * torque;
    if (params.inelastic) {
        return (friction + drive) / inertia;
    }
    return (params.moment_arm() * pull_norm + friction + drive) / inertia;
}

} // namespace tuav
