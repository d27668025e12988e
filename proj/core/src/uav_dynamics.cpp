#include "tuav/uav_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tuav/error.hpp"

namespace tuav {

void UavParams::validate() const {
    auto positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error(ErrorKind::domain, std::string("uav: ") + name + " must be > 0");
        }
    };
    positive(m, "m");
    positive(g, "g");
    positive(ixx, "ixx");
    positive(iyy, "iyy");
    positive(izz, "izz");
    for (double drag : {drag_x, drag_y, drag_z}) {
        if (!(drag >= 0.0) || !std::isfinite(drag)) {
            throw Error(ErrorKind::domain, "uav: drag coefficients must be >= 0");
        }
    }
    if (gravity_sign != 1 && gravity_sign != -1) {
        throw Error(ErrorKind::domain, "uav: gravity_sign must be +1 or -1");
    }
}

StateVector FullState::to_vector() const {
    StateVector v;
    v << uav.x, uav.vx, uav.y, uav.vy, uav.z, uav.vz, uav.phi, uav.p, uav.theta, uav.q, uav.psi,
        uav.r, winder.theta, winder.theta_dot;
    return v;
}

FullState FullState::from_vector(const StateVector& v) {
    FullState s;
    s.uav = {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11]};
    s.winder = {v[12], v[13]};
    return s;
}

ControlInputs ControlInputs::saturated(const InputLimits& limits) const {
    auto clip = [](double value, double bound) { return std::clamp(value, -bound, bound); };
    return {clip(thrust, limits.thrust), clip(roll, limits.moment), clip(pitch, limits.moment),
            clip(yaw, limits.moment), clip(winch, limits.winch)};
}

Eigen::Matrix3d rotation_matrix(double phi, double theta, double psi) {
    const double cf = std::cos(phi), sf = std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(psi), sp = std::sin(psi);
    Eigen::Matrix3d r;
    r << ct * cp, cp * st * sf - cf * sp, sf * sp + cf * cp * st,
         ct * sp, cf * cp + st * sf * sp, cf * st * sp - cp * sf,
         -st,     ct * sf,                ct * cf;
    return r;
}

Eigen::Matrix3d angular_velocity_map(double phi, double theta) {
    const double cf = std::cos(phi), sf = std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    Eigen::Matrix3d w;
    w << -st,     0.0, 1.0,
         ct * sf, cf,  0.0,
         ct * cf, -sf, 0.0;
    return w;
}

bool is_gimbal_singular(double theta, double tolerance) {
    return std::abs(std::cos(theta)) < tolerance;
}

Eigen::Matrix3d generalized_inertia(double phi, double theta, const Eigen::Vector3d& inertia) {
    if (!(inertia.array() > 0.0).all()) {
        throw Error(ErrorKind::domain, "generalized_inertia: inertias must be > 0");
    }
    const Eigen::Matrix3d w = angular_velocity_map(phi, theta);
    return w.transpose() * inertia.asDiagonal() * w;
}

Eigen::Vector3d translational_accel(const UavState& s, double thrust, const TensionVector& tension,
                                    const UavParams& params) {
    const double cf = std::cos(s.phi), sf = std::sin(s.phi);
    const double ct = std::cos(s.theta), st = std::sin(s.theta);
    const double cp = std::cos(s.psi), sp = std::sin(s.psi);
    const double m = params.m;
    const double mg = m * params.g;
    const double horizontal_g = params.horizontal_gravity ? 1.0 : 0.0;
    const Eigen::Vector3d& t = tension.components;

    const double ax = (thrust * (cp * cf * st + sp * sf) + m * s.r * s.vy - m * s.q * s.vz -
                       horizontal_g * mg * st - t.x() - params.drag_x * s.vx) / m;
    const double ay = (thrust * (cf * sp * st - cp * sf) + m * s.r * s.vx - m * s.p * s.vz -
                       horizontal_g * mg * ct * sf + t.y() - params.drag_y * s.vy) / m;
    const double az = (thrust * ct * cf + m * s.q * s.vx - m * s.p * s.vy +
                       params.gravity_sign * mg * ct * cf - t.z() - params.drag_z * s.vz) / m;
    return {ax, ay, az};
}

Eigen::Vector3d rotational_accel(const UavState& s, const Eigen::Vector3d& moments,
                                 const UavParams& params) {
    return {(moments.x() - s.q * s.r * (params.iyy - params.izz)) / params.ixx,
            (moments.y() + s.p * s.r * (params.ixx - params.izz)) / params.iyy,
            (moments.z() - s.p * s.q * (params.ixx - params.iyy)) / params.izz};
}

StateVector full_derivative(const FullState& state, const ControlInputs& inputs,
                            const TensionVector& tension, const UavParams& uav,
                            const WinderParams& winder) {
    const UavState& s = state.uav;
    const Eigen::Vector3d lin = translational_accel(s, inputs.thrust, tension, uav);
    const Eigen::Vector3d ang =
        rotational_accel(s, {inputs.roll, inputs.pitch, inputs.yaw}, uav);

    double pull = 0.0;
    if (!winder.inelastic) {
        const Eigen::Vector3d anchor = Eigen::Vector3d::Zero();
        const double stretch =
            tether_elongation(s.position(), anchor, winder.r_w, state.winder.theta);
        pull = pulling_force(winder, stretch, s.position(), anchor).norm();
    }
    const double drum = winch_accel(winder, state.winder, pull, inputs.winch);

    StateVector d;
    d << s.vx, lin.x(), s.vy, lin.y(), s.vz, lin.z(), s.p, ang.x(), s.q, ang.y(), s.r, ang.z(),
        state.winder.theta_dot, drum;
    return d;
}

} // namespace tuav
