#include "tuav/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tuav/error.hpp"

namespace tuav {

void GainSet::validate() const {
    for (double k : {k1, k2, k3, k4, k5, k6, k7, k8, kw, kw2, kx1, kx2, ky1, ky2}) {
        if (!(k >= 0.0) || !std::isfinite(k)) {
            throw Error(ErrorKind::domain, "gains: every gain must be >= 0");
        }
    }
}

ErrorVector error_junction(const FullState& state, const ReferenceSignal& ref, const GainSet& gains,
                           const WinderParams& winder) {
    const UavState& s = state.uav;
    ErrorVector e;
    e.position = s.position() - ref.position;
    e.velocity = s.velocity() - ref.velocity;
    e.attitude = s.attitude() - ref.attitude;
    e.attitude_rate = s.rates() - ref.attitude_rate;

    e.length = released_length(winder, state.winder.theta) - ref.length;
    e.length_rate = winder.r_w * state.winder.theta_dot - ref.length_rate;
    e.winch_angle = e.length / winder.r_w;
    e.winch_rate = e.length_rate / winder.r_w;

    e.z1 = e.velocity.z() + gains.k1 * e.position.z();
    e.z2 = e.attitude_rate.x() + gains.k3 * e.attitude.x();
    e.z3 = e.attitude_rate.y() + gains.k5 * e.attitude.y();
    e.z4 = e.attitude_rate.z() + gains.k7 * e.attitude.z();
    e.z5 = e.velocity.x() + gains.kx1 * e.position.x();
    e.z6 = e.velocity.y() + gains.ky1 * e.position.y();
    e.z7 = e.winch_rate + gains.kw * e.winch_angle;
    return e;
}

double lbar_estimator(const Eigen::Vector3d& position, const LbarPolicy& policy,
                      const TetherMaterial& material) {
    double length = 0.0;
    if (policy.kind == LbarPolicy::Kind::slack) {
        if (!(policy.slack_factor > 1.0)) {
            throw Error(ErrorKind::domain, "lbar: slack factor must be > 1");
        }
        length = policy.slack_factor * position.norm();
    } else {
        const double span = std::hypot(position.x(), position.y());
        if (span > 0.0) {
            const double a = catenary_parameter(policy.horizontal_tension, material);
            length = arc_length(span, position.z(), a);
        } else {
            length = std::abs(position.z());
        }
    }
    if (length > material.max_length) {
        throw Error(ErrorKind::over_length, "desired tether length " + std::to_string(length) +
                                                " m exceeds L_T = " +
                                                std::to_string(material.max_length) + " m");
    }
    return length;
}

double altitude_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                        const GainSet& gains, double tension_z, const UavParams& params,
                        ControlLaw law) {
    const double tilt = std::cos(s.theta) * std::cos(s.phi);
    if (std::abs(tilt) < kThrustSingularity) {
        throw Error(ErrorKind::singularity, "altitude control: cos(theta)cos(phi) near zero");
    }
    const double m = params.m;
    const double damping = law == ControlLaw::corrected ? gains.k1 * e.velocity.z() : gains.k1;
    const double feedforward = law == ControlLaw::corrected ? ref.acceleration.z() : 0.0;
    const double desired = feedforward - e.position.z() - gains.k2 * e.z1 - damping;

    const double coupling = m * s.q * s.vx - m * s.p * s.vy;
    const double gravity = params.gravity_sign * m * params.g * tilt;
    return (m * desired - coupling - gravity + tension_z + params.drag_z * s.vz) / tilt;
}

double roll_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                    const GainSet& gains, const UavParams& params, ControlLaw law) {
    const double coupling = s.q * s.r * params.iyy - s.q * s.r * params.izz;
    if (law == ControlLaw::printed) {
        return params.ixx * (-gains.k3 * e.z2 - e.attitude.x() - gains.k3) + coupling;
    }
    return params.ixx * (ref.attitude_accel.x() - gains.k4 * e.z2 - e.attitude.x() -
                         gains.k3 * e.attitude_rate.x()) +
           coupling;
}

double pitch_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                     const GainSet& gains, const UavParams& params, ControlLaw law) {
    const double coupling = s.p * s.r * params.ixx + s.p * s.r * params.izz;
    if (law == ControlLaw::printed) {
        return params.iyy * (-gains.k6 * e.z3 - e.attitude.y() - gains.k5) + coupling;
    }
    return params.iyy * (ref.attitude_accel.y() - gains.k6 * e.z3 - e.attitude.y() -
                         gains.k5 * e.attitude_rate.y()) +
           coupling;
}

double yaw_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                   const GainSet& gains, const UavParams& params, ControlLaw law) {
    const double coupling = -s.p * s.q * params.ixx + s.p * s.q * params.iyy;
    if (law == ControlLaw::printed) {
        return params.izz * (-gains.k8 * e.z4 - e.attitude.z() - gains.k7) + coupling;
    }
    return params.izz * (ref.attitude_accel.z() - gains.k8 * e.z4 - e.attitude.z() -
                         gains.k7 * e.attitude_rate.z()) +
           coupling;
}

AttitudeCommand position_control(const UavState& s, const ErrorVector& e,
                                 const ReferenceSignal& ref, const GainSet& gains, double thrust,
                                 const TensionVector& tension, const UavParams& params) {
    if (!(std::abs(thrust) >= 1e-6)) {
        throw Error(ErrorKind::singularity, "position control: thrust too small to invert");
    }
    const double ax = ref.acceleration.x() - e.position.x() - gains.kx2 * e.z5 -
                      gains.kx1 * e.velocity.x();
    const double ay = ref.acceleration.y() - e.position.y() - gains.ky2 * e.z6 -
                      gains.ky1 * e.velocity.y();

    // Specific force the thrust must supply once the other terms of the
    // horizontal rows are accounted for.
    const Eigen::Vector3d& t = tension.components;
    double fx = ax - (s.r * s.vy - s.q * s.vz) + (t.x() + params.drag_x * s.vx) / params.m;
    double fy = ay - (s.r * s.vx - s.p * s.vz) - (t.y() - params.drag_y * s.vy) / params.m;
    if (params.horizontal_gravity) {
        fx += params.g * std::sin(s.theta);
        fy += params.g * std::cos(s.theta) * std::sin(s.phi);
    }

    const double scale = params.m / thrust;
    const double cp = std::cos(s.psi), sp = std::sin(s.psi);
    AttitudeCommand cmd;
    cmd.phi = std::clamp(scale * (fx * sp - fy * cp), -kMaxTiltCommand, kMaxTiltCommand);
    cmd.theta = std::clamp(scale * (fx * cp + fy * sp), -kMaxTiltCommand, kMaxTiltCommand);
    return cmd;
}

double winder_control(const WinderState& w, const ErrorVector& e, const ReferenceSignal& ref,
                      const GainSet& gains, const WinderParams& winder, ControlLaw law) {
    const double inertia = winch_inertia_at(winder, w.theta);
    double desired = 0.0;
    if (law == ControlLaw::printed) {
        desired = -e.winch_angle - gains.kw2 * e.z7 - gains.kw * w.theta;
    } else {
        desired = ref.length_accel / winder.r_w - e.winch_angle - gains.kw2 * e.z7 -
                  gains.kw * e.winch_rate;
    }
    return (inertia * desired + winder.beta_w * w.theta_dot) / winder.r_w;
}

LyapunovSample lyapunov_sample(const ErrorVector& e) {
    LyapunovSample v;
    v.v_c1 = 0.5 * e.position.z() * e.position.z() + 0.5 * e.z1 * e.z1;
    v.v_c2 = 0.5 * e.attitude.x() * e.attitude.x() + 0.5 * e.z2 * e.z2;
    v.v_c12 = 0.5 * e.winch_angle * e.winch_angle + 0.5 * e.z7 * e.z7;
    return v;
}

} // namespace tuav
