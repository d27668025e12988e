// Backstepping control laws for the tethered UAV and its winch, the error
// junction that feeds them and the composite Lyapunov functions that certify
// each loop.
//
// Every law follows the same two-step construction. For a tracking error e
// with virtual control  e_dot = -k_a e,  the transform  z = e_dot + k_a e  is
// driven by  z_dot = -e - k_b z,  which gives the composite function
// V = e^2/2 + z^2/2 the derivative  -k_a e^2 - k_b z^2.
#pragma once

#include <limits>
#include <numbers>

#include <Eigen/Core>

#include "tuav/catenary.hpp"
#include "tuav/uav_dynamics.hpp"
#include "tuav/winder.hpp"

namespace tuav {

/// Selects between the derivative-corrected laws and the printed variants in
/// which the virtual-control derivative appears as a bare gain (-k1, -k3, -k5,
/// -k7) or, for the winch, as -kw times the raw drum angle. The printed
/// variants drop reference feedforward and do not hold the origin.
enum class ControlLaw { corrected, printed };

struct GainSet {
    double k1 = 2.0, k2 = 2.0; ///< altitude
    double k3 = 2.0, k4 = 2.0; ///< roll
    double k5 = 2.0, k6 = 2.0; ///< pitch
    double k7 = 2.0, k8 = 2.0; ///< yaw
    double kw = 2.0, kw2 = 2.0; ///< winch
    double kx1 = 1.5, kx2 = 1.5; ///< x cascade
    double ky1 = 1.5, ky2 = 1.5; ///< y cascade

    void validate() const;
};

/// Desired trajectory with the feedforward derivatives the laws consume.
/// Attitude vectors are ordered (phi, theta, psi).
struct ReferenceSignal {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
    Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
    Eigen::Vector3d attitude = Eigen::Vector3d::Zero();
    Eigen::Vector3d attitude_rate = Eigen::Vector3d::Zero();
    Eigen::Vector3d attitude_accel = Eigen::Vector3d::Zero();
    double length = 0.0; ///< L_bar [m]
    double length_rate = 0.0;
    double length_accel = 0.0;
};

/// Errors are actual - desired. z1..z4 belong to altitude, roll, pitch and yaw,
/// z5/z6 to the x/y cascade and z7 to the winch.
struct ErrorVector {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
    Eigen::Vector3d attitude = Eigen::Vector3d::Zero();
    Eigen::Vector3d attitude_rate = Eigen::Vector3d::Zero();
    double length = 0.0;      ///< e_L = r_w x13 - L_bar [m]
    double length_rate = 0.0;
    double winch_angle = 0.0; ///< e_L / r_w [rad]
    double winch_rate = 0.0;
    double z1 = 0.0, z2 = 0.0, z3 = 0.0, z4 = 0.0, z5 = 0.0, z6 = 0.0, z7 = 0.0;
};

struct LyapunovSample {
    double v_c1 = 0.0;  ///< altitude
    double v_c2 = 0.0;  ///< roll
    double v_c12 = 0.0; ///< winch
    double dv_c1 = std::numeric_limits<double>::quiet_NaN();
    double dv_c2 = std::numeric_limits<double>::quiet_NaN();
    double dv_c12 = std::numeric_limits<double>::quiet_NaN();
};

struct LbarPolicy {
    enum class Kind { slack, catenary };
    Kind kind = Kind::slack;
    double slack_factor = 1.05;      ///< sigma for the slack policy
    double horizontal_tension = 5.0; ///< T0 [N] for the catenary policy
};

struct AttitudeCommand {
    double phi = 0.0;
    double theta = 0.0;
};

/// |cos(theta) cos(phi)| below this makes the thrust inversion singular.
inline constexpr double kThrustSingularity = 1e-3;
/// Tilt references produced by the position cascade are clamped to this.
inline constexpr double kMaxTiltCommand = std::numbers::pi / 6.0;

ErrorVector error_junction(const FullState& state, const ReferenceSignal& ref, const GainSet& gains,
                           const WinderParams& winder);

/// Desired tether length for a UAV at `position`; over_length error beyond L_T.
double lbar_estimator(const Eigen::Vector3d& position, const LbarPolicy& policy,
                      const TetherMaterial& material);

/// U_f. `tension_z` is the vertical tension component the plant subtracts.
/// Throws Error(singularity) when |cos(theta) cos(phi)| < kThrustSingularity.
double altitude_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                        const GainSet& gains, double tension_z, const UavParams& params,
                        ControlLaw law = ControlLaw::corrected);

double roll_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                    const GainSet& gains, const UavParams& params,
                    ControlLaw law = ControlLaw::corrected);

double pitch_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                     const GainSet& gains, const UavParams& params,
                     ControlLaw law = ControlLaw::corrected);

double yaw_control(const UavState& s, const ErrorVector& e, const ReferenceSignal& ref,
                   const GainSet& gains, const UavParams& params,
                   ControlLaw law = ControlLaw::corrected);

/// x/y backstepping cascade. Produces the horizontal specific force that
/// cancels drag, tension and the printed velocity couplings and inverts it to
/// roll/pitch references with the small-angle thrust map.
/// Throws Error(singularity) when |thrust| is too small to invert.
AttitudeCommand position_control(const UavState& s, const ErrorVector& e,
                                 const ReferenceSignal& ref, const GainSet& gains, double thrust,
                                 const TensionVector& tension, const UavParams& params);

/// U_win acting on the winch-angle error e_L / r_w.
double winder_control(const WinderState& w, const ErrorVector& e, const ReferenceSignal& ref,
                      const GainSet& gains, const WinderParams& winder,
                      ControlLaw law = ControlLaw::corrected);

/// V_c1, V_c2 and V_c12 from the current errors; derivatives are left NaN.
LyapunovSample lyapunov_sample(const ErrorVector& e);

/// Second-order critically damped command filter used to turn the cascade's
/// tilt commands into references with known rate and acceleration.
inline double command_filter_accel(double value, double rate, double command, double omega) {
    return omega * omega * (command - value) - 2.0 * omega * rate;
}

} // namespace tuav
