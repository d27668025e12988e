// Rigid-body UAV model coupled to the tether and winch: the 14-state
// unified dynamics used by the closed-loop simulator.
#pragma once

#include <limits>

#include <Eigen/Core>

#include "tuav/catenary.hpp"
#include "tuav/winder.hpp"

namespace tuav {

struct UavParams {
    double m = 2.84;
    double g = 9.81;
    double ixx = 0.5192;
    double iyy = 0.4929;
    double izz = 0.0947;
    double drag_x = 0.1; ///< A_x [N s/m]
    double drag_y = 0.1;
    double drag_z = 0.1;
    /// Sign of the gravity term in the vertical row: -1 pulls down.
    int gravity_sign = -1;
    /// Keep the -mg sin(theta) and -mg cos(theta) sin(phi) terms in the
    /// horizontal rows. Off by default: with them, one horizontal axis loses
    /// thrust authority at hover.
    bool horizontal_gravity = false;

    void validate() const;
};

/// x1..x12 in state-space order.
struct UavState {
    double x = 0.0, vx = 0.0;
    double y = 0.0, vy = 0.0;
    double z = 0.0, vz = 0.0;
    double phi = 0.0, p = 0.0;
    double theta = 0.0, q = 0.0;
    double psi = 0.0, r = 0.0;

    Eigen::Vector3d position() const { return {x, y, z}; }
    Eigen::Vector3d velocity() const { return {vx, vy, vz}; }
    Eigen::Vector3d attitude() const { return {phi, theta, psi}; }
    Eigen::Vector3d rates() const { return {p, q, r}; }
};

using StateVector = Eigen::Matrix<double, 14, 1>;

struct FullState {
    UavState uav;
    WinderState winder;

    StateVector to_vector() const;
    static FullState from_vector(const StateVector& v);
};

struct InputLimits {
    double thrust = std::numeric_limits<double>::infinity();
    double moment = std::numeric_limits<double>::infinity();
    double winch = std::numeric_limits<double>::infinity();
};

struct ControlInputs {
    double thrust = 0.0; ///< U_f [N]
    double roll = 0.0;   ///< U_phi [N m]
    double pitch = 0.0;  ///< U_theta [N m]
    double yaw = 0.0;    ///< U_psi [N m]
    double winch = 0.0;  ///< U_win [N m]

    /// Symmetric clipping; unbounded limits leave the inputs untouched.
    ControlInputs saturated(const InputLimits& limits) const;
};

/// Body-to-inertial rotation, Z-Y-X Euler angles.
Eigen::Matrix3d rotation_matrix(double phi, double theta, double psi);

/// W_eta with omega = W_eta * (psi_dot, theta_dot, phi_dot).
Eigen::Matrix3d angular_velocity_map(double phi, double theta);

/// True when |det W_eta| = |cos(theta)| falls below `tolerance`.
bool is_gimbal_singular(double theta, double tolerance = 1e-9);

/// J = W_eta^T diag(inertia) W_eta.
Eigen::Matrix3d generalized_inertia(double phi, double theta, const Eigen::Vector3d& inertia);

/// (x_ddot, y_ddot, z_ddot).
Eigen::Vector3d translational_accel(const UavState& s, double thrust, const TensionVector& tension,
                                    const UavParams& params);

/// (phi_ddot, theta_ddot, psi_ddot).
Eigen::Vector3d rotational_accel(const UavState& s, const Eigen::Vector3d& moments,
                                 const UavParams& params);

/// Stacked 14-state derivative. Pure: equal arguments give bitwise-equal output.
StateVector full_derivative(const FullState& state, const ControlInputs& inputs,
                            const TensionVector& tension, const UavParams& uav,
                            const WinderParams& winder);

} // namespace tuav
