// Ground winch: spool mass and inertia as functions of released tether, the
// elastic pulling force and the rotational equation of motion.
#pragma once

#include <optional>

#include <Eigen/Core>

namespace tuav {

struct WinderParams {
    double drum_mass = 1.2;   ///< winch mass without tether [kg]
    double rho = 0.034;       ///< tether linear density [kg/m]
    double max_length = 30.0; ///< L_T [m]
    double r_w = 0.05;        ///< effective winch radius [m]
    double r_i = 0.03;        ///< inner drum radius [m]
    double beta_w = 0.01;     ///< viscous friction [N m s]
    double k_t = 100.0;       ///< tether stiffness [N/m]
    std::optional<double> r_e; ///< force moment arm [m]; r_w when unset
    bool inelastic = true;    ///< drop the pulling-force term from the winch dynamics

    double moment_arm() const { return r_e.value_or(r_w); }

    /// Throws Error(domain) unless all scalars are positive and 0 < r_i <= r_w.
    void validate() const;
};

/// x13 and x14.
struct WinderState {
    double theta = 0.0;     ///< drum angle [rad]
    double theta_dot = 0.0; ///< drum rate [rad/s]
};

/// Tether paid out for a drum angle, r_w * theta.
inline double released_length(const WinderParams& params, double theta) {
    return params.r_w * theta;
}

/// m_w = m_bar + (L_T - r_w theta) rho. Throws Error(domain) when the released
/// length leaves [0, L_T].
double winch_mass(const WinderParams& params, double theta);

/// I_w = m_w (r_w^2 + r_i^2) / 2.
double winch_inertia(double mass, double r_w, double r_i);

/// Inertia at drum angle theta, with theta clamped onto the spool range.
double winch_inertia_at(const WinderParams& params, double theta);

/// e_t = max(0, |p1 - p0| - r_w theta).
double tether_elongation(const Eigen::Vector3d& uav, const Eigen::Vector3d& anchor, double r_w,
                         double theta);

/// F_p = K_t e_t (p1 - p0)/|p1 - p0|; the zero vector for an inelastic cable.
Eigen::Vector3d pulling_force(const WinderParams& params, double elongation,
                              const Eigen::Vector3d& uav, const Eigen::Vector3d& anchor);

/// Drum angular acceleration. Elastic:  (r_e |F_p| - beta_w theta_dot + r_w U_win)/I_w,
/// inelastic: (-beta_w theta_dot + r_w U_win)/I_w, with I_w taken at state.theta.
double winch_accel(const WinderParams& params, const WinderState& state, double pull_norm,
                   double torque);

} // namespace tuav
