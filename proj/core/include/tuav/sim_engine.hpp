// Fixed-step closed-loop simulation of the tethered UAV.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "tuav/catenary.hpp"
#include "tuav/controllers.hpp"
#include "tuav/error.hpp"
#include "tuav/trajectory.hpp"
#include "tuav/uav_dynamics.hpp"
#include "tuav/winder.hpp"

namespace tuav {

enum class Integrator { rk4, euler };

/// continuous: the controllers are re-evaluated at every integrator stage.
/// zero_order_hold: inputs and tension are computed once per tick and held.
enum class ControlUpdate { continuous, zero_order_hold };

namespace detail {

template <typename State>
bool all_finite(const State& x) {
    if constexpr (std::is_arithmetic_v<State>) {
        return std::isfinite(x);
    } else {
        return x.allFinite();
    }
}

} // namespace detail

/// One step of x' = f(t, x). Throws Error(numerical_blowup) when a stage
/// derivative or the result is not finite.
template <typename State, typename Derivative>
State integrate_step(const Derivative& f, double t, const State& x, double dt,
                     Integrator method = Integrator::rk4) {
    if (!(dt > 0.0)) {
        throw Error(ErrorKind::domain, "integrate_step: dt must be > 0");
    }
    auto checked = [](const State& d) -> State {
        if (!detail::all_finite(d)) {
            throw Error(ErrorKind::numerical_blowup, "non-finite state derivative");
        }
        return d;
    };
    State next;
    if (method == Integrator::euler) {
        next = x + dt * checked(f(t, x));
    } else {
        const State k1 = checked(f(t, x));
        const State k2 = checked(f(t + 0.5 * dt, State(x + (0.5 * dt) * k1)));
        const State k3 = checked(f(t + 0.5 * dt, State(x + (0.5 * dt) * k2)));
        const State k4 = checked(f(t + dt, State(x + dt * k3)));
        next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!detail::all_finite(next)) {
        throw Error(ErrorKind::numerical_blowup, "non-finite state after integration step");
    }
    return next;
}

struct InitialCondition {
    UavState uav{0.5, 0.0, -0.5, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    /// Drum angle; when unset the winch starts at L_bar(initial position)/r_w.
    std::optional<double> winch_angle;
    double winch_rate = 0.0;
};

struct ControllerOptions {
    ControlLaw law = ControlLaw::corrected;
    LbarPolicy lbar;
    double tilt_filter_omega = 10.0; ///< natural frequency of the tilt command filter [rad/s]
    bool winder_enabled = true;
    InputLimits limits;
};

struct SimConfig {
    std::string scenario = "setpoint";
    double dt = 1e-3;
    double duration = 30.0;
    Integrator integrator = Integrator::rk4;
    ControlUpdate control_update = ControlUpdate::continuous;
    InitialCondition initial;
    TrajectorySpec trajectory = SetpointSpec{};
    GainSet gains;
    UavParams uav;
    WinderParams winder;
    TetherMaterial material;
    ControllerOptions controller;

    /// Throws Error(config) naming the violated invariant.
    void validate() const;

    /// Copy with the winder and material sharing one tether density, one
    /// spool capacity and the UAV's gravity.
    SimConfig synchronized() const;

    /// Number of rows a complete run logs: floor(duration/dt) + 1.
    std::size_t row_count() const;
};

struct LogRow {
    double t = 0.0;
    FullState state;
    ReferenceSignal ref;
    ErrorVector error;
    ControlInputs input;
    double length = 0.0;     ///< released tether r_w x13 [m]
    double length_ref = 0.0; ///< L_bar [m]
    LyapunovSample lyapunov;
    TensionVector tension;
    bool tension_held = false; ///< catenary fit failed; previous tension reused
};

struct SimEvent {
    double t = 0.0;
    std::string kind;
    std::string detail;
};

struct SimFailure {
    ErrorKind kind = ErrorKind::numerical_blowup;
    double t = 0.0;
    std::string message;
};

struct SimLog {
    double dt = 0.0;
    std::vector<LogRow> rows;
    std::vector<SimEvent> events;
    std::optional<SimFailure> failure;

    bool ok() const { return !failure.has_value(); }
};

/// Runs the closed loop. Failures stop the run and are recorded in
/// SimLog::failure; rows logged before the failure are kept.
SimLog run_closed_loop(const SimConfig& config);

/// Fills the Lyapunov rates by central differences (one-sided at the ends).
void fill_lyapunov_rates(SimLog& log);

} // namespace tuav
