#include "tuav/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tuav {

namespace {

// Plant states followed by the tilt command filter (phi_bar, phi_bar_dot,
// theta_bar, theta_bar_dot).
using LoopVector = Eigen::Matrix<double, 18, 1>;

struct Evaluation {
    ReferenceSignal ref;
    ErrorVector error;
    ControlInputs input;
    TensionVector tension;
    bool tension_fresh = false;
    LoopVector derivative;
};

class ClosedLoop {
public:
    explicit ClosedLoop(const SimConfig& config)
        : config_(config), references_(config.trajectory, config.controller.lbar, config.material) {}

    ReferenceGenerator& references() { return references_; }

    // Full controller evaluation at (t, x). `fallback` is the tension used when
    // the catenary cannot be fitted.
    Evaluation evaluate(double t, const LoopVector& x, const TensionVector& fallback) const {
        const FullState state = FullState::from_vector(x.head<14>());
        const auto& ctl = config_.controller;

        Evaluation ev;
        ev.ref = references_.at(t);
        ev.ref.attitude.x() = x[14];
        ev.ref.attitude_rate.x() = x[15];
        ev.ref.attitude.y() = x[16];
        ev.ref.attitude_rate.y() = x[17];

        try {
            ev.tension = tether_tension(Eigen::Vector3d::Zero(), state.uav.position(),
                                        released_length(config_.winder, state.winder.theta),
                                        config_.material);
            ev.tension_fresh = true;
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::convergence && !is_geometry_error(err.kind())) {
                throw;
            }
            ev.tension = fallback;
        }

        ev.error = error_junction(state, ev.ref, config_.gains, config_.winder);
        const double thrust = altitude_control(state.uav, ev.error, ev.ref, config_.gains,
                                               ev.tension.components.z(), config_.uav, ctl.law);
        const AttitudeCommand tilt = position_control(state.uav, ev.error, ev.ref, config_.gains,
                                                      thrust, ev.tension, config_.uav);
        ev.ref.attitude_accel.x() =
            command_filter_accel(x[14], x[15], tilt.phi, ctl.tilt_filter_omega);
        ev.ref.attitude_accel.y() =
            command_filter_accel(x[16], x[17], tilt.theta, ctl.tilt_filter_omega);

        ControlInputs u;
        u.thrust = thrust;
        u.roll = roll_control(state.uav, ev.error, ev.ref, config_.gains, config_.uav, ctl.law);
        u.pitch = pitch_control(state.uav, ev.error, ev.ref, config_.gains, config_.uav, ctl.law);
        u.yaw = yaw_control(state.uav, ev.error, ev.ref, config_.gains, config_.uav, ctl.law);
        if (ctl.winder_enabled) {
            u.winch = winder_control(state.winder, ev.error, ev.ref, config_.gains, config_.winder,
                                     ctl.law);
        }
        ev.input = u.saturated(ctl.limits);
        ev.derivative = assemble(state, ev.input, ev.tension, ev.ref, x);
        return ev;
    }

    LoopVector held_derivative(const LoopVector& x, const Evaluation& held) const {
        return assemble(FullState::from_vector(x.head<14>()), held.input, held.tension, held.ref,
                        x);
    }

private:
    LoopVector assemble(const FullState& state, const ControlInputs& u,
                        const TensionVector& tension, const ReferenceSignal& ref,
                        const LoopVector& x) const {
        LoopVector d;
        d.head<14>() = full_derivative(state, u, tension, config_.uav, config_.winder);
        d[14] = x[15];
        d[15] = ref.attitude_accel.x();
        d[16] = x[17];
        d[17] = ref.attitude_accel.y();
        return d;
    }

    const SimConfig& config_;
    ReferenceGenerator references_;
};

LogRow make_row(double t, const LoopVector& x, const Evaluation& ev, const WinderParams& winder,
                bool held) {
    LogRow row;
    row.t = t;
    row.state = FullState::from_vector(x.head<14>());
    row.ref = ev.ref;
    row.error = ev.error;
    row.input = ev.input;
    row.length = released_length(winder, row.state.winder.theta);
    row.length_ref = ev.ref.length;
    row.lyapunov = lyapunov_sample(ev.error);
    row.tension = ev.tension;
    row.tension_held = held;
    return row;
}

} // namespace

void SimConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::config, what); };
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("sim.dt: must satisfy dt > 0");
    if (!(duration >= 0.0) || !std::isfinite(duration)) fail("sim.duration: must be >= 0");
    if (duration > 0.0 && duration < dt) fail("sim.duration: must satisfy duration >= dt");
    if (!(controller.tilt_filter_omega > 0.0)) {
        fail("controller.tilt_filter_omega: must be > 0");
    }
    if (!(controller.lbar.slack_factor > 1.0)) fail("controller.slack_factor: must be > 1");
    if (!(controller.lbar.horizontal_tension > 0.0)) fail("controller.catenary_t0: must be > 0");
    try {
        const SimConfig s = synchronized();
        s.uav.validate();
        s.winder.validate();
        s.material.validate();
        s.gains.validate();
        tuav::validate(s.trajectory);
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::config) throw;
        fail(err.what());
    }
    if (initial.winch_angle) {
        const double released = winder.r_w * *initial.winch_angle;
        if (released < 0.0 || released > material.max_length) {
            fail("init.winch_angle: released length must lie in [0, L_T]");
        }
    }
}

SimConfig SimConfig::synchronized() const {
    SimConfig s = *this;
    s.winder.rho = material.rho;
    s.winder.max_length = material.max_length;
    s.material.g = uav.g;
    return s;
}

std::size_t SimConfig::row_count() const {
    return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

SimLog run_closed_loop(const SimConfig& raw_config) {
    raw_config.validate();
    const SimConfig config = raw_config.synchronized();

    SimLog log;
    log.dt = config.dt;
    const std::size_t rows = config.row_count();
    log.rows.reserve(rows);

    ClosedLoop loop(config);
    double t = 0.0;
    try {
        loop.references().check_reach(config.duration);

        LoopVector x;
        FullState initial;
        initial.uav = config.initial.uav;
        initial.winder.theta_dot = config.initial.winch_rate;
        if (config.initial.winch_angle) {
            initial.winder.theta = *config.initial.winch_angle;
        } else {
            initial.winder.theta = lbar_estimator(initial.uav.position(), config.controller.lbar,
                                                  config.material) /
                                   config.winder.r_w;
        }
        x.head<14>() = initial.to_vector();
        x[14] = initial.uav.phi;
        x[15] = initial.uav.p;
        x[16] = initial.uav.theta;
        x[17] = initial.uav.q;

        TensionVector last_valid;
        bool held = false;
        bool clamped = false;
        const double theta_max = config.material.max_length / config.winder.r_w;

        for (std::size_t k = 0; k < rows; ++k) {
            t = static_cast<double>(k) * config.dt;
            const Evaluation ev = loop.evaluate(t, x, last_valid);
            if (ev.tension_fresh) {
                last_valid = ev.tension;
                if (held) {
                    log.events.push_back({t, "tension_restored", "catenary fit succeeded again"});
                }
            } else if (!held) {
                log.events.push_back({t, "tension_held", "catenary fit failed; holding tension"});
            }
            held = !ev.tension_fresh;
            log.rows.push_back(make_row(t, x, ev, config.winder, held));
            if (k + 1 == rows) {
                break;
            }

            if (config.control_update == ControlUpdate::continuous) {
                const TensionVector fallback = last_valid;
                x = integrate_step(
                    [&](double ts, const LoopVector& xs) {
                        return loop.evaluate(ts, xs, fallback).derivative;
                    },
                    t, x, config.dt, config.integrator);
            } else {
                x = integrate_step(
                    [&](double, const LoopVector& xs) { return loop.held_derivative(xs, ev); }, t,
                    x, config.dt, config.integrator);
            }

            const double next_t = static_cast<double>(k + 1) * config.dt;
            const bool out_of_range = x[12] < 0.0 || x[12] > theta_max;
            if (out_of_range) {
                x[12] = std::clamp(x[12], 0.0, theta_max);
                x[13] = 0.0;
                if (!clamped) {
                    log.events.push_back(
                        {next_t, "spool_stop", "winch angle clamped to spool range"});
                }
            }
            clamped = out_of_range;
            if (loop.references().advance(Eigen::Vector3d(x[0], x[2], x[4]))) {
                log.events.push_back({next_t, "waypoint",
                                      "target " + std::to_string(loop.references().waypoint_index())});
            }
        }
    } catch (const Error& err) {
        log.failure = SimFailure{err.kind(), t, err.what()};
    }
    fill_lyapunov_rates(log);
    return log;
}

void fill_lyapunov_rates(SimLog& log) {
    auto& rows = log.rows;
    const std::size_t n = rows.size();
    if (n < 2) {
        return;
    }
    auto rate = [&](auto member, std::size_t i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        return (rows[hi].lyapunov.*member - rows[lo].lyapunov.*member) /
               (rows[hi].t - rows[lo].t);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double d1 = rate(&LyapunovSample::v_c1, i);
        const double d2 = rate(&LyapunovSample::v_c2, i);
        const double d12 = rate(&LyapunovSample::v_c12, i);
        rows[i].lyapunov.dv_c1 = d1;
        rows[i].lyapunov.dv_c2 = d2;
        rows[i].lyapunov.dv_c12 = d12;
    }
}

} // namespace tuav
