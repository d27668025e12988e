// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails. argv[1] is the path of the tuav executable (used for the
// determinism check).
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ballistic.hpp"
#include "oracles.hpp"
#include "tuav/catenary.hpp"
#include "tuav/config.hpp"
#include "tuav/controllers.hpp"
#include "tuav/metrics.hpp"
#include "tuav/sim_engine.hpp"
#include "tuav/uav_dynamics.hpp"
#include "tuav/winder.hpp"

using namespace tuav;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

// Runs shared by several criteria.
struct Runs {
    SimLog setpoint, linear, circular;
    SimConfig circular_config;
};

const Runs& runs() {
    static const Runs r = [] {
        Runs out;
        out.setpoint = run_closed_loop(builtin_scenario("setpoint"));
        out.linear = run_closed_loop(builtin_scenario("linear"));
        out.circular_config = builtin_scenario("circular");
        out.circular = run_closed_loop(out.circular_config);
        return out;
    }();
    return r;
}

std::vector<std::pair<std::string, const SimLog*>> tracked_runs() {
    return {{"setpoint", &runs().setpoint},
            {"linear", &runs().linear},
            {"circular", &runs().circular}};
}

bool all_ok(std::string& detail) {
    for (const auto& [name, log] : tracked_runs()) {
        if (!log->ok()) {
            detail = name + " run failed: " + log->failure->message;
            return false;
        }
    }
    return true;
}

// Error series of every UAV state plus the tether length.
std::vector<std::pair<std::string, std::vector<double>>> state_errors(const SimLog& log) {
    std::vector<std::pair<std::string, std::vector<double>>> series{
        {"x", {}}, {"vx", {}}, {"y", {}}, {"vy", {}}, {"z", {}}, {"vz", {}},
        {"phi", {}}, {"p", {}}, {"theta", {}}, {"q", {}}, {"psi", {}}, {"r", {}}, {"L", {}}};
    for (const auto& row : log.rows) {
        const ErrorVector& e = row.error;
        const double values[] = {e.position.x(), e.velocity.x(), e.position.y(), e.velocity.y(),
                                 e.position.z(), e.velocity.z(), e.attitude.x(), e.attitude_rate.x(),
                                 e.attitude.y(), e.attitude_rate.y(), e.attitude.z(),
                                 e.attitude_rate.z(), e.length};
        for (std::size_t k = 0; k < series.size(); ++k) series[k].second.push_back(values[k]);
    }
    return series;
}

std::vector<double> times(const SimLog& log) {
    std::vector<double> t;
    for (const auto& row : log.rows) t.push_back(row.t);
    return t;
}

Outcome setpoint_stabilization() {
    const SimLog& log = runs().setpoint;
    if (!log.ok()) return {false, "run failed: " + log.failure->message};
    const auto t = times(log);
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, e] : state_errors(log)) {
        const ChannelMetrics m = channel_metrics(name, t, e);
        if (!m.settling_time) return {false, "e_" + name + " never settles"};
        if (*m.settling_time > worst) {
            worst = *m.settling_time;
            worst_name = name;
        }
    }
    return {worst <= 20.0, "slowest channel e_" + worst_name + fmt(" settles at %.3f s (limit 20 s)", worst)};
}

Outcome error_convergence() {
    const SimLog& log = runs().setpoint;
    if (!log.ok()) return {false, "run failed"};
    const LogRow& last = log.rows.back();
    const double worst = std::max(last.error.position.cwiseAbs().maxCoeff(),
                                  last.error.attitude.cwiseAbs().maxCoeff());
    return {std::abs(last.t - 30.0) < 1e-9 && worst < 1e-3,
            fmt("max terminal |e| = %.3g at t = %.1f s (limit 1e-3)", worst, last.t)};
}

Outcome linear_tracking() {
    const SimLog& log = runs().linear;
    if (!log.ok()) return {false, "run failed"};
    const Metrics m = compute_metrics(log, MetricOptions{0.02, 1e-3, 10.0});
    double pos = 0.0, att = 0.0;
    for (const char* c : {"e_x", "e_y", "e_z"}) pos = std::max(pos, m.channel(c).rms);
    for (const char* c : {"e_phi", "e_theta", "e_psi"}) att = std::max(att, m.channel(c).rms);
    return {pos < 0.05 && att < 0.02,
            fmt("worst RMS after 10 s: position %.3g m (limit 0.05), attitude %.3g rad (limit 0.02)", pos, att)};
}

Outcome circular_tracking() {
    const SimLog& log = runs().circular;
    if (!log.ok()) return {false, "run failed"};
    const auto& spec = std::get<CircularSpec>(runs().circular_config.trajectory);
    const double periods = 2.0 * 2.0 * std::numbers::pi / spec.omega;
    const double from = log.rows.back().t - periods;
    std::vector<double> t, radial;
    for (const auto& row : log.rows) {
        t.push_back(row.t);
        const Eigen::Vector2d d(row.state.uav.x - spec.center.x(), row.state.uav.y - spec.center.y());
        radial.push_back(d.norm() - spec.radius);
    }
    const double rms = windowed_rms(t, radial, from);
    return {from >= 5.0 - 1e-9 && rms < 0.05,
            fmt("radial RMS over [%.2f, %.2f] s = %.3g m (limit 0.05)", from, t.back(), rms)};
}

Outcome tether_dominance() {
    std::string detail;
    if (!all_ok(detail)) return {false, detail};
    double min_margin = 1e300, worst_tracking = 0.0;
    for (const auto& [name, log] : tracked_runs()) {
        for (const auto& row : log->rows) {
            min_margin = std::min(min_margin, row.length - row.state.uav.z);
            if (row.t > 10.0) worst_tracking = std::max(worst_tracking, std::abs(row.length - row.length_ref));
        }
    }
    return {min_margin >= 0.0 && worst_tracking < 0.02,
            fmt("min(L - z) = %.4g m, max |L - L_bar| after 10 s = %.3g m (limit 0.02)", min_margin,
                worst_tracking)};
}

Outcome lyapunov_certification() {
    std::string detail;
    if (!all_ok(detail)) return {false, detail};
    double worst = -1e300;
    for (const auto& [name, log] : tracked_runs()) {
        for (std::size_t i = 1; i < log->rows.size(); ++i) {
            const auto& v = log->rows[i].lyapunov;
            worst = std::max({worst, v.dv_c1, v.dv_c2, v.dv_c12});
        }
    }
    // Identity along the setpoint run. Rows where V_c1 has decayed to the
    // resolution of the altitude state (|e_z| near ulp(z)) are skipped.
    const SimLog& log = runs().setpoint;
    const GainSet k = builtin_scenario("setpoint").gains;
    double rel = 0.0;
    std::size_t checked = 0;
    for (std::size_t i = 1; i + 1 < log.rows.size(); ++i) {
        const LogRow& r = log.rows[i];
        if (r.lyapunov.v_c1 <= 1e-14) continue;
        const double ident = -k.k1 * r.error.position.z() * r.error.position.z() - k.k2 * r.error.z1 * r.error.z1;
        rel = std::max(rel, std::abs(r.lyapunov.dv_c1 - ident) / std::abs(ident));
        ++checked;
    }
    return {worst <= 1e-6 && rel <= 1e-4 && checked > 1000,
            fmt("max V_dot = %.3g (limit 1e-6); identity max rel error %.3g over %.0f rows (limit 1e-4)", worst,
                rel, static_cast<double>(checked))};
}

Outcome catenary_oracle() {
    auto g = oracle::rng(2024);
    double worst_len = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double span = oracle::uniform(g, 0.05, 20.0);
        const double rise = oracle::uniform(g, -10.0, 10.0);
        const double a = oracle::uniform(g, 0.5, 30.0);
        const double q = oracle::catenary_length_by_quadrature(span, rise, a);
        worst_len = std::max(worst_len, std::abs(arc_length(span, rise, a) / q - 1.0));
    }
    const double a = 2.0, span = 5.0;
    double worst_a = 0.0;
    for (double x0 : {0.5 * span, 0.1 * span, -0.4 * span, 1.3 * span}) {
        const double rise = a * std::cosh((span - x0) / a) - a * std::cosh(x0 / a);
        const double length =
            oracle::integrate([&](double s) { return std::cosh((s - x0) / a); }, 0.0, span);
        const CatenaryGeometry geom =
            fit_catenary(Eigen::Vector3d::Zero(), Eigen::Vector3d(span, 0.0, rise), length, 1e3);
        worst_a = std::max(worst_a, std::abs(geom.a - a));
    }
    return {worst_len < 1e-8 && worst_a < 1e-8,
            fmt("arc length vs quadrature max rel %.3g (limit 1e-8); fit recovers a within %.3g (limit 1e-8)",
                worst_len, worst_a)};
}

Outcome winder_decay() {
    const WinderParams w;
    const double theta = 100.0, rate0 = 2.0, dt = 1e-3;
    const double inertia = winch_inertia_at(w, theta);
    double rate = rate0;
    for (int k = 0; k < 1000; ++k) {
        rate = integrate_step([&](double, double r) { return winch_accel(w, {theta, r}, 0.0, 0.0); },
                              k * dt, rate, dt);
    }
    const double expected = rate0 * std::exp(-w.beta_w / inertia);
    const double rel = std::abs(rate / expected - 1.0);
    return {rel < 1e-6, fmt("theta_dot(1 s) = %.9f vs %.9f, rel error %.3g (limit 1e-6)", rate, expected, rel)};
}

Outcome kinematic_invariants() {
    auto g = oracle::rng(99);
    double orth = 0.0, det = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Matrix3d r = rotation_matrix(oracle::uniform(g, -4, 4), oracle::uniform(g, -4, 4),
                                                  oracle::uniform(g, -4, 4));
        orth = std::max(orth, (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
        det = std::max(det, std::abs(r.determinant() - 1.0));
    }
    const UavParams p;
    double asym = 0.0, min_eig = 1e300;
    for (int i = 0; i < 100; ++i) {
        const Eigen::Matrix3d j = generalized_inertia(oracle::uniform(g, -4, 4), oracle::uniform(g, -4, 4),
                                                      {p.ixx, p.iyy, p.izz});
        asym = std::max(asym, (j - j.transpose()).cwiseAbs().maxCoeff());
        min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(j).eigenvalues().minCoeff());
    }
    return {orth <= 1e-12 && det <= 1e-12 && asym <= 1e-12 && min_eig >= -1e-12,
            fmt("|R^T R - I| %.2g, |det R - 1| %.2g (limit 1e-12); J asymmetry %.2g", orth, det, asym) +
                fmt(", min eigenvalue %.3g", min_eig)};
}

Outcome integrator_order() {
    const auto s = ballistic::heavy_drag();
    const double e4 = ballistic::final_error(s, 4e-3);
    const double e2 = ballistic::final_error(s, 2e-3);
    const double e1 = ballistic::final_error(s, 1e-3);
    const double o1 = std::log2(e4 / e2), o2 = std::log2(e2 / e1);
    return {std::min(o1, o2) >= 3.8, fmt("observed order %.3f (4e-3 -> 2e-3), %.3f (2e-3 -> 1e-3); limit 3.8", o1, o2)};
}

Outcome determinism(const std::string& cli) {
    if (cli.empty()) return {false, "tuav executable path not given"};
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "tuav_acceptance_determinism";
    fs::remove_all(base);
    std::vector<std::string> contents;
    for (const char* sub : {"a", "b"}) {
        const fs::path dir = base / sub;
        const std::string cmd = "\"" + cli + "\" run --scenario setpoint --no-frames --out \"" + dir.string() +
                                "\" > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "run invocation failed"};
        std::ifstream in(dir / "telemetry.csv", std::ios::binary);
        contents.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    const bool same = !contents[0].empty() && contents[0] == contents[1];
    fs::remove_all(base);
    return {same, fmt("two runs wrote %.0f and %.0f bytes; ", static_cast<double>(contents[0].size()),
                      static_cast<double>(contents[1].size())) +
                      (same ? "byte-identical" : "outputs differ")};
}

Outcome printed_law_contrast() {
    auto derivative = [](ControlLaw law) {
        FullState s;
        s.uav.x = 1.0;
        s.uav.y = 1.0;
        s.uav.z = 5.0;
        ReferenceSignal ref;
        ref.position = {1.0, 1.0, 5.0};
        ref.length = 5.0;
        const GainSet k;
        const UavParams p;
        const WinderParams w;
        s.winder.theta = ref.length / w.r_w;
        const ErrorVector e = error_junction(s, ref, k, w);
        ControlInputs u;
        u.thrust = altitude_control(s.uav, e, ref, k, 0.0, p, law);
        u.roll = roll_control(s.uav, e, ref, k, p, law);
        u.pitch = pitch_control(s.uav, e, ref, k, p, law);
        u.yaw = yaw_control(s.uav, e, ref, k, p, law);
        u.winch = winder_control(s.winder, e, ref, k, w, law);
        return full_derivative(s, u, {}, p, w);
    };
    const StateVector printed = derivative(ControlLaw::printed);
    const StateVector corrected = derivative(ControlLaw::corrected);
    return {printed.norm() > 0.0 && corrected.norm() == 0.0,
            fmt("|x_dot| at zero error: printed %.4g, corrected %.1g", printed.norm(), corrected.norm())};
}

} // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"setpoint stabilization", setpoint_stabilization},
        {"error convergence", error_convergence},
        {"linear tracking", linear_tracking},
        {"circular tracking", circular_tracking},
        {"tether dominance and tracking", tether_dominance},
        {"lyapunov certification", lyapunov_certification},
        {"catenary oracle equivalence", catenary_oracle},
        {"winder decay oracle", winder_decay},
        {"kinematic invariants", kinematic_invariants},
        {"integrator order", integrator_order},
        {"determinism", [&] { return determinism(cli); }},
        {"printed-law contrast", printed_law_contrast},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
