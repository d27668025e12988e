#include "tuav/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <type_traits>
#include <variant>

#include "tuav/error.hpp"

namespace tuav {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::config, what); }

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double parse_number(const std::string& key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
        config_error(key + ": expected a finite number, got '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    config_error(key + ": expected true or false, got '" + std::string(text) + "'");
}

template <int N>
Eigen::Matrix<double, N, 1> parse_vector(const std::string& key, std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != static_cast<std::size_t>(N)) {
        config_error(key + ": expected " + std::to_string(N) + " comma-separated numbers");
    }
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) {
        v[i] = parse_number(key, parts[static_cast<std::size_t>(i)]);
    }
    return v;
}

template <typename Spec>
Spec& trajectory_as(SimConfig& c, const std::string& key, const char* kind) {
    auto* spec = std::get_if<Spec>(&c.trajectory);
    if (spec == nullptr) {
        config_error(key + ": only valid when trajectory.type = " + kind);
    }
    return *spec;
}

using Setter = std::function<void(SimConfig&, const std::string&, std::string_view)>;

template <typename F>
Setter num(F assign) {
    return [assign](SimConfig& c, const std::string& key, std::string_view v) {
        assign(c, parse_number(key, v));
    };
}

template <typename F>
Setter flag(F assign) {
    return [assign](SimConfig& c, const std::string& key, std::string_view v) {
        assign(c, parse_bool(key, v));
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["sim.dt"] = num([](SimConfig& c, double v) { c.dt = v; });
        t["sim.duration"] = num([](SimConfig& c, double v) { c.duration = v; });
        t["sim.integrator"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            if (v == "rk4") c.integrator = Integrator::rk4;
            else if (v == "euler") c.integrator = Integrator::euler;
            else config_error(key + ": expected rk4 or euler");
        };
        t["sim.control_update"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            if (v == "continuous") c.control_update = ControlUpdate::continuous;
            else if (v == "zoh" || v == "zero_order_hold") c.control_update = ControlUpdate::zero_order_hold;
            else config_error(key + ": expected continuous or zoh");
        };

        // Initial state.
        t["init.position"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            const Eigen::Vector3d p = parse_vector<3>(key, v);
            c.initial.uav.x = p.x();
            c.initial.uav.y = p.y();
            c.initial.uav.z = p.z();
        };
        t["init.velocity"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            const Eigen::Vector3d p = parse_vector<3>(key, v);
            c.initial.uav.vx = p.x();
            c.initial.uav.vy = p.y();
            c.initial.uav.vz = p.z();
        };
        t["init.attitude"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            const Eigen::Vector3d p = parse_vector<3>(key, v);
            c.initial.uav.phi = p.x();
            c.initial.uav.theta = p.y();
            c.initial.uav.psi = p.z();
        };
        t["init.rates"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            const Eigen::Vector3d p = parse_vector<3>(key, v);
            c.initial.uav.p = p.x();
            c.initial.uav.q = p.y();
            c.initial.uav.r = p.z();
        };
        t["init.winch_angle"] = num([](SimConfig& c, double v) { c.initial.winch_angle = v; });
        t["init.winch_rate"] = num([](SimConfig& c, double v) { c.initial.winch_rate = v; });

        // Trajectory parameters; trajectory.type is handled before these.
        t["trajectory.position"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<SetpointSpec>(c, key, "setpoint").position = parse_vector<3>(key, v);
        };
        t["trajectory.yaw"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            const double yaw = parse_number(key, v);
            std::visit(
                [&](auto& spec) {
                    using S = std::decay_t<decltype(spec)>;
                    if constexpr (std::is_same_v<S, LinearSpec>) {
                        spec.start_yaw = yaw;
                        spec.end_yaw = yaw;
                    } else {
                        spec.yaw = yaw;
                    }
                },
                c.trajectory);
        };
        t["trajectory.start"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<LinearSpec>(c, key, "linear").start = parse_vector<3>(key, v);
        };
        t["trajectory.end"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<LinearSpec>(c, key, "linear").end = parse_vector<3>(key, v);
        };
        t["trajectory.speed"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<LinearSpec>(c, key, "linear").speed = parse_number(key, v);
        };
        t["trajectory.accel"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<LinearSpec>(c, key, "linear").accel = parse_number(key, v);
        };
        t["trajectory.start_yaw"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<LinearSpec>(c, key, "linear").start_yaw = parse_number(key, v);
        };
        t["trajectory.end_yaw"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<LinearSpec>(c, key, "linear").end_yaw = parse_number(key, v);
        };
        t["trajectory.radius"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<CircularSpec>(c, key, "circular").radius = parse_number(key, v);
        };
        t["trajectory.omega"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<CircularSpec>(c, key, "circular").omega = parse_number(key, v);
        };
        t["trajectory.altitude"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<CircularSpec>(c, key, "circular").altitude = parse_number(key, v);
        };
        t["trajectory.center"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<CircularSpec>(c, key, "circular").center = parse_vector<2>(key, v);
        };
        t["trajectory.points"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            auto& spec = trajectory_as<WaypointSpec>(c, key, "waypoints");
            spec.points.clear();
            for (auto point : split(v, ';')) {
                if (!point.empty()) {
                    spec.points.push_back(parse_vector<3>(key, point));
                }
            }
        };
        t["trajectory.tolerance"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            trajectory_as<WaypointSpec>(c, key, "waypoints").tolerance = parse_number(key, v);
        };

        // Gains.
        const std::pair<const char*, double GainSet::*> gains[] = {
            {"k1", &GainSet::k1},   {"k2", &GainSet::k2},   {"k3", &GainSet::k3},
            {"k4", &GainSet::k4},   {"k5", &GainSet::k5},   {"k6", &GainSet::k6},
            {"k7", &GainSet::k7},   {"k8", &GainSet::k8},   {"kw", &GainSet::kw},
            {"kw2", &GainSet::kw2}, {"kx1", &GainSet::kx1}, {"kx2", &GainSet::kx2},
            {"ky1", &GainSet::ky1}, {"ky2", &GainSet::ky2}};
        for (const auto& [name, member] : gains) {
            t[std::string("gains.") + name] =
                num([member = member](SimConfig& c, double v) { c.gains.*member = v; });
        }

        // UAV.
        const std::pair<const char*, double UavParams::*> uav[] = {
            {"m", &UavParams::m},           {"g", &UavParams::g},
            {"ixx", &UavParams::ixx},       {"iyy", &UavParams::iyy},
            {"izz", &UavParams::izz},       {"drag_x", &UavParams::drag_x},
            {"drag_y", &UavParams::drag_y}, {"drag_z", &UavParams::drag_z}};
        for (const auto& [name, member] : uav) {
            t[std::string("uav.") + name] =
                num([member = member](SimConfig& c, double v) { c.uav.*member = v; });
        }
        t["uav.gravity_sign"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            const double sign = parse_number(key, v);
            if (sign != 1.0 && sign != -1.0) config_error(key + ": must be +1 or -1");
            c.uav.gravity_sign = static_cast<int>(sign);
        };
        t["uav.horizontal_gravity"] = flag([](SimConfig& c, bool v) { c.uav.horizontal_gravity = v; });

        // Winder and tether.
        const std::pair<const char*, double WinderParams::*> winder[] = {
            {"drum_mass", &WinderParams::drum_mass}, {"r_w", &WinderParams::r_w},
            {"r_i", &WinderParams::r_i},             {"beta_w", &WinderParams::beta_w},
            {"k_t", &WinderParams::k_t}};
        for (const auto& [name, member] : winder) {
            t[std::string("winder.") + name] =
                num([member = member](SimConfig& c, double v) { c.winder.*member = v; });
        }
        t["winder.r_e"] = num([](SimConfig& c, double v) { c.winder.r_e = v; });
        t["winder.inelastic"] = flag([](SimConfig& c, bool v) { c.winder.inelastic = v; });
        t["tether.rho"] = num([](SimConfig& c, double v) { c.material.rho = v; });
        t["tether.area"] = num([](SimConfig& c, double v) { c.material.area = v; });
        t["tether.max_length"] = num([](SimConfig& c, double v) { c.material.max_length = v; });

        // Controller.
        t["controller.law"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            if (v == "corrected") c.controller.law = ControlLaw::corrected;
            else if (v == "printed") c.controller.law = ControlLaw::printed;
            else config_error(key + ": expected corrected or printed");
        };
        t["controller.lbar"] = [](SimConfig& c, const std::string& key, std::string_view v) {
            if (v == "slack") c.controller.lbar.kind = LbarPolicy::Kind::slack;
            else if (v == "catenary") c.controller.lbar.kind = LbarPolicy::Kind::catenary;
            else config_error(key + ": expected slack or catenary");
        };
        t["controller.slack_factor"] =
            num([](SimConfig& c, double v) { c.controller.lbar.slack_factor = v; });
        t["controller.catenary_t0"] =
            num([](SimConfig& c, double v) { c.controller.lbar.horizontal_tension = v; });
        t["controller.tilt_filter_omega"] =
            num([](SimConfig& c, double v) { c.controller.tilt_filter_omega = v; });
        t["controller.winder_enabled"] =
            flag([](SimConfig& c, bool v) { c.controller.winder_enabled = v; });
        t["limits.thrust"] = num([](SimConfig& c, double v) { c.controller.limits.thrust = v; });
        t["limits.moment"] = num([](SimConfig& c, double v) { c.controller.limits.moment = v; });
        t["limits.winch"] = num([](SimConfig& c, double v) { c.controller.limits.winch = v; });
        return t;
    }();
    return table;
}

void set_trajectory_type(SimConfig& c, std::string_view v) {
    if (v == "setpoint") c.trajectory = SetpointSpec{};
    else if (v == "linear") c.trajectory = LinearSpec{};
    else if (v == "circular") c.trajectory = CircularSpec{};
    else if (v == "waypoints") c.trajectory = WaypointSpec{};
    else config_error("trajectory.type: expected setpoint, linear, circular or waypoints");
}

UavState at_rest(double x, double y, double z) {
    UavState s{};
    s.x = x;
    s.y = y;
    s.z = z;
    return s;
}

} // namespace

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names{"setpoint", "linear", "circular", "waypoints",
                                                "winder-decay"};
    return names;
}

SimConfig builtin_scenario(const std::string& name) {
    SimConfig c;
    c.scenario = name;
    c.duration = 30.0;
    c.initial.uav = at_rest(0.5, -0.5, 1.0);
    if (name == "setpoint") {
        c.trajectory = SetpointSpec{};
    } else if (name == "linear") {
        c.trajectory = LinearSpec{};
    } else if (name == "circular") {
        // Starts on the circle; two full periods after a short transient.
        const CircularSpec spec;
        c.trajectory = spec;
        c.initial.uav = at_rest(spec.center.x() + spec.radius, spec.center.y(), spec.altitude);
        c.duration = std::ceil(5.0 + 4.0 * std::numbers::pi / spec.omega);
    } else if (name == "waypoints") {
        c.trajectory = WaypointSpec{};
        c.duration = 60.0;
    } else if (name == "winder-decay") {
        // Winch coasting with the drive disabled while the UAV holds hover
        // directly above the anchor.
        SetpointSpec hover;
        hover.position = {0.0, 0.0, 5.0};
        c.trajectory = hover;
        c.initial.uav = at_rest(0.0, 0.0, 5.0);
        c.initial.winch_angle = 5.0 / c.winder.r_w;
        c.initial.winch_rate = 2.0;
        c.controller.winder_enabled = false;
        c.duration = 10.0;
    } else {
        config_error("scenario: unknown scenario '" + name + "'");
    }
    return c;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys{"scenario", "trajectory.type"};
    for (const auto& [key, setter] : setters()) {
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

SimConfig parse_config_text(std::string_view text) {
    struct Entry {
        std::string key;
        std::string value;
        int line;
    };
    std::vector<Entry> entries;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (!line.empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty()) {
                config_error("line " + std::to_string(line_no) + ": missing key before '='");
            }
            if (key != "scenario" && key != "trajectory.type" && setters().count(key) == 0) {
                config_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            }
            entries.push_back({key, value, line_no});
        }
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }

    auto with_line = [](const Entry& e, auto&& apply) {
        try {
            apply();
        } catch (const Error& err) {
            config_error("line " + std::to_string(e.line) + ": " + err.what());
        }
    };

    SimConfig config;
    for (const auto& e : entries) {
        if (e.key == "scenario") {
            with_line(e, [&] { config = builtin_scenario(e.value); });
        }
    }
    for (const auto& e : entries) {
        if (e.key == "trajectory.type") {
            with_line(e, [&] { set_trajectory_type(config, e.value); });
        }
    }
    for (const auto& e : entries) {
        if (e.key != "scenario" && e.key != "trajectory.type") {
            with_line(e, [&] { setters().at(e.key)(config, e.key, e.value); });
        }
    }
    config.validate();
    return config;
}

SimConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io, "cannot read config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

} // namespace tuav
