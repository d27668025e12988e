#include "tuav/telemetry.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tuav/error.hpp"

namespace tuav {

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out += buf;
}

std::ofstream open_for_writing(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::io, "cannot write '" + path + "'");
    }
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw Error(ErrorKind::io, "write to '" + path + "' failed");
    }
}

} // namespace

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> columns = [] {
        std::vector<std::string> c{"t"};
        for (int i = 1; i <= 14; ++i) {
            c.push_back("x" + std::to_string(i));
        }
        for (const char* name : {"x_ref", "y_ref", "z_ref", "phi_ref", "theta_ref", "psi_ref",
                                 "e_x", "e_y", "e_z", "e_phi", "e_theta", "e_psi", "e_L", "U_f",
                                 "U_phi", "U_theta", "U_psi", "U_win", "L", "L_bar", "V_c1",
                                 "V_c2", "V_c12"}) {
            c.emplace_back(name);
        }
        return c;
    }();
    return columns;
}

std::vector<double> csv_row(const LogRow& r) {
    std::vector<double> v;
    v.reserve(csv_columns().size());
    v.push_back(r.t);
    const StateVector x = r.state.to_vector();
    for (int i = 0; i < 14; ++i) {
        v.push_back(x[i]);
    }
    for (int i = 0; i < 3; ++i) v.push_back(r.ref.position[i]);
    for (int i = 0; i < 3; ++i) v.push_back(r.ref.attitude[i]);
    for (int i = 0; i < 3; ++i) v.push_back(r.error.position[i]);
    for (int i = 0; i < 3; ++i) v.push_back(r.error.attitude[i]);
    v.push_back(r.error.length);
    v.push_back(r.input.thrust);
    v.push_back(r.input.roll);
    v.push_back(r.input.pitch);
    v.push_back(r.input.yaw);
    v.push_back(r.input.winch);
    v.push_back(r.length);
    v.push_back(r.length_ref);
    v.push_back(r.lyapunov.v_c1);
    v.push_back(r.lyapunov.v_c2);
    v.push_back(r.lyapunov.v_c12);
    return v;
}

std::size_t export_csv(const SimLog& log, const std::string& path) {
    std::string text;
    const auto& columns = csv_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) text += ',';
        text += columns[i];
    }
    text += '\n';
    for (const LogRow& row : log.rows) {
        const auto values = csv_row(row);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) text += ',';
            append_number(text, values[i]);
        }
        text += '\n';
    }
    write_text_file(path, text);
    return log.rows.size();
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw Error(ErrorKind::io, "csv: missing column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io, "cannot read '" + path + "'");
    }
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::io, "csv '" + path + "' is empty");
    }
    {
        std::istringstream header(line);
        std::string name;
        while (std::getline(header, name, ',')) {
            table.header.push_back(name);
        }
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        row.reserve(table.header.size());
        const char* p = line.c_str();
        while (true) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p) {
                throw Error(ErrorKind::io, "csv line " + std::to_string(line_no) + ": bad number");
            }
            row.push_back(v);
            if (*end == '\0') break;
            if (*end != ',') {
                throw Error(ErrorKind::io, "csv line " + std::to_string(line_no) + ": bad separator");
            }
            p = end + 1;
        }
        if (row.size() != table.header.size()) {
            throw Error(ErrorKind::io, "csv line " + std::to_string(line_no) + ": expected " +
                                           std::to_string(table.header.size()) + " fields");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SimLog log_from_csv(const CsvTable& table) {
    const std::size_t t = table.column("t");
    const std::size_t ex = table.column("e_x"), ey = table.column("e_y"), ez = table.column("e_z");
    const std::size_t ephi = table.column("e_phi"), eth = table.column("e_theta");
    const std::size_t epsi = table.column("e_psi"), el = table.column("e_L");
    const std::size_t v1 = table.column("V_c1"), v2 = table.column("V_c2");
    const std::size_t v12 = table.column("V_c12");
    const std::size_t len = table.column("L"), lbar = table.column("L_bar");

    SimLog log;
    for (const auto& r : table.rows) {
        LogRow row;
        row.t = r[t];
        row.error.position = {r[ex], r[ey], r[ez]};
        row.error.attitude = {r[ephi], r[eth], r[epsi]};
        row.error.length = r[el];
        row.lyapunov.v_c1 = r[v1];
        row.lyapunov.v_c2 = r[v2];
        row.lyapunov.v_c12 = r[v12];
        row.length = r[len];
        row.length_ref = r[lbar];
        log.rows.push_back(row);
    }
    if (log.rows.size() > 1) {
        log.dt = log.rows[1].t - log.rows[0].t;
    }
    fill_lyapunov_rates(log);
    return log;
}

std::size_t export_frames(const SimLog& log, const std::string& path, std::size_t stride,
                          int samples, const TetherMaterial& material) {
    if (samples < 2) {
        throw Error(ErrorKind::domain, "export_frames: need at least 2 tether samples");
    }
    if (stride == 0) {
        throw Error(ErrorKind::domain, "export_frames: stride must be >= 1");
    }
    std::ofstream out = open_for_writing(path);
    const Eigen::Vector3d anchor = Eigen::Vector3d::Zero();
    std::size_t frames = 0;
    for (std::size_t i = 0; i < log.rows.size(); i += stride) {
        const LogRow& row = log.rows[i];
        const Eigen::Vector3d uav = row.state.uav.position();
        std::vector<Eigen::Vector3d> polyline;
        bool degenerate = false;
        try {
            const CatenaryGeometry geom = fit_catenary(anchor, uav, row.length, material.max_length);
            polyline = sample_catenary(anchor, uav, geom, samples);
        } catch (const Error&) {
            degenerate = true;
            polyline.clear();
            for (int k = 0; k < samples; ++k) {
                const double s = static_cast<double>(k) / (samples - 1);
                polyline.push_back(k + 1 == samples ? uav : Eigen::Vector3d(anchor + s * (uav - anchor)));
            }
        }
        nlohmann::json frame;
        frame["t"] = row.t;
        frame["uav"] = {uav.x(), uav.y(), uav.z()};
        nlohmann::json tether = nlohmann::json::array();
        for (const auto& p : polyline) {
            tether.push_back({p.x(), p.y(), p.z()});
        }
        frame["tether"] = std::move(tether);
        frame["degenerate"] = degenerate;
        out << frame.dump() << '\n';
        ++frames;
    }
    finish(out, path);
    return frames;
}

std::string metrics_json(const Metrics& metrics, const SimLog& log, const std::string& scenario) {
    nlohmann::ordered_json doc;
    doc["scenario"] = scenario;
    doc["rows"] = log.rows.size();
    doc["duration"] = metrics.duration;
    nlohmann::ordered_json channels = nlohmann::ordered_json::object();
    for (const auto& c : metrics.channels) {
        nlohmann::ordered_json ch;
        ch["initial"] = c.initial;
        ch["settled"] = c.settling_time.has_value();
        ch["settling_time"] = c.settling_time ? nlohmann::ordered_json(*c.settling_time)
                                              : nlohmann::ordered_json(nullptr);
        ch["steady_state_error"] = c.steady_state;
        ch["rms"] = c.rms;
        ch["max_abs"] = c.max_abs;
        channels[c.name] = std::move(ch);
    }
    doc["channels"] = std::move(channels);
    doc["max_positive_dv"] = {{"V_c1", metrics.max_dv_c1},
                              {"V_c2", metrics.max_dv_c2},
                              {"V_c12", metrics.max_dv_c12}};
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (const auto& e : log.events) {
        events.push_back({{"t", e.t}, {"kind", e.kind}, {"detail", e.detail}});
    }
    doc["events"] = std::move(events);
    if (log.failure) {
        doc["failure"] = {{"kind", to_string(log.failure->kind)},
                          {"t", log.failure->t},
                          {"message", log.failure->message}};
    } else {
        doc["failure"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out = open_for_writing(path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    finish(out, path);
}

} // namespace tuav
