#include "tuav/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tuav/error.hpp"

namespace tuav {

const ChannelMetrics& Metrics::channel(const std::string& name) const {
    for (const auto& c : channels) {
        if (c.name == name) {
            return c;
        }
    }
    throw Error(ErrorKind::domain, "metrics: unknown channel " + name);
}

bool Metrics::all_settled() const {
    return std::all_of(channels.begin(), channels.end(),
                       [](const ChannelMetrics& c) { return c.settling_time.has_value(); });
}

double windowed_rms(const std::vector<double>& t, const std::vector<double>& e, double from) {
    double integral = 0.0;
    double span = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] <= from) {
            continue;
        }
        double t0 = t[i - 1];
        double e0 = e[i - 1];
        if (t0 < from) {
            // Interpolate the partial first interval.
            const double w = (from - t0) / (t[i] - t0);
            e0 = e0 + w * (e[i] - e0);
            t0 = from;
        }
        const double h = t[i] - t0;
        integral += 0.5 * h * (e0 * e0 + e[i] * e[i]);
        span += h;
    }
    if (span <= 0.0) {
        // Window collapses onto the last sample.
        return e.empty() ? 0.0 : std::abs(e.back());
    }
    return std::sqrt(integral / span);
}

ChannelMetrics channel_metrics(const std::string& name, const std::vector<double>& t,
                               const std::vector<double>& e, const MetricOptions& opts) {
    if (t.empty() || t.size() != e.size()) {
        throw Error(ErrorKind::domain, "channel_metrics: need matching, nonempty series");
    }
    ChannelMetrics m;
    m.name = name;
    m.initial = e.front();
    m.steady_state = std::abs(e.back());
    for (double v : e) {
        m.max_abs = std::max(m.max_abs, std::abs(v));
    }

    const double band = std::max(opts.band_fraction * std::abs(e.front()), opts.band_floor);
    // Last sample outside the band; the channel settles at the next one.
    std::size_t last_out = e.size();
    for (std::size_t i = e.size(); i-- > 0;) {
        if (std::abs(e[i]) > band) {
            last_out = i;
            break;
        }
    }
    if (last_out == e.size()) {
        m.settling_time = t.front();
    } else if (last_out + 1 < e.size()) {
        // Linear crossing between the last outside sample and the next.
        const double a = std::abs(e[last_out]);
        const double b = std::abs(e[last_out + 1]);
        const double w = a == b ? 1.0 : (a - band) / (a - b);
        m.settling_time = t[last_out] + w * (t[last_out + 1] - t[last_out]);
    }

    const double from = opts.rms_window_start.value_or(m.settling_time.value_or(t.back()));
    m.rms = windowed_rms(t, e, from);
    return m;
}

Metrics compute_metrics(const SimLog& log, const MetricOptions& opts) {
    if (log.rows.empty()) {
        throw Error(ErrorKind::domain, "compute_metrics: empty log");
    }
    const std::size_t n = log.rows.size();
    std::vector<double> t(n);
    std::vector<std::vector<double>> series(7, std::vector<double>(n));
    Metrics out;
    for (std::size_t i = 0; i < n; ++i) {
        const LogRow& r = log.rows[i];
        t[i] = r.t;
        series[0][i] = r.error.position.x();
        series[1][i] = r.error.position.y();
        series[2][i] = r.error.position.z();
        series[3][i] = r.error.attitude.x();
        series[4][i] = r.error.attitude.y();
        series[5][i] = r.error.attitude.z();
        series[6][i] = r.error.length;
        if (i > 0) {
            const auto& v = r.lyapunov;
            if (std::isfinite(v.dv_c1)) out.max_dv_c1 = std::max(out.max_dv_c1, v.dv_c1);
            if (std::isfinite(v.dv_c2)) out.max_dv_c2 = std::max(out.max_dv_c2, v.dv_c2);
            if (std::isfinite(v.dv_c12)) out.max_dv_c12 = std::max(out.max_dv_c12, v.dv_c12);
        }
    }
    static const char* const names[] = {"e_x", "e_y", "e_z", "e_phi", "e_theta", "e_psi", "e_L"};
    for (std::size_t c = 0; c < series.size(); ++c) {
        out.channels.push_back(channel_metrics(names[c], t, series[c], opts));
    }
    out.duration = t.back() - t.front();
    return out;
}

} // namespace tuav
