// Tracking and stability metrics extracted from a simulation log.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tuav/sim_engine.hpp"

namespace tuav {

struct MetricOptions {
    double band_fraction = 0.02; ///< settling band relative to |e(0)|
    double band_floor = 1e-3;    ///< absolute lower bound on the band
    /// Start of the RMS window. When unset, RMS is taken after settling.
    std::optional<double> rms_window_start;
};

struct ChannelMetrics {
    std::string name;
    double initial = 0.0;
    /// First time after which |e| stays inside the band; unset when unsettled.
    std::optional<double> settling_time;
    double steady_state = 0.0; ///< |e| at the last sample
    double rms = 0.0;          ///< time-integral RMS over the window
    double max_abs = 0.0;
};

struct Metrics {
    std::vector<ChannelMetrics> channels; ///< e_x, e_y, e_z, e_phi, e_theta, e_psi, e_L
    double max_dv_c1 = 0.0; ///< largest positive V_dot excursion (0 if none)
    double max_dv_c2 = 0.0;
    double max_dv_c12 = 0.0;
    double duration = 0.0;

    const ChannelMetrics& channel(const std::string& name) const;
    bool all_settled() const;
};

/// Metrics for one error channel sampled at times `t`. Requires t.size() ==
/// e.size() > 0.
ChannelMetrics channel_metrics(const std::string& name, const std::vector<double>& t,
                               const std::vector<double>& e, const MetricOptions& opts = {});

/// Time-integral RMS of e over [from, t.back()] using the trapezoidal rule.
double windowed_rms(const std::vector<double>& t, const std::vector<double>& e, double from);

/// Throws Error(domain) on an empty log.
Metrics compute_metrics(const SimLog& log, const MetricOptions& opts = {});

} // namespace tuav
