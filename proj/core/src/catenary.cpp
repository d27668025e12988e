#include "tuav/catenary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tuav/error.hpp"

namespace tuav {

namespace {

constexpr int kMaxSolverIterations = 200;

void require_positive_parameter(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::domain, "catenary parameter must satisfy a > 0, got " +
                                           std::to_string(a));
    }
}

// log(sinh(u)/u) for u > 0, accurate from u -> 0 up to large u.
double log_sinhc(double u) {
    if (u < 0.5) {
        const double u2 = u * u;
        // sinh(u)/u - 1 by its Taylor series; truncation below 1e-17 at u = 0.5.
        double term = u2 / 6.0;
        double sum = term;
        for (int k = 2; k <= 9; ++k) {
            term *= u2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
        }
        return std::log1p(sum);
    }
    if (u < 20.0) {
        return std::log(std::sinh(u) / u);
    }
    return u - std::log(2.0 * u) + std::log1p(-std::exp(-2.0 * u));
}

// d/du log(sinh(u)/u) = coth(u) - 1/u.
double log_sinhc_slope(double u) {
    if (u < 1e-3) {
        const double u2 = u * u;
        return u / 3.0 - u * u2 / 45.0 + 2.0 * u * u2 * u2 / 945.0;
    }
    return 1.0 / std::tanh(u) - 1.0 / u;
}

// Solves log(sinh(u)/u) = log_ratio for u > 0 (log_ratio > 0). Bracket by
// doubling, then Newton steps that fall back to bisection when they leave the
// bracket or stall.
double solve_half_span_ratio(double log_ratio) {
    auto residual = [log_ratio](double u) { return log_sinhc(u) - log_ratio; };

    double lo = 0.0;
    double hi = 1.0;
    int iterations = 0;
    while (residual(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++iterations > kMaxSolverIterations) {
            throw Error(ErrorKind::convergence, "catenary fit: could not bracket the root");
        }
    }

    double u = 0.5 * (lo + hi);
    double step_old = hi - lo;
    double step = step_old;
    for (; iterations < kMaxSolverIterations; ++iterations) {
        const double f = residual(u);
        if (f == 0.0) {
            return u;
        }
        if (f < 0.0) {
            lo = u;
        } else {
            hi = u;
        }
        const double df = log_sinhc_slope(u);
        const double newton = u - f / df;
        const bool outside = !(newton > lo && newton < hi);
        const bool slow = std::abs(2.0 * f) > std::abs(step_old * df);
        step_old = step;
        if (outside || slow || !std::isfinite(newton)) {
            step = 0.5 * (hi - lo);
            u = lo + step;
        } else {
            step = newton - u;
            u = newton;
        }
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * u ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * u) {
            return u;
        }
    }
    throw Error(ErrorKind::convergence, "catenary fit: no convergence in 200 iterations");
}

} // namespace

void TetherMaterial::validate() const {
    auto check = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error(ErrorKind::domain, std::string("tether material: ") + name +
                                               " must be > 0");
        }
    };
    check(rho, "rho");
    check(area, "area");
    check(g, "g");
    check(max_length, "max_length");
}

double catenary_parameter(double horizontal_tension, const TetherMaterial& material) {
    material.validate();
    if (!(horizontal_tension > 0.0)) {
        throw Error(ErrorKind::domain, "horizontal tension T0 must be > 0");
    }
    return horizontal_tension / (material.rho * material.g);
}

double catenary_height(double x, double a) {
    require_positive_parameter(a);
    return a * std::cosh(x / a);
}

double tension_top(double horizontal_tension, const TetherMaterial& material, double z) {
    material.validate();
    if (!(horizontal_tension > 0.0)) {
        throw Error(ErrorKind::domain, "horizontal tension T0 must be > 0");
    }
    if (!(z >= 0.0)) {
        throw Error(ErrorKind::domain, "tension_top: height z must be >= 0");
    }
    return horizontal_tension + material.rho * material.area * z * material.g;
}

double arc_length(double span, double rise, double a) {
    require_positive_parameter(a);
    const double horizontal = 2.0 * a * std::sinh(span / (2.0 * a));
    return std::hypot(horizontal, rise);
}

TensionAngles tension_angles(double x, double x0, double a) {
    require_positive_parameter(a);
    return {std::atan(std::sinh(-x0 / a)), std::atan(std::sinh((x - x0) / a))};
}

TensionVector resolve_tension(double t1, double alpha, double beta) {
    if (!(t1 >= 0.0)) {
        throw Error(ErrorKind::domain, "resolve_tension: T1 must be >= 0");
    }
    TensionVector t;
    t.magnitude = t1;
    t.alpha = alpha;
    t.beta = beta;
    const double ca = std::cos(alpha);
    t.components = {t1 * ca * std::sin(beta), t1 * ca * std::cos(beta), t1 * std::sin(alpha)};
    return t;
}

CatenaryGeometry fit_catenary(const Eigen::Vector3d& anchor, const Eigen::Vector3d& uav,
                              double length, double max_length) {
    const Eigen::Vector3d delta = uav - anchor;
    const double span = std::hypot(delta.x(), delta.y());
    const double rise = delta.z();
    const double distance = delta.norm();

    if (!std::isfinite(length) || !(length > distance)) {
        throw Error(ErrorKind::infeasible_slack,
                    "tether length " + std::to_string(length) +
                        " m does not exceed the anchor distance " + std::to_string(distance) +
                        " m");
    }
    if (length > max_length) {
        throw Error(ErrorKind::over_length, "tether length " + std::to_string(length) +
                                                " m exceeds the spool capacity " +
                                                std::to_string(max_length) + " m");
    }
    if (!(span > 0.0)) {
        throw Error(ErrorKind::degenerate_geometry,
                    "catenary fit: UAV is vertically above the anchor");
    }

    // (2a sinh(span/2a))^2 = L^2 - rise^2. With u = span/(2a) this is
    // sinh(u)/u = sqrt(L^2 - rise^2)/span, solved in log form for range.
    const double horizontal = std::sqrt((length - rise) * (length + rise));
    const double excess = (length * length - distance * distance) / (horizontal + span);
    const double log_ratio = std::log1p(excess / span);
    const double u = solve_half_span_ratio(log_ratio);

    CatenaryGeometry geometry;
    geometry.a = span / (2.0 * u);
    geometry.span = span;
    geometry.rise = rise;
    geometry.x0 = 0.5 * span - geometry.a * std::atanh(rise / length);
    return geometry;
}

double curve_height(const CatenaryGeometry& geometry, double s) {
    const double a = geometry.a;
    return 2.0 * a * std::sinh((s - 2.0 * geometry.x0) / (2.0 * a)) * std::sinh(s / (2.0 * a));
}

double curve_length_to(const CatenaryGeometry& geometry, double s) {
    const double a = geometry.a;
    return 2.0 * a * std::cosh((s - 2.0 * geometry.x0) / (2.0 * a)) * std::sinh(s / (2.0 * a));
}

double curve_coordinate_at_length(const CatenaryGeometry& geometry, double length) {
    double lo = 0.0;
    double hi = geometry.span;
    if (length <= 0.0) {
        return lo;
    }
    if (length >= curve_length_to(geometry, hi)) {
        return hi;
    }
    for (int i = 0; i < 100 && hi - lo > 1e-15 * geometry.span; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (curve_length_to(geometry, mid) < length) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<Eigen::Vector3d> sample_catenary(const Eigen::Vector3d& anchor,
                                             const Eigen::Vector3d& uav,
                                             const CatenaryGeometry& geometry, int samples) {
    if (samples < 2) {
        throw Error(ErrorKind::domain, "sample_catenary: need at least 2 samples");
    }
    if (!(geometry.span > 0.0)) {
        throw Error(ErrorKind::degenerate_geometry, "sample_catenary: zero horizontal span");
    }
    const Eigen::Vector3d delta = uav - anchor;
    const Eigen::Vector3d heading =
        Eigen::Vector3d(delta.x(), delta.y(), 0.0) / geometry.span;
    const double total = arc_length(geometry.span, geometry.rise, geometry.a);

    std::vector<Eigen::Vector3d> points;
    points.reserve(static_cast<std::size_t>(samples));
    points.push_back(anchor);
    for (int i = 1; i < samples - 1; ++i) {
        const double s = curve_coordinate_at_length(geometry, total * i / (samples - 1));
        points.push_back(anchor + heading * s + Eigen::Vector3d(0.0, 0.0, curve_height(geometry, s)));
    }
    points.push_back(uav);
    return points;
}

TensionVector tether_tension(const Eigen::Vector3d& anchor, const Eigen::Vector3d& uav,
                             double length, const TetherMaterial& material) {
    const CatenaryGeometry geometry = fit_catenary(anchor, uav, length, material.max_length);
    const double t0 = geometry.a * material.rho * material.g;
    const double t1 = tension_top(t0, material, std::max(0.0, uav.z() - anchor.z()));
    const TensionAngles angles = tension_angles(geometry.span, geometry.x0, geometry.a);
    return resolve_tension(t1, angles.alpha, angles.beta);
}

} // namespace tuav
