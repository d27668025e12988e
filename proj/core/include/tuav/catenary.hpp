// Catenary tether model: curve evaluation, two-point fitting and the tension
// the tether applies at the UAV attachment point.
#pragma once

#include <vector>

#include <Eigen/Core>

namespace tuav {

struct TetherMaterial {
    double rho = 0.034;      ///< linear density [kg/m]
    double area = 1.1e-4;    ///< cross-sectional area [m^2]
    double g = 9.81;         ///< gravitational acceleration [m/s^2]
    double max_length = 30.0; ///< spool capacity L_T [m]

    /// Throws Error(domain) unless every field is strictly positive.
    void validate() const;
};

/// Planar catenary through the ground anchor and the UAV.
///
/// The curve lives in the vertical plane containing both endpoints. With s the
/// horizontal coordinate measured from the anchor, the height above the anchor
/// is  h(s) = a cosh((s - x0)/a) - a cosh(x0/a).
struct CatenaryGeometry {
    double a = 1.0;    ///< catenary parameter [m]
    double x0 = 0.0;   ///< horizontal position of the vertex relative to the anchor [m]
    double span = 0.0; ///< horizontal distance anchor -> UAV footprint [m]
    double rise = 0.0; ///< vertical offset UAV - anchor [m]
};

struct TensionAngles {
    double alpha = 0.0;
    double beta = 0.0;
};

struct TensionVector {
    double magnitude = 0.0; ///< T1 [N]
    double alpha = 0.0;     ///< [rad]
    double beta = 0.0;      ///< [rad]
    Eigen::Vector3d components = Eigen::Vector3d::Zero(); ///< (T_X, T_Y, T_Z) [N]
};

/// a = T0 / (rho g).
double catenary_parameter(double horizontal_tension, const TetherMaterial& material);

/// z(x) = a cosh(x/a).
double catenary_height(double x, double a);

/// T1 = T0 + rho A z g.
double tension_top(double horizontal_tension, const TetherMaterial& material, double z);

/// Length of a catenary whose endpoints are separated horizontally by `span`
/// and vertically by `rise`:  sqrt((2a sinh(span/2a))^2 + rise^2).
double arc_length(double span, double rise, double a);

/// beta = atan(sinh((x - x0)/a)),  alpha = atan(sinh(-x0/a)).
TensionAngles tension_angles(double x, double x0, double a);

/// Components T_X = T1 cos(alpha) sin(beta), T_Y = T1 cos(alpha) cos(beta),
/// T_Z = T1 sin(alpha).
TensionVector resolve_tension(double t1, double alpha, double beta);

/// Fits the catenary of length `length` hanging between `anchor` and `uav`.
///
/// Throws Error with kind infeasible_slack when the length does not exceed the
/// straight-line distance, over_length when it exceeds `max_length`,
/// degenerate_geometry when the horizontal span is zero and convergence if the
/// root finder fails within 200 iterations.
CatenaryGeometry fit_catenary(const Eigen::Vector3d& anchor, const Eigen::Vector3d& uav,
                              double length, double max_length);

/// Height of the fitted curve above the anchor at horizontal coordinate s.
double curve_height(const CatenaryGeometry& geometry, double s);

/// Arc length from the anchor to horizontal coordinate s.
double curve_length_to(const CatenaryGeometry& geometry, double s);

/// Horizontal coordinate reached after travelling `length` along the curve.
double curve_coordinate_at_length(const CatenaryGeometry& geometry, double length);

/// `samples` points spaced evenly in arc length from anchor to uav. The first
/// point is `anchor` and the last point is `uav`, both exactly.
std::vector<Eigen::Vector3d> sample_catenary(const Eigen::Vector3d& anchor,
                                             const Eigen::Vector3d& uav,
                                             const CatenaryGeometry& geometry, int samples);

/// Tension at the UAV end of a tether of the given released length: fits the
/// curve, recovers T0 = a rho g, lifts it to T1 with the attachment altitude and
/// resolves it with the angles at the UAV end.
TensionVector tether_tension(const Eigen::Vector3d& anchor, const Eigen::Vector3d& uav,
                             double length, const TetherMaterial& material);

} // namespace tuav
