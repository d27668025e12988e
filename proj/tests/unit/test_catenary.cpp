#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tuav/catenary.hpp"
#include "tuav/error.hpp"

using namespace tuav;

namespace {

void expect_kind(ErrorKind kind, const std::function<void()>& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected error " << to_string(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

// Forward model: endpoints of the curve with parameter a and vertex x0 over
// the horizontal span, measured from the anchor.
double forward_rise(double span, double x0, double a) {
    return a * std::cosh((span - x0) / a) - a * std::cosh(x0 / a);
}

} // namespace

TEST(CatenaryParameter, UnitRatio) {
    TetherMaterial m;
    EXPECT_NEAR(catenary_parameter(m.rho * m.g, m), 1.0, 1e-15);
}

TEST(CatenaryParameter, ReferenceMaterial) {
    // 1 / (0.034 * 9.81) evaluated in extended precision.
    EXPECT_NEAR(catenary_parameter(1.0, TetherMaterial{}), 2.99814115248545901, 1e-12);
}

TEST(CatenaryParameter, RejectsNonPositiveTension) {
    expect_kind(ErrorKind::domain, [] { catenary_parameter(0.0, TetherMaterial{}); });
    expect_kind(ErrorKind::domain, [] { catenary_parameter(-1.0, TetherMaterial{}); });
}

TEST(CatenaryParameter, RejectsBadMaterial) {
    TetherMaterial m;
    m.rho = 0.0;
    expect_kind(ErrorKind::domain, [&] { catenary_parameter(1.0, m); });
}

TEST(CatenaryHeight, VertexAndSymmetry) {
    EXPECT_DOUBLE_EQ(catenary_height(0.0, 3.7), 3.7);
    EXPECT_NEAR(catenary_height(1.0, 1.0), 1.54308063481524378, 1e-14);
    auto g = oracle::rng();
    for (int i = 0; i < 200; ++i) {
        const double x = oracle::uniform(g, -20, 20), a = oracle::uniform(g, 0.1, 10);
        EXPECT_EQ(catenary_height(x, a), catenary_height(-x, a));
        EXPECT_GE(catenary_height(x, a), a);
    }
    expect_kind(ErrorKind::domain, [] { catenary_height(1.0, 0.0); });
}

TEST(TensionTop, AffineInAltitude) {
    TetherMaterial m;
    EXPECT_DOUBLE_EQ(tension_top(5.0, m, 0.0), 5.0);
    EXPECT_NEAR(tension_top(5.0, m, 10.0), 5.000366894, 1e-12);
    const double d1 = tension_top(5.0, m, 3.0) - 5.0;
    const double d2 = tension_top(5.0, m, 6.0) - 5.0;
    EXPECT_NEAR(d2, 2.0 * d1, 1e-15);
    expect_kind(ErrorKind::domain, [&] { tension_top(5.0, m, -1.0); });
}

TEST(ArcLength, TrivialCases) {
    EXPECT_EQ(arc_length(0.0, 0.0, 2.0), 0.0);
    EXPECT_DOUBLE_EQ(arc_length(0.0, 4.5, 2.0), 4.5);
    expect_kind(ErrorKind::domain, [] { arc_length(1.0, 1.0, -2.0); });
}

TEST(ArcLength, MatchesQuadratureReferenceCase) {
    const double q = oracle::catenary_length_by_quadrature(2.0, 0.5, 1.5);
    EXPECT_NEAR(q, 2.20881106566350195, 1e-11);
    EXPECT_NEAR(arc_length(2.0, 0.5, 1.5) / q - 1.0, 0.0, 1e-8);
}

TEST(ArcLength, MatchesQuadratureRandomSweep) {
    auto g = oracle::rng(7);
    for (int i = 0; i < 100; ++i) {
        const double span = oracle::uniform(g, 0.05, 20.0);
        const double rise = oracle::uniform(g, -10.0, 10.0);
        const double a = oracle::uniform(g, 0.5, 30.0);
        const double q = oracle::catenary_length_by_quadrature(span, rise, a);
        EXPECT_NEAR(arc_length(span, rise, a) / q - 1.0, 0.0, 1e-8)
            << "span=" << span << " rise=" << rise << " a=" << a;
    }
}

TEST(TensionAngles, ZeroCases) {
    EXPECT_EQ(tension_angles(1.3, 1.3, 2.0).beta, 0.0);
    EXPECT_EQ(tension_angles(1.3, 0.0, 2.0).alpha, 0.0);
}

TEST(TensionAngles, ReferenceValue) {
    // atan(sinh(0.35)) in extended precision.
    EXPECT_NEAR(tension_angles(1.0, 0.3, 2.0).beta, 0.343065509802189107, 1e-14);
}

TEST(TensionAngles, OpenRange) {
    auto g = oracle::rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto ang = tension_angles(oracle::uniform(g, -10, 10), oracle::uniform(g, -10, 10),
                                        oracle::uniform(g, 1, 5));
        EXPECT_LT(std::abs(ang.alpha), std::numbers::pi / 2);
        EXPECT_LT(std::abs(ang.beta), std::numbers::pi / 2);
    }
    expect_kind(ErrorKind::domain, [] { tension_angles(1.0, 0.0, 0.0); });
}

TEST(ResolveTension, Components) {
    const TensionVector t = resolve_tension(7.0, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(t.components.x(), 0.0);
    EXPECT_DOUBLE_EQ(t.components.y(), 7.0);
    EXPECT_DOUBLE_EQ(t.components.z(), 0.0);

    const TensionVector up = resolve_tension(7.0, std::numbers::pi / 2 - 1e-9, 0.4);
    EXPECT_NEAR(up.components.z(), 7.0, 1e-12);
    expect_kind(ErrorKind::domain, [] { resolve_tension(-1.0, 0.0, 0.0); });
}

TEST(ResolveTension, NormInvariant) {
    auto g = oracle::rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double t1 = oracle::uniform(g, 0.0, 100.0);
        const auto v = resolve_tension(t1, oracle::uniform(g, -1.5, 1.5), oracle::uniform(g, -1.5, 1.5));
        if (t1 > 0.0) {
            EXPECT_NEAR(v.components.norm() / t1, 1.0, 1e-12);
        }
    }
}

TEST(FitCatenary, RoundtripRecoversParameter) {
    // a = 2 with the vertex mid-span gives a level curve; shift the vertex to
    // get rising endpoints as well.
    for (double x0_frac : {0.5, 0.2, -0.3, 0.9}) {
        const double a = 2.0, span = 5.0;
        const double x0 = x0_frac * span;
        const double rise = forward_rise(span, x0, a);
        const double length =
            oracle::integrate([&](double s) { return std::cosh((s - x0) / a); }, 0.0, span);
        const Eigen::Vector3d anchor(0.3, -0.2, 0.0);
        const Eigen::Vector3d dir(0.6, 0.8, 0.0);
        const Eigen::Vector3d uav = anchor + span * dir + Eigen::Vector3d(0, 0, rise);
        const CatenaryGeometry geom = fit_catenary(anchor, uav, length, 100.0);
        EXPECT_NEAR(geom.a, a, 1e-8) << "x0_frac " << x0_frac;
        EXPECT_NEAR(geom.x0, x0, 1e-7);
        EXPECT_NEAR(arc_length(geom.span, geom.rise, geom.a) / length - 1.0, 0.0, 1e-10);
    }
}

TEST(FitCatenary, ReproducesLengthOnRandomGeometry) {
    auto g = oracle::rng(5);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Vector3d uav(oracle::uniform(g, -8, 8), oracle::uniform(g, -8, 8),
                                  oracle::uniform(g, 0, 10));
        if (std::hypot(uav.x(), uav.y()) < 1e-3) continue;
        const double dist = uav.norm();
        const double length = dist * oracle::uniform(g, 1.0001, 2.5);
        if (length > 30.0) continue;
        const CatenaryGeometry geom = fit_catenary(Eigen::Vector3d::Zero(), uav, length, 30.0);
        EXPECT_NEAR(arc_length(geom.span, geom.rise, geom.a) / length - 1.0, 0.0, 1e-8);
        EXPECT_NEAR(curve_height(geom, geom.span), uav.z(), 1e-8 * std::max(1.0, length));
    }
}

TEST(FitCatenary, ErrorOrdering) {
    const Eigen::Vector3d o = Eigen::Vector3d::Zero();
    const Eigen::Vector3d p(3.0, 4.0, 0.0);
    expect_kind(ErrorKind::infeasible_slack, [&] { fit_catenary(o, p, 5.0, 30.0); });
    expect_kind(ErrorKind::infeasible_slack, [&] { fit_catenary(o, p, 4.0, 30.0); });
    expect_kind(ErrorKind::over_length, [&] { fit_catenary(o, p, 31.0, 30.0); });
    expect_kind(ErrorKind::degenerate_geometry,
                [&] { fit_catenary(o, Eigen::Vector3d(0, 0, 5), 6.0, 30.0); });
}

TEST(FitCatenary, TauterCableIsFlatter) {
    const Eigen::Vector3d o = Eigen::Vector3d::Zero();
    const Eigen::Vector3d p(6.0, 0.0, 2.0);
    const double dist = p.norm();
    double previous = 0.0;
    for (double slack : {1.0, 0.3, 0.1, 1e-2, 1e-3, 1e-4, 1e-6}) {
        const double a = fit_catenary(o, p, dist + slack, 30.0).a;
        EXPECT_GT(a, previous) << "slack " << slack;
        previous = a;
    }
    EXPECT_GT(previous, 1e3);
}

TEST(SampleCatenary, EndpointsExactAndChordConverges) {
    const Eigen::Vector3d anchor = Eigen::Vector3d::Zero();
    const Eigen::Vector3d uav(3.0, 2.0, 4.0);
    const double length = 6.5;
    const CatenaryGeometry geom = fit_catenary(anchor, uav, length, 30.0);

    const auto two = sample_catenary(anchor, uav, geom, 2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two.front(), anchor);
    EXPECT_EQ(two.back(), uav);

    const auto pts = sample_catenary(anchor, uav, geom, 200);
    ASSERT_EQ(pts.size(), 200u);
    EXPECT_EQ(pts.front(), anchor);
    EXPECT_EQ(pts.back(), uav);
    double chord = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) chord += (pts[i] - pts[i - 1]).norm();
    EXPECT_LT(std::abs(chord - length) / length, 1e-3);
    EXPECT_LE(chord, length + 1e-12);
}

TEST(TetherTension, RestsOnFittedCurve) {
    TetherMaterial m;
    const Eigen::Vector3d uav(4.0, 3.0, 5.0);
    const TensionVector t = tether_tension(Eigen::Vector3d::Zero(), uav, 8.0, m);
    const CatenaryGeometry geom = fit_catenary(Eigen::Vector3d::Zero(), uav, 8.0, m.max_length);
    const double t0 = geom.a * m.rho * m.g;
    EXPECT_NEAR(t.magnitude, t0 + m.rho * m.area * uav.z() * m.g, 1e-12);
    EXPECT_NEAR(t.components.norm() / t.magnitude, 1.0, 1e-12);
}
