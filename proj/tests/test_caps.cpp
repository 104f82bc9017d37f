#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "mmlb/caps.hpp"
#include "mmlb/codes.hpp"
#include "mmlb/oracles.hpp"

using namespace mmlb;

TEST(CapGeometry, Examples) {
    const auto g = cap_geometry(0.1, 2, 1.0);
    EXPECT_NEAR(g.alpha_angle, std::acos(0.9), 1e-15);
    EXPECT_NEAR(g.alpha_angle, 0.4510, 1e-4);
    EXPECT_NEAR(g.beta_angle, 0.1334, 1e-4);
    EXPECT_NEAR(std::sin(g.beta_angle), 0.1330, 1e-4);
    const auto h = cap_geometry(0.5, 2, 1.0);
    EXPECT_NEAR(h.alpha_angle, M_PI / 3.0, 1e-15);
    EXPECT_NEAR(h.beta_angle, M_PI / 3.0 - std::acos(0.75), 1e-15);
    const auto tiny = cap_geometry(1e-8, 2, 1.0);
    EXPECT_LT(tiny.alpha_angle, 1e-3);
    EXPECT_LT(tiny.beta_angle, tiny.alpha_angle);
    EXPECT_THROW(cap_geometry(0.0, 2, 1.0), std::invalid_argument);
    EXPECT_THROW(cap_geometry(1.0, 2, 1.0), std::invalid_argument);
    EXPECT_THROW(cap_geometry(0.1, 1, 1.0), std::invalid_argument);
    EXPECT_THROW(cap_geometry(0.1, 2, 0.5), std::invalid_argument);
}

TEST(CapGeometry, SinBetaBound) {
    for (double e = 0.001; e <= 0.5 + 1e-12; e += 0.001) {
        const auto g = cap_geometry(e, 2, 1.0);
        EXPECT_GE(std::sin(g.beta_angle), std::sqrt(e) / (2.0 * std::sqrt(2.0)));
    }
}

TEST(SphereConstant, Values) {
    EXPECT_EQ(sphere_constant(2), 2.0);
    EXPECT_NEAR(sphere_constant(3), 2.0 * M_PI, 1e-14);
    EXPECT_NEAR(sphere_constant(4), 4.0 * M_PI, 1e-13);
}

TEST(CapDistance, PlanarClosedForm) {
    for (double e : {0.005, 0.01, 0.02, 0.1, 0.3, 0.7}) {
        const double alpha = std::acos(1.0 - e);
        EXPECT_NEAR(cap_distance(cap_geometry(e, 2, 1.0)), 2.0 * (alpha - std::sin(alpha)), 1e-12);
        EXPECT_NEAR(cap_distance(cap_geometry(e, 2, 1.0)), oracle::planar_cap_distance_p1(e), 1e-12);
    }
    EXPECT_NEAR(cap_distance(cap_geometry(0.1, 2, 1.0)), 0.0303, 1e-4);
}

TEST(CapDistance, SphericalP2AgainstSimpson) {
    const auto g = cap_geometry(0.1, 3, 2.0);
    const auto simpson = [&](int n) {
        const double a = g.alpha_angle, h = a / n;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = i * h;
            const double f = std::pow(1.0 - std::cos(a - t), 2.0) * std::sin(t);
            acc += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
        }
        return 2.0 * M_PI * acc * h / 3.0;
    };
    EXPECT_NEAR(cap_distance_pow(g), simpson(2000), 1e-12);
    EXPECT_NEAR(simpson(2000), simpson(4000), 1e-13);
    EXPECT_NEAR(cap_distance(g), std::sqrt(cap_distance_pow(g)), 1e-15);
}

TEST(CapDistance, VanishesWithDepth) {
    double prev = 1e300;
    for (double e : {0.1, 0.01, 0.001, 1e-4}) {
        const double v = cap_distance(cap_geometry(e, 3, 1.0));
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-5);
}

TEST(SpherePacking, CircleExample) {
    const auto s = sphere_packing_points(2, 0.01, 0);
    EXPECT_EQ(s.points.size(), 22u);
    EXPECT_GT(s.min_distance, s.threshold);
    EXPECT_NEAR(s.threshold, 2.0 * std::sqrt(2.0) * 0.1, 1e-15);
    EXPECT_EQ(s.points.size(), static_cast<std::size_t>(std::floor(2.0 * M_PI / (2.0 * std::asin(std::sqrt(2.0) * 0.1)))));
}

TEST(SpherePacking, SphereExampleVerified) {
    const auto s = sphere_packing_points(3, 0.04, 3);
    ASSERT_GE(s.points.size(), 2u);
    double worst = 1e300;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const auto& a = s.points[i];
        EXPECT_NEAR(a[0] * a[0] + a[1] * a[1] + a[2] * a[2], 1.0, 1e-12);
        for (std::size_t j = i + 1; j < s.points.size(); ++j) {
            const auto& b = s.points[j];
            worst = std::min(worst, std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]));
        }
    }
    EXPECT_GT(worst, s.threshold);
    EXPECT_NEAR(worst, s.min_distance, 1e-15);
    EXPECT_NEAR(s.packing_constant, s.points.size() * 0.04, 1e-12);
    EXPECT_GT(s.packing_constant, 0.2);
}

TEST(SpherePacking, Degenerate) {
    EXPECT_THROW(sphere_packing_points(2, 0.9, 0), std::invalid_argument);
    EXPECT_THROW(sphere_packing_points(4, 0.01, 0), std::invalid_argument);
    EXPECT_EQ(sphere_packing_points(2, 0.4, 0).points.size(), 2u);
}

TEST(SupportPacking, PlanarExample) {
    const auto r = support_packing_bound(2, 1.0, 0.01, 0);
    EXPECT_EQ(r.packing.points.size(), 22u);
    EXPECT_GE(r.code_size, 16u);
    EXPECT_GE(r.log_code_size, 22.0 / 8.0);
    EXPECT_GE(r.min_hamming, 6u);
    EXPECT_GE(r.min_distance, 22.0 / 4.0 * r.cap_distance - 1e-15);
    EXPECT_NEAR(r.cap_distance, oracle::planar_cap_distance_p1(0.01), 1e-12);
}

TEST(SupportPacking, AdditivityAgainstPlanarOracle) {
    const auto r = support_packing_bound(2, 1.0, 0.02, 1);
    std::vector<double> angles;
    for (const auto& pt : r.packing.points) angles.push_back(std::atan2(pt[1], pt[0]));
    for (std::size_t i = 0; i + 1 < std::min<std::size_t>(r.words.size(), 6); ++i) {
        const auto& a = r.words[i];
        const auto& b = r.words[i + 1];
        const unsigned h = hamming(a, b);
        const double direct = oracle::planar_support_distance_pow(angles, r.geom.alpha_angle, a, b, 1.0);
        EXPECT_NEAR(direct, h * r.cap_distance, 1e-9);
    }
}

TEST(SupportPacking, ClaimRatioBoundedBelow) {
    double lowest = 1e300;
    for (double e : {0.01, 0.02, 0.05, 0.1, 0.2}) {
        const auto g = cap_geometry(e, 2, 1.0);
        lowest = std::min(lowest, cap_distance_pow(g) / (e * std::sqrt(e)));
    }
    EXPECT_GT(lowest, 0.5);
    EXPECT_THROW(support_packing_bound(2, 1.0, 0.3, 0), std::invalid_argument);
}
