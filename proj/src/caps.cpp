#include "mmlb/caps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mmlb/codes.hpp"
#include "mmlb/errors.hpp"
#include "mmlb/kernels.hpp"

namespace mmlb {

CapGeometry cap_geometry(double epsilon, unsigned d, double p) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("cap_geometry: epsilon must lie in (0, 1)");
    if (d < 2) throw std::invalid_argument("cap_geometry: d must be at least 2");
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("cap_geometry: p must lie in [1, inf)");
    CapGeometry g;
    g.epsilon = epsilon;
    g.d = d;
    g.p = p;
    g.alpha_angle = std::acos(1.0 - epsilon);
    g.beta_angle = g.alpha_angle - std::acos(1.0 - epsilon / 2.0);
    if (!(0.0 < g.beta_angle && g.beta_angle < g.alpha_angle && g.alpha_angle < std::numbers::pi / 2.0))
        throw std::logic_error("cap_geometry: angles out of order");
    if (std::sin(g.beta_angle) < std::sqrt(epsilon) / (2.0 * std::numbers::sqrt2))
        throw std::logic_error("cap_geometry: sin(beta) below sqrt(eps)/(2 sqrt 2)");
    return g;
}

double sphere_constant(unsigned d) {
    if (d < 2) throw std::invalid_argument("sphere_constant: d must be at least 2");
    if (d == 2) return 2.0;
    const double h = (d - 1) / 2.0;
    return 2.0 * std::pow(std::numbers::pi, h) / boost::math::tgamma(h);
}

double cap_distance_pow(const CapGeometry& geom, double abs_tol) {
    const double a = geom.alpha_angle;
    const double p = geom.p;
    const double e = static_cast<double>(geom.d) - 2.0;
    auto integrand = [&](double t) {
        const double s = std::sin((a - t) / 2.0);
        const double gap = 2.0 * s * s;
        return std::pow(gap, p) * (e == 0.0 ? 1.0 : std::pow(std::sin(t), e));
    };
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, a, 20, 1e-14, &error);
    const double c = sphere_constant(geom.d);
    if (!(c * error <= abs_tol) || !std::isfinite(value))
        throw ConvergenceError("cap_distance: quadrature error estimate " + std::to_string(c * error) +
                               " exceeds tolerance");
    return c * value;
}

double cap_distance(const CapGeometry& geom, double abs_tol) {
    return std::pow(cap_distance_pow(geom, abs_tol), 1.0 / geom.p);
}

namespace {

double dist(const Point3& a, const Point3& b) {
    const double x = a[0] - b[0], y = a[1] - b[1], z = a[2] - b[2];
    return std::sqrt(x * x + y * y + z * z);
}

std::vector<Point3> fibonacci_mesh(std::size_t count, double rotation) {
    std::vector<Point3> out(count);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i) + rotation;
        out[i] = {r * std::cos(phi), r * std::sin(phi), z};
    }
    return out;
}

}  // namespace

SpherePacking sphere_packing_points(unsigned d, double epsilon, std::uint64_t seed) {
    if (d != 2 && d != 3) throw std::invalid_argument("sphere_packing_points: d must be 2 or 3");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("sphere_packing_points: epsilon must lie in (0, 1)");
    SpherePacking out;
    out.d = d;
    out.epsilon = epsilon;
    out.threshold = 2.0 * std::numbers::sqrt2 * std::sqrt(epsilon);
    if (!(out.threshold < 2.0))
        throw std::invalid_argument("sphere_packing_points: epsilon too large for two points at distance > 2 sqrt(2 eps)");
    std::mt19937_64 rng(seed);
    const double offset = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);

    if (d == 2) {
        auto n = static_cast<std::size_t>(std::floor(std::numbers::pi / std::asin(out.threshold / 2.0)));
        while (n >= 2 && !(2.0 * std::sin(std::numbers::pi / static_cast<double>(n)) > out.threshold)) --n;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = offset + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
            out.points.push_back({std::cos(t), std::sin(t), 0.0});
        }
    } else {
        // Mesh spacing is about sqrt(4 pi / size); refine until it is below threshold / 4.
        std::size_t size = 1024;
        while (std::sqrt(4.0 * std::numbers::pi / static_cast<double>(size)) > out.threshold / 4.0) {
            size *= 2;
            if (size > kMaxSphereMesh)
                throw std::invalid_argument("sphere_packing_points: epsilon too small for the mesh cap");
        }
        out.mesh_size = size;
        const std::vector<Point3> mesh = fibonacci_mesh(size, offset);
        std::vector<double> nearest(size, INFINITY);
        std::size_t pick = std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
        while (true) {
            out.points.push_back(mesh[pick]);
            const Point3 chosen = mesh[pick];
            const std::vector<double> fresh =
                kernels::parallel::evaluate(size, [&](std::size_t i) { return std::min(nearest[i], dist(mesh[i], chosen)); });
            nearest = fresh;
            pick = static_cast<std::size_t>(std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
            if (!(nearest[pick] > out.threshold)) break;
        }
    }
    if (out.points.size() < 2) throw std::invalid_argument("sphere_packing_points: fewer than two points fit");
    out.min_distance = kernels::parallel::min_pairwise<double>(
        out.points.size(), INFINITY, [&](std::size_t i, std::size_t j) { return dist(out.points[i], out.points[j]); });
    if (!(out.min_distance > out.threshold))
        throw std::logic_error("sphere_packing_points: verification found a pair within the threshold");
    out.packing_constant = static_cast<double>(out.points.size()) * std::pow(epsilon, (d - 1) / 2.0);
    return out;
}

SupportPacking support_packing_bound(unsigned d, double p, double epsilon, std::uint64_t seed) {
    SupportPacking out;
    out.geom = cap_geometry(epsilon, d, p);
    out.packing = sphere_packing_points(d, epsilon, seed);
    const auto n = static_cast<unsigned>(out.packing.points.size());
    if (n < 8)
        throw std::invalid_argument("support_packing_bound: only " + std::to_string(n) +
                                    " caps fit; need at least 8 for the code");
    const BinaryCode code = vg_code(n, seed);
    out.code_size = code.size();
    out.log_code_size = std::log(static_cast<double>(code.size()));
    out.min_hamming = code.min_distance();
    const double cap_pow = cap_distance_pow(out.geom);
    out.cap_distance = std::pow(cap_pow, 1.0 / p);
    out.min_distance = kernels::parallel::min_pairwise<double>(code.size(), INFINITY, [&](std::size_t i, std::size_t j) {
        return std::pow(static_cast<double>(hamming(code.words[i], code.words[j])) * cap_pow, 1.0 / p);
    });
    out.claim_ratio = cap_pow / (std::pow(epsilon, p) * std::pow(epsilon, (d - 1) / 2.0));
    for (std::size_t i = 0; i < code.size(); ++i) out.words.push_back(code.unpack(i));
    return out;
}

}  // namespace mmlb
