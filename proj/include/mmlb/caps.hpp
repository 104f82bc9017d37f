#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mmlb {

/// A cap of the unit ball cut off at depth epsilon: the cap's angular
/// half-width is alpha = acos(1 - eps), and beta = alpha - acos(1 - eps/2) is
/// the angular margin of the half-depth cap.
struct CapGeometry {
    double epsilon = 0.0;
    double alpha_angle = 0.0;
    double beta_angle = 0.0;
    unsigned d = 2;
    double p = 1.0;
};

/// Requires eps in (0, 1), d >= 2, p >= 1. Checks 0 < beta < alpha < pi/2 and
/// sin(beta) >= sqrt(eps) / (2 sqrt 2), throwing std::logic_error otherwise.
CapGeometry cap_geometry(double epsilon, unsigned d, double p);

/// Surface area of S^{d-2} for d >= 3, and 2 for d = 2.
double sphere_constant(unsigned d);

inline constexpr double kCapQuadratureTol = 1e-10;

/// delta_p^p = C int_0^alpha (1 - cos(alpha - t))^p sin^{d-2}(t) dt with
/// C = sphere_constant(d): the p-th power of the L_p distance between the
/// support functions of the ball and the ball with one cap removed.
/// Adaptive Gauss-Kronrod; throws ConvergenceError when the error estimate
/// exceeds `abs_tol`.
double cap_distance_pow(const CapGeometry& geom, double abs_tol = kCapQuadratureTol);
/// cap_distance_pow^{1/p}.
double cap_distance(const CapGeometry& geom, double abs_tol = kCapQuadratureTol);

using Point3 = std::array<double, 3>;

struct SpherePacking {
    unsigned d = 2;
    double epsilon = 0.0;
    /// Pairwise distances are strictly greater than this: 2 sqrt(2) sqrt(eps).
    double threshold = 0.0;
    /// Unit vectors; the third coordinate is 0 when d = 2.
    std::vector<Point3> points;
    double min_distance = 0.0;
    /// count * eps^{(d-1)/2}, the achieved packing constant.
    double packing_constant = 0.0;
    /// Candidate mesh size (0 for the exact circle construction).
    std::size_t mesh_size = 0;
};

inline constexpr std::size_t kMaxSphereMesh = 2'000'000;

/// Points on S^{d-1}, d in {2, 3}, pairwise more than 2 sqrt(2 eps) apart.
/// d = 2: the largest equally spaced configuration (rotated by a seeded
/// offset). d = 3: farthest-point selection over a Fibonacci mesh whose
/// spacing is refined until it is below a quarter of the threshold (capped at
/// kMaxSphereMesh points). Distances are verified over all pairs. Throws
/// std::invalid_argument when fewer than two points fit.
SpherePacking sphere_packing_points(unsigned d, double epsilon, std::uint64_t seed);

struct SupportPacking {
    CapGeometry geom;
    SpherePacking packing;
    std::size_t code_size = 0;
    double log_code_size = 0.0;
    unsigned min_hamming = 0;
    /// delta_p of a single cap.
    double cap_distance = 0.0;
    /// min over code pairs of (hamming * cap_distance^p)^{1/p}.
    double min_distance = 0.0;
    /// cap_distance^p / (eps^p eps^{(d-1)/2}).
    double claim_ratio = 0.0;
    /// Code words over the packing points (1 = cap removed).
    std::vector<std::vector<int>> words;
};

/// Packs bodies obtained by removing caps at the sphere packing points
/// according to a greedy binary code of length N = #points. Since the caps
/// are disjoint and congruent, the L_p distance between two bodies is
/// (hamming * cap_distance^p)^{1/p}; the minimum is taken over all code pairs.
/// Requires d in {2, 3} and N >= 8.
SupportPacking support_packing_bound(unsigned d, double p, double epsilon, std::uint64_t seed);

}  // namespace mmlb
