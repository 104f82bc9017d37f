#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmlb/distribution.hpp"
#include "mmlb/generator.hpp"

namespace mmlb {

/// J_f = inf_Q (1/N) sum_theta D_f(P_theta || Q) with its minimizer.
struct JfResult {
    enum class Method { closed_form, numeric };
    double value = 0.0;
    Distribution minimizer = Distribution::uniform(1);
    Method method = Method::closed_form;
    /// Certified lower bound on J_f (equals value for closed forms).
    double dual_value = 0.0;
    std::size_t iterations = 0;
};

const char* to_string(JfResult::Method m);

/// Exact minimizer for kl (Q = uniform mixture), chi2 (q ~ sqrt(sum p^2)) and
/// hellinger_half (q ~ (sum sqrt p)^2). Throws std::invalid_argument for
/// other generators.
JfResult jf_closed_form(const Generator& gen, const Ensemble& ens);

bool has_jf_closed_form(const Generator& gen);

inline constexpr double kDefaultJfTol = 1e-8;
inline constexpr std::size_t kDefaultJfIterations = 100000;

/// Minimizes Q -> (1/N) sum_theta D_f(P_theta||Q) over distributions supported
/// on the union of the member supports.
///
/// The problem is separable apart from sum q = 1, so it is solved through its
/// one-dimensional Lagrangian dual: each coordinate is minimized separately
/// for a given multiplier and the multiplier is found by bisection. The
/// reported `value` is the primal objective of a feasible Q and `dual_value`
/// a certified lower bound; ConvergenceError is thrown when their gap exceeds
/// `tol` or the iteration cap is hit. Returns +inf when every Q gives an
/// infinite objective.
JfResult jf_numeric(const Generator& gen, const Ensemble& ens, double tol = kDefaultJfTol,
                    std::size_t max_iterations = kDefaultJfIterations);

/// Closed form when available, numeric otherwise.
JfResult jf_exact(const Generator& gen, const Ensemble& ens);

/// The simple upper bounds on J_f: average divergence to the uniform
/// mixture, average pairwise divergence, maximum pairwise divergence.
struct ChainBounds {
    double to_mixture = 0.0;
    double pairwise_average = 0.0;
    double pairwise_max = 0.0;
};

ChainBounds simple_chain(const Generator& gen, const Ensemble& ens);

/// N x N matrix of D_f(P_i || P_j), row-major.
std::vector<double> pairwise_divergences(const Generator& gen, const Ensemble& ens);

/// Average squared Hellinger distance sum_{i,j} H^2(P_i, P_j) / N^2.
double average_pairwise_hellinger(const Ensemble& ens);

/// Candidate distributions Q_alpha with an optional member-to-candidate map.
struct CoveringFamily {
    std::vector<Distribution> candidates;
    std::optional<std::vector<std::size_t>> assignment;
};

struct CoveringResult {
    double value = 0.0;
    std::vector<std::size_t> assignment;
    /// D_f(P_theta || Q_{j(theta)}) per member.
    std::vector<double> member_errors;
    /// max_theta D_f(P_theta || Q_{j(theta)}).
    double approx_error = 0.0;
};

/// Covering upper bound on J_f:
/// (1/N) sum_theta sum_x (q_j/M) f(M p_theta / q_j) + (1 - 1/M) f(0).
/// The default assignment maps each member to its closest candidate in D_f
/// (lowest index on ties). Infinite terms make the bound +inf.
CoveringResult covering_upper_bound(const Generator& gen, const Ensemble& ens, const CoveringFamily& family);

enum class CoverKind { kl, chi2, power_l, hellinger_sq };

CoverKind parse_cover_kind(const std::string& name);
const char* to_string(CoverKind kind);
/// Generator matching a covering kind (`l` used by power_l).
Generator cover_generator(CoverKind kind, double l = 3.0);

/// Closed-form relaxations of the covering bound in terms of M and the
/// max-min approximation error:
/// kl: log M + e; chi2: M(e+1) - 1; power_l: M^{l-1}(e+1) - 1;
/// hellinger_sq: 2 - (2 - e)/sqrt(M).
double covering_specialization(CoverKind kind, double m, double approx_error, double l = 3.0);

}  // namespace mmlb
