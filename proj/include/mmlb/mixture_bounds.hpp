#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "mmlb/distribution.hpp"
#include "mmlb/generator.hpp"
#include "mmlb/report.hpp"

namespace mmlb {

/// W f((1 - rbar)/W) + (1 - W) f(rbar/(1 - W)): the lower bound on the
/// prior-weighted divergence sum sum_theta w_theta D_f(P_theta||Q) in terms of
/// the Bayes risk rbar and W = sum_x w_{T(x)} q(x). Requires W in (0, 1) and
/// rbar in [0, 1].
double theorem1_rhs(const Generator& gen, double w_t, double rbar);

/// W = sum_x w_{T(x)} q(x) for the MAP test T of the ensemble's prior.
double map_weight_mass(const Ensemble& ens, const Distribution& q);

/// sum_theta w_theta D_f(P_theta || Q) under the ensemble's prior.
double weighted_divergence_sum(const Generator& gen, const Ensemble& ens, const Distribution& q);

inline constexpr double kInversionTol = 1e-10;

struct InversionResult {
    /// Largest a in [0, 1 - 1/N] with g(a) >= divergence_sum (up to kInversionTol).
    double value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double g_at_value = 0.0;
    int iterations = 0;
};

/// Inverts sum_theta D_f(P_theta||Q) >= g(rbar) by bisection (g is
/// non-increasing). Returns 1 - 1/N when divergence_sum <= 0 and 0 when
/// g(0) < divergence_sum.
InversionResult invert_implicit_bound(const Generator& gen, std::size_t n, double divergence_sum);

/// Tangent-line bound a + (divergence_sum - g(a))/g'(a), clamped to
/// [0, 1 - 1/N]. Requires a generator derivative and g'(a) < 0.
double explicit_bound(const Generator& gen, std::size_t n, double divergence_sum, double a);

enum class NamedFamily { fano, chi2, hellinger, tv, power_l, reverse_kl_tv };

NamedFamily parse_named_family(const std::string& name);
const char* to_string(NamedFamily family);

/// Statistics for a named bound, keyed by name:
///   fano:          N, avgKL    (average KL divergence to the uniform mixture)
///   chi2:          N, inf_sum  (inf_Q sum_theta chi2(P_theta||Q))
///   hellinger:     N, h2       (sum_{i,j} H^2(P_i,P_j) / N^2, in [0, 2])
///   tv:            N, inf_sum  (inf_Q sum_theta V(P_theta, Q); alias inf_sum_tv)
///   power_l:       N, l, inf_sum
///   reverse_kl_tv: inf_sum     (inf_Q D(Q||P_1) + D(Q||P_2)); an upper bound on V
using NamedStats = std::map<std::string, double>;

/// Closed-form lower bound on the uniform-prior Bayes risk (an upper bound on
/// the total variation distance for reverse_kl_tv), clamped to [0, 1].
BoundReport named_bound(NamedFamily family, const NamedStats& stats);

/// Exact statistics of `ens` for `family`, computed through the J_f solver.
/// `l` is the power_l exponent. reverse_kl_tv requires N = 2.
NamedStats named_statistics(NamedFamily family, const Ensemble& ens, double l = 3.0);

/// named_bound on exact statistics, with the ensemble's Bayes risk attached
/// for comparison.
BoundReport named_bound_from_ensemble(NamedFamily family, const Ensemble& ens, double l = 3.0);

/// Two-point instance attaining f(1+V) + f(1-V).
struct TwoPointWitness {
    Distribution p1 = Distribution::uniform(2);
    Distribution p2 = Distribution::uniform(2);
    Distribution q = Distribution::uniform(2);
    double achieved = 0.0;
    double tv = 0.0;
    double target = 0.0;
};

TwoPointWitness two_point_sharpness(double v, const Generator& gen);

/// Numeric minimum of D_f(P1||Q) + D_f(P2||Q) over all distributions on a
/// two-point space with V(P1, P2) = v.
struct TwoPointMinimum {
    double value = 0.0;
    double p1_first = 0.0;
    double q_first = 0.0;
};

TwoPointMinimum two_point_infimum(const Generator& gen, double v);

/// min over two-point pairs with V in [v_min, 1) of KL(P1||P2)/V^2, with the
/// minimizing V. The infimum over all pairs is 2.
std::pair<double, double> pinsker_ratio_infimum(double v_min);

}  // namespace mmlb
