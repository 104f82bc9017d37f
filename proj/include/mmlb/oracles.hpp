#pragma once

// Brute-force reference computations used by the tests, the verify suites
// and the acceptance checks. They share no code path with the operations they
// check beyond the generator and divergence primitives.

#include <cstddef>
#include <vector>

#include "mmlb/distribution.hpp"
#include "mmlb/generator.hpp"

namespace mmlb::oracle {

/// Term-by-term sum of q f(p/q) with the absolute-continuity convention.
double direct_divergence(const Generator& gen, const Distribution& p, const Distribution& q);

/// Minimum average error over every deterministic test (N^support of them).
/// Requires N^support <= 10^7.
double enumerated_bayes_risk(const Ensemble& ens);

/// Maximum of the Bayes risk over priors on a simplex grid with `steps`
/// subdivisions per axis. Returns the value and the maximizing prior.
std::pair<double, std::vector<double>> grid_minimax(const Ensemble& ens, std::size_t steps);

/// min over q on the grid {0, 1/steps, ..., 1}^support (summing to 1) of
/// (1/N) sum_theta D_f(P_theta || q), by a min-plus recursion over
/// coordinates (the objective is separable). Returns the value and minimizer.
std::pair<double, std::vector<double>> grid_jf(const Generator& gen, const Ensemble& ens, std::size_t steps = 1000);

/// 2 (alpha - sin alpha), alpha = acos(1 - eps): the planar cap distance for
/// p = 1 from the antiderivative.
double planar_cap_distance_p1(double epsilon);

/// L_p^p distance between the support functions of two planar bodies, each
/// the unit disc with the caps of angular half-width `alpha` at the selected
/// `angles` cut off (word[i] = 1 means cut). The support function in
/// direction psi is 1 when psi meets the remaining boundary arc and otherwise
/// the cosine of the angular distance to the nearest remaining arc endpoint.
/// Integrated over the whole circle piece by piece.
double planar_support_distance_pow(const std::vector<double>& angles, double alpha, const std::vector<int>& word_a,
                                   const std::vector<int>& word_b, double p);

}  // namespace mmlb::oracle
