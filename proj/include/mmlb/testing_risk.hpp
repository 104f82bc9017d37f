#pragma once

#include <cstddef>
#include <vector>

#include "mmlb/distribution.hpp"

namespace mmlb {

struct RiskValue {
    enum class Kind { bayes, minimax };
    double value = 0.0;
    Kind kind = Kind::bayes;
};

/// Deterministic test: choice[x] is the member index reported at sample point x.
struct TestAssignment {
    std::vector<std::size_t> choice;
};

/// Bayes risk under the ensemble's prior: 1 - sum_x max_theta w_theta p_theta(x).
RiskValue bayes_risk_exact(const Ensemble& ens);

/// MAP test argmax_theta w_theta p_theta(x), lowest index on ties.
TestAssignment map_test(const Ensemble& ens);

/// P_theta(T != theta) for every member.
std::vector<double> member_errors(const Ensemble& ens, const TestAssignment& test);

/// sum_theta w_theta P_theta(T != theta) under the ensemble's prior.
double average_error(const Ensemble& ens, const TestAssignment& test);

inline constexpr double kDefaultMinimaxTol = 1e-6;
inline constexpr std::size_t kDefaultPivotCap = 100000;

struct MinimaxResult {
    /// Bayes risk at the witness prior; the max over priors up to duality_gap.
    double value = 0.0;
    std::vector<double> prior;
    /// 1 - max over randomized tests of min_theta P_theta(correct).
    double randomized_upper = 0.0;
    /// Worst-member error of the MAP test for the witness prior.
    double deterministic_upper = 0.0;
    /// randomized_upper - value (zero up to rounding by LP duality).
    double duality_gap = 0.0;
    /// deterministic_upper - value; nonzero when randomization is needed.
    double deterministic_gap = 0.0;
    std::size_t pivots = 0;
};

/// Minimax testing risk r = max_w rbar_w, solved exactly as a linear program
/// over randomized tests whose dual variables give the least favourable
/// prior. Throws ConvergenceError when the pivot cap is reached or the
/// certified gap exceeds `tol`, std::invalid_argument for tol <= 0.
MinimaxResult minimax_risk(const Ensemble& ens, double tol = kDefaultMinimaxTol,
                           std::size_t pivot_cap = kDefaultPivotCap);

}  // namespace mmlb
