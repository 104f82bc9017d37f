#include "mmlb/testing_risk.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mmlb/errors.hpp"
#include "mmlb/kernels.hpp"
#include "mmlb/simplex.hpp"

namespace mmlb {

RiskValue bayes_risk_exact(const Ensemble& ens) {
    const double mass = kernels::parallel::bayes_mass(ens.packed(), ens.size(), ens.support_size(), ens.prior());
    return {std::clamp(1.0 - mass, 0.0, 1.0), RiskValue::Kind::bayes};
}

TestAssignment map_test(const Ensemble& ens) {
    return {kernels::parallel::map_assign(ens.packed(), ens.size(), ens.support_size(), ens.prior())};
}

std::vector<double> member_errors(const Ensemble& ens, const TestAssignment& test) {
    if (test.choice.size() != ens.support_size())
        throw std::invalid_argument("member_errors: test length differs from support size");
    std::vector<double> correct(ens.size(), 0.0);
    for (std::size_t x = 0; x < test.choice.size(); ++x) {
        const std::size_t t = test.choice[x];
        if (t >= ens.size()) throw std::invalid_argument("member_errors: invalid member index in test");
        correct[t] += ens.member(t)[x];
    }
    for (double& c : correct) c = std::max(0.0, 1.0 - c);
    return correct;
}

double average_error(const Ensemble& ens, const TestAssignment& test) {
    const std::vector<double> err = member_errors(ens, test);
    double acc = 0.0;
    for (std::size_t t = 0; t < err.size(); ++t) acc += ens.weight(t) * err[t];
    return acc;
}

MinimaxResult minimax_risk(const Ensemble& ens, double tol, std::size_t pivot_cap) {
    if (!(tol > 0.0)) throw std::invalid_argument("minimax_risk: tol must be positive");
    const std::size_t n = ens.size();
    const std::size_t s = ens.support_size();

    // Variables: t, then delta(theta|x) at 1 + theta * s + x.
    // Rows 0..n-1:   t - sum_x p_theta(x) delta(theta|x) <= 0
    // Rows n..n+s-1: sum_theta delta(theta|x) <= 1
    lp::Problem lp;
    lp.rows = n + s;
    lp.cols = 1 + n * s;
    lp.a.assign(lp.rows * lp.cols, 0.0);
    lp.b.assign(lp.rows, 0.0);
    lp.c.assign(lp.cols, 0.0);
    lp.c[0] = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
        lp.at(t, 0) = 1.0;
        for (std::size_t x = 0; x < s; ++x) lp.at(t, 1 + t * s + x) = -ens.member(t)[x];
    }
    for (std::size_t x = 0; x < s; ++x) {
        lp.b[n + x] = 1.0;
        for (std::size_t t = 0; t < n; ++t) lp.at(n + x, 1 + t * s + x) = 1.0;
    }

    const lp::Solution sol = lp::maximize(lp, pivot_cap);
    if (sol.status == lp::Solution::Status::pivot_limit)
        throw ConvergenceError("minimax_risk: pivot cap of " + std::to_string(pivot_cap) + " reached");
    if (sol.status != lp::Solution::Status::optimal)
        throw ConvergenceError("minimax_risk: linear program reported unbounded");

    std::vector<double> prior(n);
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        prior[t] = std::max(0.0, sol.duals[t]);
        total += prior[t];
    }
    if (!(total > 0.0)) throw ConvergenceError("minimax_risk: degenerate dual solution");
    for (double& w : prior) w /= total;
    // Optimal priors need not be unique; report the uniform one when it is
    // among them.
    const Ensemble uniform = ens.with_uniform_prior();
    if (bayes_risk_exact(uniform).value >= bayes_risk_exact(ens.with_prior(prior)).value - 1e-12)
        prior.assign(uniform.prior().begin(), uniform.prior().end());

    const Ensemble at_prior = ens.with_prior(prior);
    MinimaxResult out;
    out.prior.assign(at_prior.prior().begin(), at_prior.prior().end());
    out.value = bayes_risk_exact(at_prior).value;
    out.randomized_upper = std::clamp(1.0 - sol.value, 0.0, 1.0);
    const std::vector<double> err = member_errors(at_prior, map_test(at_prior));
    out.deterministic_upper = *std::max_element(err.begin(), err.end());
    out.duality_gap = out.randomized_upper - out.value;
    out.deterministic_gap = out.deterministic_upper - out.value;
    out.pivots = sol.pivots;
    if (std::abs(out.duality_gap) > tol)
        throw ConvergenceError("minimax_risk: duality gap " + std::to_string(out.duality_gap) +
                               " exceeds tolerance");
    return out;
}

}  // namespace mmlb
