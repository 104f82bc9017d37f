#include "mmlb/simplex.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mmlb::lp {

namespace {
constexpr double kPivotEps = 1e-12;
}

Solution maximize(const Problem& problem, std::size_t pivot_cap) {
    const std::size_t m = problem.rows;
    const std::size_t n = problem.cols;
    if (problem.a.size() != m * n || problem.b.size() != m || problem.c.size() != n)
        throw std::invalid_argument("lp::maximize: inconsistent problem dimensions");
    for (double v : problem.b)
        if (v < 0.0) throw std::invalid_argument("lp::maximize: right-hand side must be nonnegative");

    // Tableau columns: n structural, m slack, 1 rhs. Row m is the objective row.
    const std::size_t width = n + m + 1;
    std::vector<double> t((m + 1) * width, 0.0);
    auto cell = [&](std::size_t r, std::size_t col) -> double& { return t[r * width + col]; };
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t col = 0; col < n; ++col) cell(r, col) = problem.a[r * n + col];
        cell(r, n + r) = 1.0;
        cell(r, width - 1) = problem.b[r];
    }
    for (std::size_t col = 0; col < n; ++col) cell(m, col) = -problem.c[col];

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

    Solution sol;
    for (;;) {
        std::size_t enter = width;
        for (std::size_t col = 0; col + 1 < width; ++col) {
            if (cell(m, col) < -kPivotEps) {
                enter = col;
                break;
            }
        }
        if (enter == width) break;
        if (sol.pivots >= pivot_cap) {
            sol.status = Solution::Status::pivot_limit;
            break;
        }
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            const double coef = cell(r, enter);
            if (coef <= kPivotEps) continue;
            const double ratio = cell(r, width - 1) / coef;
            if (leave == m || ratio < best_ratio - kPivotEps ||
                (ratio <= best_ratio + kPivotEps && basis[r] < basis[leave])) {
                best_ratio = leave == m ? ratio : std::min(best_ratio, ratio);
                leave = r;
            }
        }
        if (leave == m) {
            sol.status = Solution::Status::unbounded;
            return sol;
        }
        const double piv = cell(leave, enter);
        for (std::size_t col = 0; col < width; ++col) cell(leave, col) /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double factor = cell(r, enter);
            if (factor == 0.0) continue;
            for (std::size_t col = 0; col < width; ++col) cell(r, col) -= factor * cell(leave, col);
            cell(r, enter) = 0.0;
        }
        basis[leave] = enter;
        ++sol.pivots;
    }

    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n) sol.x[basis[r]] = cell(r, width - 1);
    sol.duals.resize(m);
    for (std::size_t r = 0; r < m; ++r) sol.duals[r] = cell(m, n + r);
    sol.value = cell(m, width - 1);
    return sol;
}

}  // namespace mmlb::lp
