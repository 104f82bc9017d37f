#pragma once

#include <cstddef>
#include <vector>

namespace mmlb::lp {

/// Dense linear program: maximize c.x subject to A x <= b, x >= 0, with b >= 0
/// so the slack basis is feasible. A is row-major, rows() x cols().
struct Problem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;

    double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
};

struct Solution {
    enum class Status { optimal, unbounded, pivot_limit };
    Status status = Status::optimal;
    double value = 0.0;
    std::vector<double> x;
    /// Optimal dual variables, one per constraint row.
    std::vector<double> duals;
    std::size_t pivots = 0;
};

/// Primal simplex on a dense tableau with Bland's anti-cycling rule.
Solution maximize(const Problem& problem, std::size_t pivot_cap);

}  // namespace mmlb::lp
