#include "mmlb/divergence.hpp"

#include <cmath>
#include <stdexcept>

#include "mmlb/kernels.hpp"

namespace mmlb {

namespace {

double clamp_small(double v) { return std::abs(v) < kDivergenceClamp ? 0.0 : v; }

void check_a(std::size_t n, double a) {
    if (n < 2) throw std::invalid_argument("g_function: N must be at least 2");
    const double top = 1.0 - 1.0 / static_cast<double>(n);
    if (!(a >= 0.0 && a <= top + 1e-15))
        throw std::invalid_argument("g_function: a = " + std::to_string(a) + " outside [0, 1-1/N]");
}

}  // namespace

double divergence_raw(const Generator& gen, std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("divergence: support size mismatch");
    for (std::size_t x = 0; x < p.size(); ++x)
        if (q[x] == 0.0 && p[x] > 0.0) return kInf;
    const double f0 = gen.f_at_zero();
    const double total = kernels::parallel::sum_terms(p.size(), [&](std::size_t x) {
        if (q[x] == 0.0) return 0.0;
        if (p[x] == 0.0) return q[x] * f0;
        return gen.perspective(p[x], q[x]);
    });
    return clamp_small(total);
}

double eval_divergence(const Generator& gen, const Distribution& p, const Distribution& q) {
    return divergence_raw(gen, p.pmf(), q.pmf());
}

double tv_distance(const Distribution& p, const Distribution& q) {
    if (p.support_size() != q.support_size()) throw std::invalid_argument("tv_distance: support size mismatch");
    double acc = 0.0;
    for (std::size_t x = 0; x < p.support_size(); ++x) acc += std::abs(p[x] - q[x]);
    return 0.5 * acc;
}

double hellinger_distance_sq(const Distribution& p, const Distribution& q) {
    if (p.support_size() != q.support_size())
        throw std::invalid_argument("hellinger_distance_sq: support size mismatch");
    double acc = 0.0;
    for (std::size_t x = 0; x < p.support_size(); ++x) {
        const double d = std::sqrt(p[x]) - std::sqrt(q[x]);
        acc += d * d;
    }
    return acc;
}

double g_function(const Generator& gen, std::size_t n, double a) {
    check_a(n, a);
    const double nn = static_cast<double>(n);
    const double top = 1.0 - 1.0 / nn;
    a = std::min(a, top);
    // At the right end both arguments are exactly 1.
    if (a == top) return 0.0;
    return gen(nn * (1.0 - a)) + (nn - 1.0) * gen(nn * a / (nn - 1.0));
}

double g_derivative(const Generator& gen, std::size_t n, double a) {
    check_a(n, a);
    const double nn = static_cast<double>(n);
    return nn * (gen.derivative(nn * a / (nn - 1.0)) - gen.derivative(nn * (1.0 - a)));
}

}  // namespace mmlb
