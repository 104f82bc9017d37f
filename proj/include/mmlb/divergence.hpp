#pragma once

#include <cstddef>
#include <span>

#include "mmlb/distribution.hpp"
#include "mmlb/generator.hpp"

namespace mmlb {

/// Values whose magnitude is below this are reported as exactly 0.
inline constexpr double kDivergenceClamp = 1e-12;

/// D_f(P||Q) = sum_x q(x) f(p(x)/q(x)).
///
/// Boundary conventions: q(x) = p(x) = 0 contributes 0; q(x) = 0 < p(x)
/// makes the result +inf (P not absolutely continuous w.r.t. Q); p(x) = 0 <
/// q(x) contributes q(x) f(0). Throws std::invalid_argument on a support
/// size mismatch.
double eval_divergence(const Generator& gen, const Distribution& p, const Distribution& q);

/// Same as eval_divergence on raw vectors of equal length (not re-validated).
double divergence_raw(const Generator& gen, std::span<const double> p, std::span<const double> q);

/// Total variation distance sup_A |P(A) - Q(A)| = (1/2) sum |p - q|.
double tv_distance(const Distribution& p, const Distribution& q);

/// Squared Hellinger distance H^2 = sum (sqrt p - sqrt q)^2, in [0, 2].
double hellinger_distance_sq(const Distribution& p, const Distribution& q);

/// g(a) = f(N(1-a)) + (N-1) f(Na/(N-1)) for a in [0, 1-1/N]. Throws
/// std::invalid_argument for N < 2 or a outside the interval.
double g_function(const Generator& gen, std::size_t n, double a);

/// g'(a) = N [f'(Na/(N-1)) - f'(N(1-a))]. Requires a generator derivative.
double g_derivative(const Generator& gen, std::size_t n, double a);

}  // namespace mmlb
