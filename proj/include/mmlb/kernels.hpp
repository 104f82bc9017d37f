#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// kernels::serial and an OpenMP version in kernels::parallel with the same
// signature. The library calls the parallel versions; tests and the benchmark
// compare the two.
//
// Reductions in the parallel versions are deterministic: sums are taken over
// fixed-size blocks whose partials are combined in index order, so the result
// does not depend on the thread count or schedule. Min/argmax reductions are
// exact.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace mmlb::kernels {

inline constexpr std::size_t kSumBlock = 1024;
/// Below this many iterations the parallel kernels stay on one thread.
inline constexpr std::size_t kParallelThreshold = 2048;

namespace serial {

inline double sum(std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
}

/// sum_x max_theta w_theta p_theta(x) for members packed row-major (n x s).
inline double bayes_mass(std::span<const double> packed, std::size_t n, std::size_t s,
                         std::span<const double> prior) {
    double acc = 0.0;
    for (std::size_t x = 0; x < s; ++x) {
        double best = prior[0] * packed[x];
        for (std::size_t t = 1; t < n; ++t) best = std::max(best, prior[t] * packed[t * s + x]);
        acc += best;
    }
    return acc;
}

/// argmax_theta w_theta p_theta(x) per sample point, lowest index on ties.
inline std::vector<std::size_t> map_assign(std::span<const double> packed, std::size_t n,
                                           std::size_t s, std::span<const double> prior) {
    std::vector<std::size_t> choice(s, 0);
    for (std::size_t x = 0; x < s; ++x) {
        double best = prior[0] * packed[x];
        for (std::size_t t = 1; t < n; ++t) {
            const double v = prior[t] * packed[t * s + x];
            if (v > best) {
                best = v;
                choice[x] = t;
            }
        }
    }
    return choice;
}

template <class Term>
double sum_terms(std::size_t count, Term&& term) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += term(i);
    return acc;
}

template <class Fn>
std::vector<double> evaluate(std::size_t count, Fn&& fn) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
}

/// Minimum of fn(i, j) over 0 <= i < j < count; `init` when count < 2.
template <class T, class Fn>
T min_pairwise(std::size_t count, T init, Fn&& fn) {
    T best = init;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) best = std::min(best, fn(i, j));
    return best;
}

/// One step of the lexicographic product expansion: out[a * k + b] = acc[a] * base[b].
inline std::vector<double> product_step(std::span<const double> acc, std::span<const double> base) {
    const std::size_t k = base.size();
    std::vector<double> out(acc.size() * k);
    for (std::size_t a = 0; a < acc.size(); ++a)
        for (std::size_t b = 0; b < k; ++b) out[a * k + b] = acc[a] * base[b];
    return out;
}

}  // namespace serial

namespace parallel {

inline double sum(std::span<const double> values) {
    const std::size_t blocks = (values.size() + kSumBlock - 1) / kSumBlock;
    std::vector<double> partial(blocks, 0.0);
    const long long nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static) if (values.size() > kParallelThreshold)
    for (long long b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
        const std::size_t hi = std::min(values.size(), lo + kSumBlock);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += values[i];
        partial[static_cast<std::size_t>(b)] = acc;
    }
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

template <class Fn>
std::vector<double> evaluate(std::size_t count, Fn&& fn) {
    std::vector<double> out(count);
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(static) if (count > 1)
    for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return out;
}

template <class Term>
double sum_terms(std::size_t count, Term&& term) {
    if (count <= kParallelThreshold) return serial::sum_terms(count, term);
    const std::vector<double> values = evaluate(count, term);
    return sum(values);
}

inline double bayes_mass(std::span<const double> packed, std::size_t n, std::size_t s,
                         std::span<const double> prior) {
    if (s <= kParallelThreshold) return serial::bayes_mass(packed, n, s, prior);
    return sum_terms(s, [&](std::size_t x) {
        double best = prior[0] * packed[x];
        for (std::size_t t = 1; t < n; ++t) best = std::max(best, prior[t] * packed[t * s + x]);
        return best;
    });
}

inline std::vector<std::size_t> map_assign(std::span<const double> packed, std::size_t n,
                                           std::size_t s, std::span<const double> prior) {
    std::vector<std::size_t> choice(s, 0);
    const long long ns = static_cast<long long>(s);
#pragma omp parallel for schedule(static) if (s > kParallelThreshold)
    for (long long xi = 0; xi < ns; ++xi) {
        const std::size_t x = static_cast<std::size_t>(xi);
        double best = prior[0] * packed[x];
        for (std::size_t t = 1; t < n; ++t) {
            const double v = prior[t] * packed[t * s + x];
            if (v > best) {
                best = v;
                choice[x] = t;
            }
        }
    }
    return choice;
}

template <class T, class Fn>
T min_pairwise(std::size_t count, T init, Fn&& fn) {
    T best = init;
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best) if (count > 64)
    for (long long i = 0; i < n; ++i)
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < count; ++j)
            best = std::min(best, fn(static_cast<std::size_t>(i), j));
    return best;
}

inline std::vector<double> product_step(std::span<const double> acc, std::span<const double> base) {
    const std::size_t k = base.size();
    std::vector<double> out(acc.size() * k);
    const long long na = static_cast<long long>(acc.size());
#pragma omp parallel for schedule(static) if (acc.size() * k > kParallelThreshold)
    for (long long a = 0; a < na; ++a)
        for (std::size_t b = 0; b < k; ++b)
            out[static_cast<std::size_t>(a) * k + b] = acc[static_cast<std::size_t>(a)] * base[b];
    return out;
}

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels may use (1 without OpenMP).
int max_threads();

}  // namespace mmlb::kernels
