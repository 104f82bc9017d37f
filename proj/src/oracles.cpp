#include "mmlb/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <functional>

namespace mmlb::oracle {

double direct_divergence(const Generator& gen, const Distribution& p, const Distribution& q) {
    if (p.support_size() != q.support_size()) throw std::invalid_argument("direct_divergence: support mismatch");
    double total = 0.0;
    for (std::size_t x = 0; x < p.support_size(); ++x) {
        if (q[x] == 0.0) {
            if (p[x] > 0.0) return kInf;
            continue;
        }
        total += q[x] * gen(p[x] / q[x]);
    }
    return total;
}

double enumerated_bayes_risk(const Ensemble& ens) {
    const std::size_t n = ens.size();
    const std::size_t s = ens.support_size();
    double count = 1.0;
    for (std::size_t i = 0; i < s; ++i) count *= static_cast<double>(n);
    if (count > 1e7) throw std::invalid_argument("enumerated_bayes_risk: too many tests to enumerate");
    std::vector<std::size_t> test(s, 0);
    double best = kInf;
    while (true) {
        double err = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double miss = 0.0;
            for (std::size_t x = 0; x < s; ++x)
                if (test[x] != t) miss += ens.member(t)[x];
            err += ens.weight(t) * miss;
        }
        best = std::min(best, err);
        std::size_t pos = 0;
        while (pos < s && ++test[pos] == n) test[pos++] = 0;
        if (pos == s) break;
    }
    return best;
}

namespace {

double bayes_at(const Ensemble& ens, const std::vector<double>& w) {
    double mass = 0.0;
    for (std::size_t x = 0; x < ens.support_size(); ++x) {
        double best = 0.0;
        for (std::size_t t = 0; t < ens.size(); ++t) best = std::max(best, w[t] * ens.member(t)[x]);
        mass += best;
    }
    return 1.0 - mass;
}

void simplex_grid(std::size_t dims, std::size_t steps, std::vector<std::size_t>& cur, std::size_t left,
                  const std::function<void(const std::vector<std::size_t>&)>& visit) {
    if (cur.size() + 1 == dims) {
        cur.push_back(left);
        visit(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t i = 0; i <= left; ++i) {
        cur.push_back(i);
        simplex_grid(dims, steps, cur, left - i, visit);
        cur.pop_back();
    }
}

}  // namespace

std::pair<double, std::vector<double>> grid_minimax(const Ensemble& ens, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("grid_minimax: steps must be positive");
    double best = -1.0;
    std::vector<double> arg;
    std::vector<std::size_t> cur;
    simplex_grid(ens.size(), steps, cur, steps, [&](const std::vector<std::size_t>& idx) {
        std::vector<double> w(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) w[i] = static_cast<double>(idx[i]) / static_cast<double>(steps);
        const double v = bayes_at(ens, w);
        if (v > best) {
            best = v;
            arg = w;
        }
    });
    return {best, arg};
}

std::pair<double, std::vector<double>> grid_jf(const Generator& gen, const Ensemble& ens, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("grid_jf: steps must be positive");
    const std::size_t s = ens.support_size();
    const double nn = static_cast<double>(ens.size());
    const std::size_t g = steps + 1;
    // cost[x][u]: contribution of sample point x when q(x) = u / steps.
    std::vector<std::vector<double>> cost(s, std::vector<double>(g));
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t u = 0; u < g; ++u) {
            const double q = static_cast<double>(u) / static_cast<double>(steps);
            double c = 0.0;
            for (const auto& m : ens.members()) {
                const double p = m[x];
                if (q == 0.0)
                    c += p > 0.0 ? kInf : 0.0;
                else
                    c += q * gen(p / q);
            }
            cost[x][u] = c / nn;
        }
    std::vector<double> dp = cost[0];
    std::vector<std::vector<std::size_t>> choice(s, std::vector<std::size_t>(g, 0));
    for (std::size_t t = 0; t < g; ++t) choice[0][t] = t;
    for (std::size_t x = 1; x < s; ++x) {
        std::vector<double> next(g, kInf);
        for (std::size_t t = 0; t < g; ++t)
            for (std::size_t u = 0; u <= t; ++u) {
                const double v = dp[t - u] + cost[x][u];
                if (v < next[t]) {
                    next[t] = v;
                    choice[x][t] = u;
                }
            }
        dp = std::move(next);
    }
    std::vector<double> q(s);
    std::size_t left = steps;
    for (std::size_t x = s; x-- > 0;) {
        const std::size_t u = choice[x][left];
        q[x] = static_cast<double>(u) / static_cast<double>(steps);
        left -= u;
    }
    return {dp[steps], q};
}

double planar_cap_distance_p1(double epsilon) {
    const double a = std::acos(1.0 - epsilon);
    return 2.0 * (a - std::sin(a));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

/// Support function of the disc with the arcs (c - alpha, c + alpha), c in
/// `cut`, removed from its boundary (the arcs are disjoint).
double planar_support(const std::vector<double>& cut, double alpha, double psi) {
    for (double c : cut) {
        double off = std::abs(wrap(psi - c));
        off = std::min(off, kTwoPi - off);
        if (off < alpha) {
            // Nearest remaining boundary points are the two arc endpoints.
            const double to_lo = alpha + (wrap(psi - c) < std::numbers::pi ? off : -off);
            const double to_hi = 2.0 * alpha - to_lo;
            return std::cos(std::min(to_lo, to_hi));
        }
    }
    return 1.0;
}

}  // namespace

double planar_support_distance_pow(const std::vector<double>& angles, double alpha, const std::vector<int>& word_a,
                                   const std::vector<int>& word_b, double p) {
    if (word_a.size() != angles.size() || word_b.size() != angles.size())
        throw std::invalid_argument("planar_support_distance_pow: word length must match the number of angles");
    std::vector<double> cut_a, cut_b, breaks{0.0, kTwoPi};
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (word_a[i]) cut_a.push_back(angles[i]);
        if (word_b[i]) cut_b.push_back(angles[i]);
        for (double e : {angles[i] - alpha, angles[i], angles[i] + alpha}) breaks.push_back(wrap(e));
    }
    std::sort(breaks.begin(), breaks.end());
    auto integrand = [&](double psi) {
        return std::pow(std::abs(planar_support(cut_a, alpha, psi) - planar_support(cut_b, alpha, psi)), p);
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] - breaks[i] <= 0.0) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, breaks[i], breaks[i + 1], 15,
                                                                               1e-13);
    }
    return total;
}

}  // namespace mmlb::oracle
