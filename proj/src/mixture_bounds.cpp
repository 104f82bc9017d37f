#include "mmlb/mixture_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "mmlb/divergence.hpp"
#include "mmlb/jf_solver.hpp"
#include "mmlb/testing_risk.hpp"

namespace mmlb {

double theorem1_rhs(const Generator& gen, double w_t, double rbar) {
    if (!(w_t > 0.0 && w_t < 1.0))
        throw std::invalid_argument("theorem1_rhs: W must lie strictly between 0 and 1");
    if (!(rbar >= 0.0 && rbar <= 1.0)) throw std::invalid_argument("theorem1_rhs: rbar must lie in [0, 1]");
    return w_t * gen((1.0 - rbar) / w_t) + (1.0 - w_t) * gen(rbar / (1.0 - w_t));
}

double map_weight_mass(const Ensemble& ens, const Distribution& q) {
    if (q.support_size() != ens.support_size())
        throw std::invalid_argument("map_weight_mass: support size mismatch");
    const TestAssignment test = map_test(ens);
    double acc = 0.0;
    for (std::size_t x = 0; x < q.support_size(); ++x) acc += ens.weight(test.choice[x]) * q[x];
    return acc;
}

double weighted_divergence_sum(const Generator& gen, const Ensemble& ens, const Distribution& q) {
    double acc = 0.0;
    for (std::size_t t = 0; t < ens.size(); ++t) {
        if (ens.weight(t) == 0.0) continue;
        acc += ens.weight(t) * eval_divergence(gen, ens.member(t), q);
    }
    return acc;
}

InversionResult invert_implicit_bound(const Generator& gen, std::size_t n, double divergence_sum) {
    if (n < 2) throw std::invalid_argument("invert_implicit_bound: N must be at least 2");
    if (std::isnan(divergence_sum)) throw std::invalid_argument("invert_implicit_bound: divergence_sum is NaN");
    const double top = 1.0 - 1.0 / static_cast<double>(n);
    InversionResult out;
    out.bracket_hi = top;
    if (divergence_sum <= 0.0) {
        out.value = top;
        out.bracket_lo = top;
        return out;
    }
    const double g0 = g_function(gen, n, 0.0);
    if (g0 < divergence_sum) {
        out.g_at_value = g0;
        return out;
    }
    double lo = 0.0;
    double hi = top;
    while (hi - lo > kInversionTol) {
        const double mid = 0.5 * (lo + hi);
        if (g_function(gen, n, mid) >= divergence_sum)
            lo = mid;
        else
            hi = mid;
        ++out.iterations;
    }
    out.value = lo;
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.g_at_value = g_function(gen, n, lo);
    return out;
}

double explicit_bound(const Generator& gen, std::size_t n, double divergence_sum, double a) {
    if (!gen.has_derivative())
        throw std::invalid_argument("explicit_bound: generator '" + gen.name() +
                                    "' has no derivative; use invert_implicit_bound");
    const double top = 1.0 - 1.0 / static_cast<double>(n);
    if (!(a >= 0.0 && a < top)) throw std::invalid_argument("explicit_bound: a must lie in [0, 1-1/N)");
    const double slope = g_derivative(gen, n, a);
    if (!(slope < 0.0))
        throw std::invalid_argument("explicit_bound: g'(a) = " + std::to_string(slope) +
                                    " is not negative (a too close to 1-1/N)");
    if (!std::isfinite(slope)) return 0.0;
    const double raw = a + (divergence_sum - g_function(gen, n, a)) / slope;
    if (std::isnan(raw)) return 0.0;
    return std::clamp(raw, 0.0, top);
}

NamedFamily parse_named_family(const std::string& name) {
    if (name == "fano") return NamedFamily::fano;
    if (name == "chi2") return NamedFamily::chi2;
    if (name == "hellinger") return NamedFamily::hellinger;
    if (name == "tv") return NamedFamily::tv;
    if (name == "power_l") return NamedFamily::power_l;
    if (name == "reverse_kl_tv") return NamedFamily::reverse_kl_tv;
    throw std::invalid_argument("unknown bound family '" + name +
                                "' (expected fano, chi2, hellinger, tv, power_l, reverse_kl_tv)");
}

const char* to_string(NamedFamily family) {
    switch (family) {
        case NamedFamily::fano:
            return "fano";
        case NamedFamily::chi2:
            return "chi2";
        case NamedFamily::hellinger:
            return "hellinger";
        case NamedFamily::tv:
            return "tv";
        case NamedFamily::power_l:
            return "power_l";
        case NamedFamily::reverse_kl_tv:
            return "reverse_kl_tv";
    }
    return "?";
}

namespace {

double require(const NamedStats& stats, const std::string& key, const char* family) {
    auto it = stats.find(key);
    if (it == stats.end())
        throw std::invalid_argument(std::string("bound '") + family + "': missing statistic '" + key + "'");
    return it->second;
}

double require_n(const NamedStats& stats, const char* family) {
    const double n = require(stats, "N", family);
    if (!(n >= 2.0) || n != std::floor(n))
        throw std::invalid_argument(std::string("bound '") + family + "': N must be an integer >= 2");
    return n;
}

double require_nonneg(const NamedStats& stats, const std::string& key, const char* family) {
    const double v = require(stats, key, family);
    if (!(v >= 0.0))
        throw std::invalid_argument(std::string("bound '") + family + "': '" + key + "' must be >= 0");
    return v;
}

void reject_unknown(const NamedStats& stats, std::initializer_list<const char*> allowed, const char* family) {
    for (const auto& [key, value] : stats) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw std::invalid_argument(std::string("bound '") + family + "': unknown statistic '" + key + "'");
    }
}

}  // namespace

BoundReport named_bound(NamedFamily family, const NamedStats& stats) {
    const char* name = to_string(family);
    BoundReport r;
    r.family = name;
    for (const auto& [k, v] : stats) r.inputs[k] = num(v);
    double raw = 0.0;
    switch (family) {
        case NamedFamily::fano: {
            reject_unknown(stats, {"N", "avgKL"}, name);
            const double n = require_n(stats, name);
            const double avg = require_nonneg(stats, "avgKL", name);
            raw = 1.0 - (std::log(2.0) + avg) / std::log(n);
            break;
        }
        case NamedFamily::chi2: {
            reject_unknown(stats, {"N", "inf_sum"}, name);
            const double n = require_n(stats, name);
            const double s = require_nonneg(stats, "inf_sum", name);
            raw = 1.0 - 1.0 / n - std::sqrt(s / n) / std::sqrt(n);
            break;
        }
        case NamedFamily::hellinger: {
            reject_unknown(stats, {"N", "h2"}, name);
            const double n = require_n(stats, name);
            const double h2 = require_nonneg(stats, "h2", name);
            if (h2 > 2.0) throw std::invalid_argument("bound 'hellinger': h2 must lie in [0, 2]");
            raw = 1.0 - 1.0 / n - (n - 2.0) / n * h2 / 2.0 - std::sqrt(n - 1.0) / n * std::sqrt(h2 * (2.0 - h2));
            break;
        }
        case NamedFamily::tv: {
            reject_unknown(stats, {"N", "inf_sum", "inf_sum_tv"}, name);
            const double n = require_n(stats, name);
            const double s = stats.count("inf_sum_tv") ? require_nonneg(stats, "inf_sum_tv", name)
                                                       : require_nonneg(stats, "inf_sum", name);
            raw = 1.0 - 1.0 / n - s / n;
            break;
        }
        case NamedFamily::power_l: {
            reject_unknown(stats, {"N", "l", "inf_sum"}, name);
            const double n = require_n(stats, name);
            const double l = require(stats, "l", name);
            if (!(l > 1.0)) throw std::invalid_argument("bound 'power_l': l must exceed 1");
            const double s = require_nonneg(stats, "inf_sum", name);
            raw = 1.0 - std::pow(std::pow(n, 1.0 - l) + s / std::pow(n, l), 1.0 / l);
            break;
        }
        case NamedFamily::reverse_kl_tv: {
            reject_unknown(stats, {"inf_sum", "N"}, name);
            if (stats.count("N") && stats.at("N") != 2.0)
                throw std::invalid_argument("bound 'reverse_kl_tv': applies to pairs only (N = 2)");
            const double s = require_nonneg(stats, "inf_sum", name);
            r.direction = BoundReport::Direction::upper;
            const double v = std::sqrt(std::max(0.0, 1.0 - std::exp(-s)));
            r.value = std::clamp(v, 0.0, 1.0);
            r.vacuous = r.value >= 1.0;
            r.intermediates["raw"] = num(v);
            return r;
        }
    }
    r.intermediates["raw"] = num(raw);
    r.value = clamp_lower_bound(raw, 0.0, 1.0, r.vacuous);
    return r;
}

NamedStats named_statistics(NamedFamily family, const Ensemble& ens, double l) {
    const Ensemble uni = ens.with_uniform_prior();
    const double n = static_cast<double>(ens.size());
    switch (family) {
        case NamedFamily::fano:
            return {{"N", n}, {"avgKL", jf_closed_form(Generator::kl(), uni).value}};
        case NamedFamily::chi2:
            return {{"N", n}, {"inf_sum", n * jf_closed_form(Generator::chi2(), uni).value}};
        case NamedFamily::hellinger:
            return {{"N", n}, {"h2", average_pairwise_hellinger(uni)}};
        case NamedFamily::tv:
            return {{"N", n}, {"inf_sum", n * jf_numeric(Generator::tv(), uni).value}};
        case NamedFamily::power_l:
            return {{"N", n}, {"l", l}, {"inf_sum", n * jf_numeric(Generator::power(l), uni).value}};
        case NamedFamily::reverse_kl_tv:
            if (ens.size() != 2) throw std::invalid_argument("reverse_kl_tv: ensemble must have exactly two members");
            return {{"inf_sum", 2.0 * jf_numeric(Generator::reverse_kl(), uni).value}};
    }
    throw std::invalid_argument("named_statistics: bad family");
}

BoundReport named_bound_from_ensemble(NamedFamily family, const Ensemble& ens, double l) {
    BoundReport r = named_bound(family, named_statistics(family, ens, l));
    const Ensemble uni = ens.with_uniform_prior();
    r.inputs["members"] = ens.size();
    r.inputs["support_size"] = ens.support_size();
    if (family == NamedFamily::reverse_kl_tv)
        r.witnesses["tv_distance"] = num(tv_distance(ens.member(0), ens.member(1)));
    else
        r.witnesses["bayes_risk_uniform"] = num(bayes_risk_exact(uni).value);
    return r;
}

TwoPointWitness two_point_sharpness(double v, const Generator& gen) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("two_point_sharpness: V must lie in [0, 1]");
    TwoPointWitness w;
    const double hi = (1.0 + v) / 2.0;
    const double lo = (1.0 - v) / 2.0;
    w.p1 = Distribution::validate({hi, lo});
    w.p2 = Distribution::validate({lo, hi});
    w.q = Distribution::uniform(2);
    w.achieved = eval_divergence(gen, w.p1, w.q) + eval_divergence(gen, w.p2, w.q);
    w.tv = tv_distance(w.p1, w.p2);
    w.target = gen(1.0 + v) + gen(1.0 - v);
    return w;
}

namespace {

constexpr int kBrentBits = std::numeric_limits<double>::digits / 2;

double pair_objective(const Generator& gen, double a, double v, double q) {
    const double p1[2] = {a, 1.0 - a};
    const double p2[2] = {a - v, 1.0 - a + v};
    const double qq[2] = {q, 1.0 - q};
    return divergence_raw(gen, p1, qq) + divergence_raw(gen, p2, qq);
}

}  // namespace

TwoPointMinimum two_point_infimum(const Generator& gen, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("two_point_infimum: V must lie in [0, 1]");
    constexpr double edge = 1e-12;
    auto inner = [&](double a) {
        auto obj = [&](double q) { return pair_objective(gen, a, v, q); };
        auto res = boost::math::tools::brent_find_minima(obj, edge, 1.0 - edge, kBrentBits);
        return std::make_pair(res.first, res.second);
    };
    TwoPointMinimum out;
    if (v >= 1.0) {
        const auto [q, val] = inner(1.0);
        out = {val, 1.0, q};
        return out;
    }
    auto outer = [&](double a) { return inner(a).second; };
    const auto res = boost::math::tools::brent_find_minima(outer, v, 1.0, kBrentBits);
    const auto [q, val] = inner(res.first);
    out = {val, res.first, q};
    return out;
}

std::pair<double, double> pinsker_ratio_infimum(double v_min) {
    if (!(v_min > 0.0 && v_min < 1.0)) throw std::invalid_argument("pinsker_ratio_infimum: v_min must lie in (0, 1)");
    const Generator kl = Generator::kl();
    constexpr int steps = 200;
    constexpr double v_max = 0.999;
    double best = kInf;
    double best_v = v_min;
    for (int i = 0; i <= steps; ++i) {
        const double v = v_min * std::pow(v_max / v_min, static_cast<double>(i) / steps);
        auto ratio = [&](double a) {
            const double p1[2] = {a, 1.0 - a};
            const double p2[2] = {a - v, 1.0 - a + v};
            return divergence_raw(kl, p1, p2) / (v * v);
        };
        const auto res = boost::math::tools::brent_find_minima(ratio, v, 1.0, kBrentBits);
        if (res.second < best) {
            best = res.second;
            best_v = v;
        }
    }
    return {best, best_v};
}

}  // namespace mmlb
