#include "mmlb/jf_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "mmlb/divergence.hpp"
#include "mmlb/errors.hpp"
#include "mmlb/kernels.hpp"

namespace mmlb {

const char* to_string(JfResult::Method m) {
    return m == JfResult::Method::closed_form ? "closed_form" : "numeric";
}

bool has_jf_closed_form(const Generator& gen) {
    using K = Generator::Kind;
    return gen.kind() == K::kl || gen.kind() == K::chi2 || gen.kind() == K::hellinger_half;
}

namespace {

double average_divergence_to(const Generator& gen, const Ensemble& ens, std::span<const double> q) {
    double acc = 0.0;
    for (const auto& m : ens.members()) acc += divergence_raw(gen, m.pmf(), q);
    return acc / static_cast<double>(ens.size());
}

Distribution normalized(std::vector<double> v) {
    double total = 0.0;
    for (double x : v) total += x;
    for (double& x : v) x /= total;
    return Distribution::validate(std::move(v), 1e-9);
}

// lim_{q -> 0+} q f(p/q) for p > 0.
double perspective_at_zero(const Generator& gen, double p) {
    using K = Generator::Kind;
    switch (gen.kind()) {
        case K::kl:
        case K::chi2:
        case K::power:
            return kInf;
        case K::reverse_kl:
        case K::hellinger_half:
            return 0.0;
        case K::hellinger_sq:
            return p;
        case K::tv:
            return 0.5 * p;
        case K::custom:
            break;
    }
    constexpr double big = 1e12;
    return p * gen(big) / big;
}

// One coordinate of the separable objective: phi(q) = (1/N) sum_theta q f(p_theta/q).
struct Coordinate {
    std::vector<double> p;
    bool blocked = false;  // every q > 0 gives +inf
};

class Separable {
public:
    Separable(const Generator& gen, const Ensemble& ens, std::vector<std::size_t> support)
        : gen_(gen), support_(std::move(support)), inv_n_(1.0 / static_cast<double>(ens.size())) {
        coords_.resize(support_.size());
        for (std::size_t i = 0; i < support_.size(); ++i) {
            auto& c = coords_[i];
            c.p.resize(ens.size());
            for (std::size_t t = 0; t < ens.size(); ++t) {
                c.p[t] = ens.member(t)[support_[i]];
                if (c.p[t] == 0.0 && std::isinf(gen.f_at_zero())) c.blocked = true;
            }
        }
    }

    std::size_t size() const { return coords_.size(); }
    std::size_t index(std::size_t i) const { return support_[i]; }
    bool all_blocked() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Coordinate& c) { return c.blocked; });
    }

    double phi(std::size_t i, double q) const {
        double acc = 0.0;
        for (double p : coords_[i].p) {
            if (q == 0.0)
                acc += p == 0.0 ? 0.0 : perspective_at_zero(gen_, p);
            else
                acc += p == 0.0 ? q * gen_.f_at_zero() : gen_.perspective(p, q);
        }
        return acc * inv_n_;
    }

    double dphi(std::size_t i, double q) const {
        double acc = 0.0;
        for (double p : coords_[i].p) {
            if (p == 0.0) {
                acc += gen_.f_at_zero();
            } else {
                // Past this ratio f(r) - r f'(r) overflows to inf - inf. Below
                // q = p / kMaxRatio only the sign matters and it no longer changes.
                constexpr double kMaxRatio = 1e15;
                const double r = std::min(p / q, kMaxRatio);
                acc += gen_(r) - r * gen_.derivative(r);
            }
        }
        return acc * inv_n_;
    }

    // argmin over q in [0, 1] of phi(q) + lambda q.
    double argmin(std::size_t i, double lambda) const {
        if (coords_[i].blocked) return 0.0;
        if (gen_.has_derivative()) {
            if (dphi(i, 1.0) + lambda <= 0.0) return 1.0;
            double lo = -745.0;
            double hi = 0.0;
            if (dphi(i, std::exp(lo)) + lambda >= 0.0) return 0.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (dphi(i, std::exp(mid)) + lambda < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return std::exp(0.5 * (lo + hi));
        }
        auto psi = [&](double q) { return phi(i, q) + lambda * q; };
        const auto res = boost::math::tools::brent_find_minima(psi, 0.0, 1.0, 52);
        double best = res.first;
        for (double edge : {0.0, 1.0})
            if (psi(edge) < psi(best)) best = edge;
        return best;
    }

    struct Point {
        std::vector<double> q;
        double total = 0.0;
        double dual = 0.0;
    };

    Point at(double lambda) const {
        Point pt;
        pt.q = kernels::parallel::evaluate(size(), [&](std::size_t i) { return argmin(i, lambda); });
        double dual = -lambda;
        for (std::size_t i = 0; i < size(); ++i) {
            pt.total += pt.q[i];
            dual += phi(i, pt.q[i]) + lambda * pt.q[i];
        }
        pt.dual = dual;
        return pt;
    }

private:
    const Generator& gen_;
    std::vector<std::size_t> support_;
    double inv_n_;
    std::vector<Coordinate> coords_;
};

}  // namespace

JfResult jf_closed_form(const Generator& gen, const Ensemble& ens) {
    const std::size_t s = ens.support_size();
    const double n = static_cast<double>(ens.size());
    JfResult out;
    out.method = JfResult::Method::closed_form;
    switch (gen.kind()) {
        case Generator::Kind::kl: {
            out.minimizer = ens.uniform_mixture();
            out.value = average_divergence_to(gen, ens, out.minimizer.pmf());
            break;
        }
        case Generator::Kind::chi2: {
            std::vector<double> root(s, 0.0);
            double mass = 0.0;
            for (std::size_t x = 0; x < s; ++x) {
                double sq = 0.0;
                for (const auto& m : ens.members()) sq += m[x] * m[x];
                root[x] = std::sqrt(sq);
                mass += root[x];
            }
            out.value = std::max(0.0, mass * mass / n - 1.0);
            out.minimizer = normalized(std::move(root));
            break;
        }
        case Generator::Kind::hellinger_half: {
            std::vector<double> u2(s, 0.0);
            double mass = 0.0;
            for (std::size_t x = 0; x < s; ++x) {
                double u = 0.0;
                for (const auto& m : ens.members()) u += std::sqrt(m[x]);
                u2[x] = u * u;
                mass += u2[x];
            }
            out.value = std::max(0.0, 1.0 - std::sqrt(mass) / n);
            out.minimizer = normalized(std::move(u2));
            break;
        }
        default:
            throw std::invalid_argument("jf_closed_form: no closed form for generator '" + gen.name() +
                                        "' (kl, chi2, hellinger_half only)");
    }
    if (out.value < kDivergenceClamp) out.value = 0.0;
    out.dual_value = out.value;
    return out;
}

JfResult jf_numeric(const Generator& gen, const Ensemble& ens, double tol, std::size_t max_iterations) {
    if (!(tol > 0.0)) throw std::invalid_argument("jf_numeric: tol must be positive");
    const std::size_t s = ens.support_size();
    std::vector<std::size_t> support;
    for (std::size_t x = 0; x < s; ++x) {
        bool used = false;
        for (const auto& m : ens.members()) used = used || m[x] > 0.0;
        if (used) support.push_back(x);
    }
    const Separable sep(gen, ens, support);

    JfResult out;
    out.method = JfResult::Method::numeric;
    if (sep.all_blocked()) {
        out.minimizer = ens.uniform_mixture();
        out.value = kInf;
        out.dual_value = kInf;
        return out;
    }

    std::size_t evals = 0;
    auto eval = [&](double lambda) {
        if (++evals > max_iterations)
            throw ConvergenceError("jf_numeric: iteration cap of " + std::to_string(max_iterations) + " reached");
        return sep.at(lambda);
    };

    double lam_lo = -1.0;
    double lam_hi = 1.0;
    auto lo = eval(lam_lo);
    while (lo.total < 1.0) {
        lam_lo *= 2.0;
        lo = eval(lam_lo);
    }
    auto hi = eval(lam_hi);
    while (hi.total > 1.0) {
        lam_hi *= 2.0;
        hi = eval(lam_hi);
    }
    double best_dual = std::max(lo.dual, hi.dual);
    for (int it = 0; it < 200; ++it) {
        if (lam_hi - lam_lo <= 1e-15 * std::max(1.0, std::abs(lam_lo))) break;
        const double mid = 0.5 * (lam_lo + lam_hi);
        auto pt = eval(mid);
        best_dual = std::max(best_dual, pt.dual);
        if (pt.total >= 1.0) {
            lam_lo = mid;
            lo = std::move(pt);
        } else {
            lam_hi = mid;
            hi = std::move(pt);
        }
        if (std::abs(lo.total - 1.0) < 1e-15 || std::abs(hi.total - 1.0) < 1e-15) break;
    }

    const double spread = lo.total - hi.total;
    const double t = spread > 0.0 ? (1.0 - hi.total) / spread : 1.0;
    std::vector<double> q(s, 0.0);
    for (std::size_t i = 0; i < sep.size(); ++i) q[sep.index(i)] = t * lo.q[i] + (1.0 - t) * hi.q[i];
    out.minimizer = normalized(std::move(q));
    out.value = average_divergence_to(gen, ens, out.minimizer.pmf());
    out.dual_value = std::min(best_dual, out.value);
    out.iterations = evals;
    const double gap = out.value - best_dual;
    if (gap > tol * std::max(1.0, std::abs(out.value)))
        throw ConvergenceError("jf_numeric: duality gap " + std::to_string(gap) + " exceeds tolerance for '" +
                               gen.name() + "'");
    if (out.value < kDivergenceClamp) out.value = 0.0;
    out.dual_value = std::max(0.0, out.dual_value);
    return out;
}

JfResult jf_exact(const Generator& gen, const Ensemble& ens) {
    return has_jf_closed_form(gen) ? jf_closed_form(gen, ens) : jf_numeric(gen, ens);
}

std::vector<double> pairwise_divergences(const Generator& gen, const Ensemble& ens) {
    const std::size_t n = ens.size();
    return kernels::parallel::evaluate(n * n, [&](std::size_t k) {
        const std::size_t i = k / n;
        const std::size_t j = k % n;
        return i == j ? 0.0 : eval_divergence(gen, ens.member(i), ens.member(j));
    });
}

ChainBounds simple_chain(const Generator& gen, const Ensemble& ens) {
    ChainBounds out;
    const Distribution mix = ens.uniform_mixture();
    out.to_mixture = average_divergence_to(gen, ens, mix.pmf());
    const std::vector<double> pair = pairwise_divergences(gen, ens);
    const double n = static_cast<double>(ens.size());
    double acc = 0.0;
    double mx = 0.0;
    for (double v : pair) {
        acc += v;
        mx = std::max(mx, v);
    }
    out.pairwise_average = acc / (n * n);
    out.pairwise_max = mx;
    return out;
}

double average_pairwise_hellinger(const Ensemble& ens) {
    const std::size_t n = ens.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) acc += hellinger_distance_sq(ens.member(i), ens.member(j));
    return acc / static_cast<double>(n * n);
}

CoveringResult covering_upper_bound(const Generator& gen, const Ensemble& ens, const CoveringFamily& family) {
    const std::size_t m = family.candidates.size();
    if (m == 0) throw std::invalid_argument("covering_upper_bound: at least one candidate required");
    for (const auto& c : family.candidates)
        if (c.support_size() != ens.support_size())
            throw std::invalid_argument("covering_upper_bound: candidate support size mismatch");

    CoveringResult out;
    out.member_errors.resize(ens.size());
    if (family.assignment) {
        if (family.assignment->size() != ens.size())
            throw std::invalid_argument("covering_upper_bound: assignment needs one entry per member");
        for (std::size_t j : *family.assignment)
            if (j >= m) throw std::invalid_argument("covering_upper_bound: assignment index out of range");
        out.assignment = *family.assignment;
        for (std::size_t t = 0; t < ens.size(); ++t)
            out.member_errors[t] = eval_divergence(gen, ens.member(t), family.candidates[out.assignment[t]]);
    } else {
        out.assignment.assign(ens.size(), 0);
        for (std::size_t t = 0; t < ens.size(); ++t) {
            double best = kInf;
            for (std::size_t a = 0; a < m; ++a) {
                const double d = eval_divergence(gen, ens.member(t), family.candidates[a]);
                if (d < best) {
                    best = d;
                    out.assignment[t] = a;
                }
            }
            out.member_errors[t] = best;
        }
    }
    out.approx_error = *std::max_element(out.member_errors.begin(), out.member_errors.end());

    const double mm = static_cast<double>(m);
    double total = 0.0;
    for (std::size_t t = 0; t < ens.size(); ++t) {
        const Distribution& p = ens.member(t);
        const Distribution& q = family.candidates[out.assignment[t]];
        for (std::size_t x = 0; x < p.support_size(); ++x) {
            if (q[x] == 0.0) {
                if (p[x] > 0.0) total = kInf;
                continue;
            }
            total += p[x] == 0.0 ? q[x] / mm * gen.f_at_zero() : gen.perspective(p[x], q[x] / mm);
        }
    }
    double value = total / static_cast<double>(ens.size());
    if (m > 1) value += (1.0 - 1.0 / mm) * gen.f_at_zero();
    if (std::isnan(value)) value = kInf;
    out.value = value;
    return out;
}

CoverKind parse_cover_kind(const std::string& name) {
    if (name == "kl") return CoverKind::kl;
    if (name == "chi2") return CoverKind::chi2;
    if (name == "power_l") return CoverKind::power_l;
    if (name == "hellinger_sq") return CoverKind::hellinger_sq;
    throw std::invalid_argument("unknown covering kind '" + name + "' (expected kl, chi2, power_l, hellinger_sq)");
}

const char* to_string(CoverKind kind) {
    switch (kind) {
        case CoverKind::kl:
            return "kl";
        case CoverKind::chi2:
            return "chi2";
        case CoverKind::power_l:
            return "power_l";
        case CoverKind::hellinger_sq:
            return "hellinger_sq";
    }
    return "?";
}

Generator cover_generator(CoverKind kind, double l) {
    switch (kind) {
        case CoverKind::kl:
            return Generator::kl();
        case CoverKind::chi2:
            return Generator::chi2();
        case CoverKind::power_l:
            return Generator::power(l);
        case CoverKind::hellinger_sq:
            return Generator::hellinger_sq();
    }
    throw std::invalid_argument("cover_generator: bad kind");
}

double covering_specialization(CoverKind kind, double m, double approx_error, double l) {
    if (!(m >= 1.0)) throw std::invalid_argument("covering_specialization: M must be at least 1");
    if (!(approx_error >= 0.0)) throw std::invalid_argument("covering_specialization: approx_error must be >= 0");
    switch (kind) {
        case CoverKind::kl:
            return std::log(m) + approx_error;
        case CoverKind::chi2:
            return m * (approx_error + 1.0) - 1.0;
        case CoverKind::power_l:
            if (!(l > 1.0)) throw std::invalid_argument("covering_specialization: l must exceed 1");
            return std::pow(m, l - 1.0) * (approx_error + 1.0) - 1.0;
        case CoverKind::hellinger_sq:
            return 2.0 - (2.0 - approx_error) / std::sqrt(m);
    }
    throw std::invalid_argument("covering_specialization: bad kind");
}

}  // namespace mmlb
