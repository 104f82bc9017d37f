#include "mmlb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "mmlb/caps.hpp"
#include "mmlb/codes.hpp"
#include "mmlb/covariance.hpp"
#include "mmlb/divergence.hpp"
#include "mmlb/entropy_bounds.hpp"
#include "mmlb/jf_solver.hpp"
#include "mmlb/mixture_bounds.hpp"
#include "mmlb/oracles.hpp"
#include "mmlb/random_instances.hpp"
#include "mmlb/testing_risk.hpp"

namespace mmlb {

namespace {

/// One inequality checked over many cases. Slack is (allowed side - checked
/// side); the check passes when every slack is >= -tolerance.
class Check {
public:
    Check(std::string name, double tolerance) : name_(std::move(name)), tol_(tolerance) {}

    /// lhs <= rhs; an infinite rhs always holds, infinite lhs only against infinite rhs.
    void le(double lhs, double rhs) {
        if (std::isinf(rhs) && rhs > 0.0)
            add(0.0);
        else if (std::isinf(lhs) && lhs < 0.0)
            add(0.0);
        else
            add(rhs - lhs);
    }
    void ge(double lhs, double rhs) { le(rhs, lhs); }
    void near(double a, double b) {
        if (a == b)
            add(0.0);
        else
            add(-std::abs(a - b));
    }
    void truth(bool ok) { add(ok ? 0.0 : -1.0); }

    void add(double slack) {
        ++cases_;
        if (std::isnan(slack)) slack = -kInf;
        worst_ = std::min(worst_, slack);
    }

    bool passed() const { return cases_ > 0 && worst_ >= -tol_; }

    Json to_json() const {
        Json j;
        j["name"] = name_;
        j["cases"] = cases_;
        j["worst_slack"] = num(cases_ ? worst_ : 0.0);
        j["tolerance"] = num(tol_);
        j["passed"] = passed();
        return j;
    }

private:
    std::string name_;
    double tol_;
    std::size_t cases_ = 0;
    double worst_ = kInf;
};

class Suite {
public:
    explicit Suite(std::string name) : name_(std::move(name)) {}

    Check& check(const std::string& name, double tol) {
        checks_.emplace_back(name, tol);
        return checks_.back();
    }

    Json to_json() const {
        Json j;
        j["name"] = name_;
        j["checks"] = Json::array();
        bool ok = true;
        for (const auto& c : checks_) {
            j["checks"].push_back(c.to_json());
            ok = ok && c.passed();
        }
        j["passed"] = ok;
        return j;
    }

private:
    std::string name_;
    std::deque<Check> checks_;
};

std::vector<Ensemble> instances(Rng& rng, std::size_t count, std::size_t max_n, std::size_t max_support,
                                const std::vector<Ensemble>& extra, bool random_weights = false) {
    std::vector<Ensemble> out(extra.begin(), extra.end());
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = uniform_index(rng, 2, max_n);
        const std::size_t s = uniform_index(rng, 2, max_support);
        const double zero = i % 4 == 3 ? 0.3 : 0.0;
        out.push_back(random_ensemble(rng, n, s, zero, random_weights));
    }
    return out;
}

Json suite_dist(Rng& rng) {
    Suite s("dist");
    auto& valid = s.check("product_is_normalized", 1e-12);
    auto& marg = s.check("product_marginals_equal_base", 1e-12);
    for (int i = 0; i < 100; ++i) {
        const auto base = random_distribution(rng, uniform_index(rng, 1, 4), i % 3 == 0 ? 0.3 : 0.0);
        const auto n = static_cast<unsigned>(uniform_index(rng, 1, 4));
        const auto prod = product_distribution(base, n);
        double total = 0.0;
        bool nonneg = true;
        for (double v : prod.pmf()) {
            total += v;
            nonneg = nonneg && v >= 0.0;
        }
        valid.add(nonneg ? -std::abs(total - 1.0) : -1.0);
        for (unsigned c = 0; c < n; ++c) {
            const auto m = marginal(prod, base.support_size(), n, c);
            for (std::size_t x = 0; x < m.size(); ++x) marg.near(m[x], base[x]);
        }
    }
    return s.to_json();
}

Json suite_fdiv(Rng& rng) {
    Suite s("fdiv");
    auto& nonneg = s.check("divergence_nonnegative", 1e-12);
    auto& direct = s.check("divergence_matches_direct_sum", 1e-12);
    auto& pinsker = s.check("pinsker", 1e-12);
    auto& lecam = s.check("le_cam", 1e-12);
    auto& topsoe = s.check("topsoe", 1e-12);
    auto& factor2 = s.check("hellinger_forms_factor_two", 1e-12);
    auto& gmono = s.check("g_nonincreasing", 1e-12);
    auto& gconv = s.check("g_midpoint_convex", 1e-9);
    const auto gens = builtin_generators();
    for (int i = 0; i < 300; ++i) {
        const std::size_t k = uniform_index(rng, 2, 16);
        const double zero = i % 3 == 2 ? 0.25 : 0.0;
        const auto p = random_distribution(rng, k, zero);
        const auto q = random_distribution(rng, k, zero);
        for (const auto& g : gens) {
            const double d = eval_divergence(g, p, q);
            nonneg.ge(d, 0.0);
            const double o = oracle::direct_divergence(g, p, q);
            if (std::isinf(d) || std::isinf(o))
                direct.truth(d == o);
            else
                direct.add(-std::abs(d - std::max(0.0, o)) / std::max(1.0, std::abs(o)));
        }
        const double v = tv_distance(p, q);
        pinsker.ge(eval_divergence(Generator::kl(), p, q), 2.0 * v * v);
        const double h2 = hellinger_distance_sq(p, q);
        lecam.le(v, std::sqrt(h2) * std::sqrt(std::max(0.0, 1.0 - h2 / 4.0)));
        const std::array<double, 2> half{0.5, 0.5};
        const std::array<Distribution, 2> pair{p, q};
        const auto mid = mixture(pair, half);
        const double lhs = eval_divergence(Generator::kl(), p, mid) + eval_divergence(Generator::kl(), q, mid);
        const double rhs = (1.0 + v) * std::log1p(v) + (v < 1.0 ? (1.0 - v) * std::log1p(-v) : 0.0);
        topsoe.ge(lhs, rhs);
        factor2.near(eval_divergence(Generator::hellinger_sq(), p, q),
                     2.0 * eval_divergence(Generator::hellinger_half(), p, q));
    }
    for (const auto& g : gens) {
        for (std::size_t n = 2; n <= 6; ++n) {
            const double top = 1.0 - 1.0 / static_cast<double>(n);
            constexpr int steps = 64;
            std::vector<double> vals(steps + 1);
            for (int i = 0; i <= steps; ++i) vals[i] = g_function(g, n, top * i / steps);
            for (int i = 0; i < steps; ++i) gmono.ge(vals[i], vals[i + 1]);
            for (int i = 1; i < steps; ++i) {
                if (std::isinf(vals[i - 1])) continue;
                const double scale = std::max(1.0, std::abs(vals[i - 1]) + std::abs(vals[i + 1]));
                gconv.add(((vals[i - 1] + vals[i + 1]) / 2.0 - vals[i]) / scale);
            }
        }
    }
    return s.to_json();
}

Json suite_testing(Rng& rng, const std::vector<Ensemble>& extra) {
    Suite s("testing");
    auto& map_eq = s.check("map_test_attains_bayes_risk", 1e-12);
    auto& enum_eq = s.check("bayes_risk_matches_enumeration", 1e-12);
    auto& upper = s.check("uniform_bayes_risk_at_most_1_minus_1_over_N", 1e-12);
    auto& concave = s.check("bayes_risk_concave_in_prior", 1e-12);
    auto& minimax = s.check("minimax_dominates_bayes", kDefaultMinimaxTol);
    auto& grid = s.check("minimax_matches_prior_grid", 2e-3);
    const auto ens_list = instances(rng, 200, 5, 8, extra, true);
    for (std::size_t i = 0; i < ens_list.size(); ++i) {
        const auto& ens = ens_list[i];
        const double r = bayes_risk_exact(ens).value;
        map_eq.near(average_error(ens, map_test(ens)), r);
        if (std::pow(static_cast<double>(ens.size()), static_cast<double>(ens.support_size())) <= 2e5)
            enum_eq.near(oracle::enumerated_bayes_risk(ens), r);
        const auto uni = ens.with_uniform_prior();
        upper.le(bayes_risk_exact(uni).value, 1.0 - 1.0 / static_cast<double>(ens.size()));
        const auto w1 = random_prior(rng, ens.size());
        const auto w2 = random_prior(rng, ens.size());
        std::vector<double> mid(ens.size());
        for (std::size_t t = 0; t < mid.size(); ++t) mid[t] = (w1[t] + w2[t]) / 2.0;
        concave.ge(bayes_risk_exact(ens.with_prior(mid)).value,
                   (bayes_risk_exact(ens.with_prior(w1)).value + bayes_risk_exact(ens.with_prior(w2)).value) / 2.0);
        if (i % 4 == 0) {
            const auto mm = minimax_risk(ens);
            minimax.ge(mm.value, bayes_risk_exact(uni).value);
            minimax.ge(mm.value, bayes_risk_exact(ens.with_prior(w1)).value);
            if (ens.size() <= 3) grid.near(oracle::grid_minimax(ens, ens.size() == 2 ? 10000 : 200).first, mm.value);
        }
    }
    return s.to_json();
}

Json suite_mixture(Rng& rng, const std::vector<Ensemble>& extra) {
    Suite s("mixture");
    auto& sound = s.check("theorem1_soundness", 1e-9);
    auto& named = s.check("named_bounds_below_bayes_risk", 1e-9);
    auto& implicit = s.check("implicit_inversion_below_bayes_risk", 1e-9);
    auto& tangent = s.check("explicit_bound_below_implicit", 1e-9);
    auto& witness = s.check("two_point_witness_exact", 1e-12);
    const auto gens = builtin_generators();
    const auto ens_list = instances(rng, 150, 5, 10, extra, true);
    for (std::size_t i = 0; i < ens_list.size(); ++i) {
        const auto& ens = ens_list[i];
        const double r = bayes_risk_exact(ens).value;
        const auto q = random_distribution(rng, ens.support_size());
        const double w = map_weight_mass(ens, q);
        if (w > 0.0 && w < 1.0)
            for (const auto& g : gens) sound.le(theorem1_rhs(g, w, r), weighted_divergence_sum(g, ens, q));
        if (i % 3 != 0) continue;
        const auto uni = ens.with_uniform_prior();
        const double ru = bayes_risk_exact(uni).value;
        for (auto fam : {NamedFamily::fano, NamedFamily::chi2, NamedFamily::hellinger, NamedFamily::tv,
                         NamedFamily::power_l})
            named.le(named_bound_from_ensemble(fam, uni).value, ru);
        const double n = static_cast<double>(ens.size());
        for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::hellinger_half()}) {
            const double sum = n * jf_exact(g, uni).value;
            const double inv = invert_implicit_bound(g, ens.size(), sum).value;
            implicit.le(inv, ru);
            const double top = 1.0 - 1.0 / n;
            for (double a : {0.0, top / 4.0, top / 2.0, 3.0 * top / 4.0})
                if (g_derivative(g, ens.size(), a) < 0.0) tangent.le(explicit_bound(g, ens.size(), sum, a), inv);
        }
    }
    for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::power(3.0)})
        for (int k = 0; k <= 10; ++k) {
            const auto wit = two_point_sharpness(k / 10.0, g);
            witness.near(wit.achieved, wit.target);
            witness.near(wit.tv, k / 10.0);
        }
    return s.to_json();
}

Json suite_jf(Rng& rng, const std::vector<Ensemble>& extra) {
    Suite s("jf");
    auto& closed = s.check("closed_form_matches_numeric", 1e-6);
    auto& grid = s.check("closed_form_matches_grid_search", 2e-3);
    auto& comp = s.check("compensation_identity", 1e-10);
    auto& chain = s.check("simple_chain_ordering", 1e-9);
    auto& cover = s.check("covering_bounds_dominate_jf", 1e-6);
    auto& special = s.check("specialization_dominates_generic_cover", 1e-9);
    std::vector<Ensemble> small;
    for (const auto& e : extra)
        if (e.support_size() <= 4) small.push_back(e);
    const auto ens_list = instances(rng, 60, 5, 4, small);
    for (std::size_t i = 0; i < ens_list.size(); ++i) {
        const auto& ens = ens_list[i].with_uniform_prior();
        const double n = static_cast<double>(ens.size());
        for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::hellinger_half()}) {
            const double c = jf_closed_form(g, ens).value;
            closed.near(c, jf_numeric(g, ens).value);
            if (i % 6 == 0 && ens.support_size() <= 3) grid.le(c, oracle::grid_jf(g, ens).first);
            const auto ch = simple_chain(g, ens);
            chain.le(ch.to_mixture, ch.pairwise_average);
            chain.le(ch.pairwise_average, ch.pairwise_max);
            chain.ge(ch.to_mixture, c);
        }
        const auto q = random_distribution(rng, ens.support_size());
        const auto bar = ens.uniform_mixture();
        double lhs = 0.0, rhs = n * eval_divergence(Generator::kl(), bar, q);
        for (const auto& m : ens.members()) {
            lhs += eval_divergence(Generator::kl(), m, q);
            rhs += eval_divergence(Generator::kl(), m, bar);
        }
        comp.add(-std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));

        CoveringFamily fam;
        const std::size_t mcount = uniform_index(rng, 1, 3);
        for (std::size_t a = 0; a < mcount; ++a) fam.candidates.push_back(random_distribution(rng, ens.support_size()));
        for (auto kind : {CoverKind::kl, CoverKind::chi2, CoverKind::power_l, CoverKind::hellinger_sq}) {
            const Generator g = cover_generator(kind);
            const double j = jf_exact(g, ens).value;
            const auto res = covering_upper_bound(g, ens, fam);
            cover.ge(res.value, j);
            const double specialized = covering_specialization(kind, static_cast<double>(mcount), res.approx_error);
            cover.ge(specialized, j);
            special.ge(specialized, res.value);
        }
    }
    return s.to_json();
}

Json suite_entropy(Rng& rng) {
    Suite s("entropy");
    auto& points = s.check("point_values", 1e-5);
    auto& mono = s.check("monotone_in_packing_and_covering", 1e-12);
    auto& chain = s.check("finite_ensemble_chain", 1e-9);
    auto& lattice = s.check("disc_lattice_volumetric_counts", 0.0);
    const Loss fixed{"fixed", [](double) { return 0.1; }};
    points.near(theorem3_point(EntropyKind::chi2, constant_profile(100, 4), fixed, 1.0, 1.0), 0.07072);
    points.near(theorem3_point(EntropyKind::kl, constant_profile(1024, 4), fixed, 1.0, 1.0), 0.05557);
    points.near(theorem3_point(EntropyKind::power_l, constant_profile(100, 4), fixed, 1.0, 1.0, 3.0), 0.08511);
    for (auto kind : {EntropyKind::kl, EntropyKind::chi2, EntropyKind::power_l})
        for (double n : {4.0, 16.0, 256.0, 4096.0})
            for (double m : {1.0, 2.0, 8.0}) {
                const double base = theorem3_point(kind, constant_profile(n, m), fixed, 1.0, 0.5);
                mono.le(base, theorem3_point(kind, constant_profile(2.0 * n, m), fixed, 1.0, 0.5));
                mono.ge(base, theorem3_point(kind, constant_profile(n, 2.0 * m), fixed, 1.0, 0.5));
            }
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = uniform_index(rng, 2, 6);
        const auto ens = random_ensemble(rng, n, uniform_index(rng, 2, 6));
        CoveringFamily fam;
        const std::size_t m = uniform_index(rng, 1, 3);
        for (std::size_t a = 0; a < m; ++a) fam.candidates.push_back(random_distribution(rng, ens.support_size()));
        const auto cov = covering_upper_bound(Generator::chi2(), ens, fam);
        const double eps2 = cov.approx_error;
        const double j = jf_closed_form(Generator::chi2(), ens).value;
        const double jcover = covering_specialization(CoverKind::chi2, static_cast<double>(m), eps2);
        chain.le(j, cov.value);
        chain.le(cov.value, jcover);
        const double nd = static_cast<double>(n);
        const double named = named_bound(NamedFamily::chi2, {{"N", nd}, {"inf_sum", nd * j}}).value;
        const double r = bayes_risk_exact(ens).value;
        chain.le(named, r);
        const double point = theorem3_point(EntropyKind::chi2, constant_profile(nd, static_cast<double>(m)),
                                            identity_loss(), 2.0, std::sqrt(eps2));
        chain.le(point, named);
    }
    const double gamma = 1.0;
    const auto pts = disc_lattice(gamma, 0.02);
    for (double eta : {0.1, 0.2, 0.4}) {
        const auto packing = greedy_separated(pts, eta, false);
        lattice.ge(static_cast<double>(packing.size()), std::pow(gamma / eta, 2.0));
    }
    for (double eps : {0.1, 0.2, 0.5, 1.0}) {
        const auto centers = greedy_separated(pts, eps, true);
        lattice.truth(covers(pts, centers, eps));
        lattice.le(static_cast<double>(centers.size()), std::pow(3.0 * gamma / eps, 2.0));
    }
    return s.to_json();
}

Json suite_constructions(Rng& rng, std::uint64_t seed) {
    Suite s("constructions");
    auto& vg = s.check("vg_code_size_and_distance", 0.0);
    auto& sep = s.check("spectral_separation", 1e-10);
    auto& frob = s.check("frobenius_below_tail_sum", 1e-12);
    auto& kl = s.check("kl_below_frobenius_constant", 1e-12);
    auto& tail = s.check("tail_rate", 1e-12);
    auto& harmonic = s.check("harmonic_tail_lower_bound", 1e-15);
    auto& cap = s.check("planar_cap_closed_form", 1e-9);
    auto& beta = s.check("sin_beta_lower_bound", 0.0);
    auto& additive = s.check("cap_additivity", 1e-9);
    auto& packing = s.check("support_packing_log_size", 0.0);
    for (unsigned k : {8U, 16U, 24U, 32U}) {
        const auto code = vg_code(k, seed);
        vg.ge(static_cast<double>(code.size()), static_cast<double>(vg_target_size(k)));
        vg.ge(static_cast<double>(code.min_distance()), k / 4.0);
    }
    struct Shape {
        unsigned p, k;
        double alpha;
    };
    for (const Shape sh : {Shape{8, 3, 0.5}, Shape{12, 4, 1.0}, Shape{16, 6, 2.0}}) {
        const auto fam = build_cov_family(sh.p, sh.k, sh.alpha);
        harmonic.ge(fam.harmonic_tail(), std::pow(2.0, -sh.alpha - 1.0) * std::pow(sh.k, -sh.alpha) / fam.delta);
        for (int i = 0; i < 30; ++i) {
            auto a = random_bits(rng, sh.k);
            auto b = random_bits(rng, sh.k);
            if (a == b) b[0] ^= 1;
            const auto r = spectral_separation(fam, a, b);
            sep.ge(r.achieved, r.guaranteed);
            const auto m = static_cast<unsigned>(uniform_index(rng, 1, sh.k - 1));
            const auto c = kl_frobenius_check(fam, a, m);
            frob.le(c.frobenius_sq, c.tail_bound);
            kl.le(c.exact_kl, c.kl_constant * c.frobenius_sq);
        }
    }
    for (unsigned km = 1; km <= 6; ++km) {
        const unsigned k = 8;
        const auto fam = build_cov_family(2 * k, k, 1.0);
        const std::vector<int> ones(k, 1);
        const auto c = kl_frobenius_check(fam, ones, k - km);
        tail.le(c.tail_bound * std::pow(km, 2.0), 1.0 / (fam.delta * fam.delta * 1.0 * 3.0));
    }
    for (double eps : {0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5}) {
        const auto g = cap_geometry(eps, 2, 1.0);
        cap.near(cap_distance(g), oracle::planar_cap_distance_p1(eps));
        beta.ge(std::sin(g.beta_angle), std::sqrt(eps) / (2.0 * std::numbers::sqrt2));
    }
    const auto sp = support_packing_bound(2, 1.0, 0.02, seed);
    packing.ge(sp.log_code_size, static_cast<double>(sp.packing.points.size()) / 8.0);
    std::vector<double> angles;
    for (const auto& pt : sp.packing.points) angles.push_back(std::atan2(pt[1], pt[0]));
    const double cap_pow = cap_distance_pow(sp.geom);
    for (std::size_t i = 0; i + 1 < sp.words.size() && i < 6; ++i) {
        const double direct = oracle::planar_support_distance_pow(angles, sp.geom.alpha_angle, sp.words[i], sp.words[i + 1], 1.0);
        unsigned ham = 0;
        for (std::size_t t = 0; t < angles.size(); ++t) ham += sp.words[i][t] != sp.words[i + 1][t] ? 1U : 0U;
        additive.near(direct, ham * cap_pow);
    }
    return s.to_json();
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"dist", "fdiv", "testing", "mixture", "jf", "entropy",
                                                "constructions", "all"};
    return names;
}

Json run_verify(const std::string& suite, std::uint64_t seed, const std::vector<Ensemble>& extra) {
    const auto& names = verify_suites();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw std::invalid_argument("unknown suite '" + suite + "'");
    Json out;
    out["suite"] = suite;
    out["seed"] = seed;
    out["extra_ensembles"] = extra.size();
    out["suites"] = Json::array();
    for (std::size_t i = 0; i + 1 < names.size(); ++i) {
        if (suite != "all" && suite != names[i]) continue;
        // Each suite gets its own stream so that results do not depend on
        // which other suites ran.
        Rng rng(seed * 1000003ULL + i);
        Json r;
        if (names[i] == "dist") r = suite_dist(rng);
        if (names[i] == "fdiv") r = suite_fdiv(rng);
        if (names[i] == "testing") r = suite_testing(rng, extra);
        if (names[i] == "mixture") r = suite_mixture(rng, extra);
        if (names[i] == "jf") r = suite_jf(rng, extra);
        if (names[i] == "entropy") r = suite_entropy(rng);
        if (names[i] == "constructions") r = suite_constructions(rng, seed);
        out["suites"].push_back(r);
    }
    bool ok = true;
    for (const auto& r : out["suites"]) ok = ok && r["passed"].get<bool>();
    out["passed"] = ok;
    return out;
}

}  // namespace mmlb
