// Acceptance checks. Each criterion prints one line:
//   criterion N: PASS|FAIL <measurements> (<seconds>s)
// `--only N` runs a single criterion; the exit status is nonzero when any
// selected criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
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

using namespace mmlb;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

// Tracks the smallest slack lhs - rhs over a sweep.
struct Slack {
    double worst = INFINITY;
    std::size_t cases = 0;
    void ge(double lhs, double rhs) {
        ++cases;
        worst = std::min(worst, lhs - rhs);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. Mixture inequality on random ensembles with random priors and Q.
Outcome criterion1() {
    Outcome o;
    Rng rng(1001);
    Slack s;
    const auto gens = builtin_generators();
    for (int i = 0; i < 1000; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 6), uniform_index(rng, 2, 12), i % 4 == 3 ? 0.3 : 0.0, true);
        const auto q = random_distribution(rng, ens.support_size());
        const double rbar = bayes_risk_exact(ens).value;
        const double w = map_weight_mass(ens, q);
        for (const auto& g : gens) s.ge(weighted_divergence_sum(g, ens, q), theorem1_rhs(g, w, rbar));
    }
    o.detail << "cases=" << s.cases << " worst_slack=" << fmt(s.worst);
    o.require(s.worst >= -1e-9, "slack >= -1e-9");
    return o;
}

// 2. Two-point sharpness of f(1+V) + f(1-V).
Outcome criterion2() {
    Outcome o;
    double numeric_err = 0.0, witness_err = 0.0;
    for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::power(3)})
        for (int k = 0; k <= 10; ++k) {
            const double v = k / 10.0;
            const double target = g(1.0 + v) + g(1.0 - v);
            numeric_err = std::max(numeric_err, std::abs(two_point_infimum(g, v).value - target));
            const auto w = two_point_sharpness(v, g);
            const double achieved = eval_divergence(g, w.p1, w.q) + eval_divergence(g, w.p2, w.q);
            witness_err = std::max(witness_err, std::abs(achieved - target));
            witness_err = std::max(witness_err, std::abs(tv_distance(w.p1, w.p2) - v));
        }
    o.detail << "numeric_err=" << fmt(numeric_err) << " witness_err=" << fmt(witness_err);
    o.require(numeric_err <= 1e-6, "numeric within 1e-6");
    o.require(witness_err <= 1e-12, "witness within 1e-12");
    return o;
}

// 3. Pinsker, capacitory discrimination and Le Cam on random pairs.
Outcome criterion3() {
    Outcome o;
    Rng rng(1003);
    Slack pinsker, topsoe, lecam;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t k = uniform_index(rng, 2, 16);
        const auto p = random_distribution(rng, k, i % 3 == 2 ? 0.25 : 0.0);
        const auto q = random_distribution(rng, k, i % 5 == 4 ? 0.25 : 0.0);
        const double v = tv_distance(p, q);
        pinsker.ge(eval_divergence(Generator::kl(), p, q), 2.0 * v * v);
        const std::array<Distribution, 2> pair{p, q};
        const std::array<double, 2> half{0.5, 0.5};
        const auto mid = mixture(pair, half);
        const double cap = eval_divergence(Generator::kl(), p, mid) + eval_divergence(Generator::kl(), q, mid);
        topsoe.ge(cap, (1.0 + v) * std::log1p(v) + (v < 1.0 ? (1.0 - v) * std::log1p(-v) : 0.0));
        const double h2 = hellinger_distance_sq(p, q);
        lecam.ge(std::sqrt(h2) * std::sqrt(std::max(0.0, 1.0 - h2 / 4.0)), v);
    }
    const auto [ratio, at] = pinsker_ratio_infimum(1e-3);
    o.detail << "pinsker_slack=" << fmt(pinsker.worst) << " topsoe_slack=" << fmt(topsoe.worst)
             << " le_cam_slack=" << fmt(lecam.worst) << " two_point_ratio=" << fmt(ratio) << "@V=" << fmt(at);
    o.require(pinsker.worst >= -1e-12, "pinsker");
    o.require(topsoe.worst >= -1e-12, "capacitory discrimination");
    o.require(lecam.worst >= -1e-12, "le cam");
    o.require(ratio >= 2.0 - 1e-12 && ratio <= 2.0 * 1.05, "ratio within 5% of 2");
    return o;
}

// 4. Closed-form J_f against the numeric solver and a grid search.
Outcome criterion4() {
    Outcome o;
    Rng rng(1004);
    double numeric_err = 0.0, grid_err = 0.0, compensation_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 5), uniform_index(rng, 2, 4), i % 4 == 3 ? 0.3 : 0.0);
        for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::hellinger_half()}) {
            const auto c = jf_closed_form(g, ens);
            numeric_err = std::max(numeric_err, std::abs(c.value - jf_numeric(g, ens).value));
            grid_err = std::max(grid_err, std::abs(c.value - oracle::grid_jf(g, ens, 1000).first));
        }
        // kl: the mixture is optimal because of the compensation identity.
        const auto q = random_distribution(rng, ens.support_size());
        const auto bar = ens.uniform_mixture();
        double lhs = 0.0, rhs = ens.size() * eval_divergence(Generator::kl(), bar, q);
        for (const auto& m : ens.members()) {
            lhs += eval_divergence(Generator::kl(), m, q);
            rhs += eval_divergence(Generator::kl(), m, bar);
        }
        if (std::isfinite(lhs)) compensation_err = std::max(compensation_err, std::abs(lhs - rhs));
    }
    o.detail << "numeric_err=" << fmt(numeric_err) << " grid_err=" << fmt(grid_err)
             << " compensation_err=" << fmt(compensation_err);
    o.require(numeric_err <= 1e-6, "numeric within 1e-6");
    o.require(grid_err <= 2e-3, "grid within 2e-3");
    o.require(compensation_err <= 1e-9, "compensation identity");
    return o;
}

// 5. Covering bound and its specializations dominate J_f.
Outcome criterion5() {
    Outcome o;
    Rng rng(1005);
    Slack general, special;
    for (int i = 0; i < 500; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 5), uniform_index(rng, 2, 6), i % 4 == 3 ? 0.3 : 0.0);
        CoveringFamily fam;
        const std::size_t m = uniform_index(rng, 1, 4);
        for (std::size_t a = 0; a < m; ++a) fam.candidates.push_back(random_distribution(rng, ens.support_size()));
        if (i % 2) {
            std::vector<std::size_t> assign;
            for (std::size_t t = 0; t < ens.size(); ++t) assign.push_back(uniform_index(rng, 0, m - 1));
            fam.assignment = assign;
        }
        for (auto kind : {CoverKind::kl, CoverKind::chi2, CoverKind::power_l, CoverKind::hellinger_sq}) {
            const Generator g = cover_generator(kind);
            const double j = jf_exact(g, ens).value;
            const auto res = covering_upper_bound(g, ens, fam);
            general.ge(res.value, j);
            special.ge(covering_specialization(kind, static_cast<double>(m), res.approx_error), j);
        }
    }
    o.detail << "cases=" << general.cases << " general_slack=" << fmt(general.worst)
             << " specialization_slack=" << fmt(special.worst);
    o.require(general.worst >= -1e-9, "covering bound");
    o.require(special.worst >= -1e-9, "specializations");
    return o;
}

// 6. Named bounds against the exact Bayes risk.
Outcome criterion6() {
    Outcome o;
    Rng rng(1006);
    Slack s;
    const std::vector<NamedFamily> families{NamedFamily::fano, NamedFamily::chi2, NamedFamily::hellinger,
                                            NamedFamily::tv, NamedFamily::power_l};
    for (int i = 0; i < 1000; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 6), uniform_index(rng, 2, 10), i % 4 == 3 ? 0.3 : 0.0);
        const double r = bayes_risk_exact(ens).value;
        for (auto f : families) s.ge(r, named_bound_from_ensemble(f, ens).value);
    }
    double identical_err = 0.0;
    for (std::size_t n = 2; n <= 8; ++n) {
        const auto base = random_distribution(rng, 5);
        const Ensemble same(std::vector<Distribution>(n, base));
        identical_err = std::max(identical_err,
                                 std::abs(named_bound_from_ensemble(NamedFamily::chi2, same).value - (1.0 - 1.0 / n)));
    }
    o.detail << "cases=" << s.cases << " worst_slack=" << fmt(s.worst) << " identical_err=" << fmt(identical_err);
    o.require(s.worst >= -1e-9, "named <= bayes risk");
    o.require(identical_err <= 1e-12, "chi2 exact on identical members");
    return o;
}

// 7. Hand-computed point values.
Outcome criterion7() {
    Outcome o;
    const Loss fixed{"fixed", [](double) { return 0.1; }};
    const double chi2 = theorem3_point(EntropyKind::chi2, constant_profile(100, 4), fixed, 1.0, 1.0);
    const double kl = theorem3_point(EntropyKind::kl, constant_profile(1024, 4), fixed, 1.0, 1.0);
    const double pw = theorem3_point(EntropyKind::power_l, constant_profile(100, 4), fixed, 1.0, 1.0, 3.0);
    o.detail << "chi2=" << fmt(chi2) << " kl=" << fmt(kl) << " power_3=" << fmt(pw);
    o.require(std::abs(chi2 - 0.07072) <= 1e-5, "chi2 0.07072");
    o.require(std::abs(kl - 0.05557) <= 1e-5, "kl 0.05557");
    o.require(std::abs(pw - 0.08511) <= 1e-5, "power 0.08511");
    return o;
}

EntropyProfile gaussian_1d(double n) {
    return builtin_profile(Model::gaussian_1d, {{"n", n}, {"c1", 1.0}, {"c2", 1.0}, {"eta0", 1.0}, {"eps0", 1.0}});
}

// 8. kl form vacuous at eta = 1/sqrt(n); chi2 form keeps the 1/n rate.
Outcome criterion8() {
    Outcome o;
    double worst_factor = -INFINITY;
    for (double n : {1e4, 1e5, 1e6}) {
        const auto prof = gaussian_1d(n);
        for (double eps : log_spaced(1e-3, 1.0, 64)) {
            const auto pt = theorem3_evaluate(EntropyKind::kl, prof, squared_loss(), 1.0 / std::sqrt(n), eps);
            worst_factor = std::max(worst_factor, 1.0 - pt.star);
        }
    }
    std::vector<double> scaled;
    for (double n : {1e2, 1e3, 1e4}) {
        const auto r = theorem3_optimize(EntropyKind::chi2, gaussian_1d(n), squared_loss());
        scaled.push_back(r.value * n);
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    o.detail << "max_kl_factor=" << fmt(worst_factor) << " chi2_n_bound=[" << fmt(scaled[0]) << "," << fmt(scaled[1])
             << "," << fmt(scaled[2]) << "]";
    o.require(worst_factor <= 0.0, "kl factor <= 0");
    o.require(*lo > 0.0 && *hi <= 3.0 * *lo, "chi2 within factor 3");
    return o;
}

// 9. Gaussian ball: optimized bound relative to d sigma^2, and the
// volumetric facts on a planar lattice.
Outcome criterion9() {
    Outcome o;
    const double sigma = 1.0;
    const auto c1_grid = log_spaced(1e-3, 1.0, 2000);
    for (unsigned d : {2u, 5u, 10u}) {
        const double gamma = sigma * std::sqrt(static_cast<double>(d));
        const auto prof = builtin_profile(Model::gaussian_ball, {{"d", d}, {"gamma", gamma}, {"sigma", sigma}});
        const double eps = std::sqrt(std::expm1(d / 2.0));
        std::vector<double> etas;
        for (double c : c1_grid) etas.push_back(c * gamma);
        const auto r = theorem3_optimize(EntropyKind::chi2, prof, squared_loss(), etas, {eps});
        const double ratio = r.value / (d * sigma * sigma);
        const double c1 = r.witnesses["eta"].get<double>() / gamma;
        o.detail << "d=" << d << ":bound/(d*sigma^2)=" << fmt(ratio) << "@c1=" << fmt(c1) << " ";
        o.require(ratio >= 0.01, "d=" + std::to_string(d) + " bound >= 0.01 d sigma^2");
    }
    const double g = 1.0;
    const auto pts = disc_lattice(g, 0.02);
    bool lattice_ok = true;
    for (double eta : {0.1, 0.2, 0.4})
        lattice_ok &= greedy_separated(pts, eta, false).size() >= std::pow(g / eta, 2.0);
    for (double e : {0.1, 0.2, 0.5, 1.0}) {
        const auto centers = greedy_separated(pts, e, true);
        lattice_ok &= covers(pts, centers, e) && centers.size() <= std::pow(3.0 * g / e, 2.0);
    }
    o.detail << "lattice=" << (lattice_ok ? "ok" : "violated");
    o.require(lattice_ok, "volumetric lattice facts");
    return o;
}

// 10. Covariance pipeline for alpha = 1.
Outcome criterion10() {
    Outcome o;
    const double alpha = 1.0;
    Slack separation, frobenius;
    std::vector<double> scaled;
    for (unsigned n : {64u, 216u, 512u}) {
        const CovmatConstants consts;
        const auto k = static_cast<unsigned>(std::ceil(4.0 * consts.delta_report * std::cbrt(static_cast<double>(n))));
        const unsigned p = 2 * k;
        const auto report = covmat_bound_assembly(n, p, alpha, consts);
        scaled.push_back(report.value * std::cbrt(static_cast<double>(n)));
        const auto fam = build_cov_family(p, k, alpha);
        const auto code = vg_code(k, consts.seed);
        const unsigned m = static_cast<unsigned>(report.intermediates["m"].get<double>());
        Rng rng(1010 + n);
        const std::size_t pairs = std::min<std::size_t>(400, code.size() * (code.size() - 1) / 2);
        for (std::size_t t = 0; t < pairs; ++t) {
            std::size_t a = uniform_index(rng, 0, code.size() - 1), b = uniform_index(rng, 0, code.size() - 1);
            if (a == b) b = (a + 1) % code.size();
            const auto s = spectral_separation(fam, code.unpack(a), code.unpack(b));
            separation.ge(s.achieved, s.guaranteed);
        }
        for (std::size_t w = 0; w < std::min<std::size_t>(code.size(), 200); ++w) {
            const auto c = kl_frobenius_check(fam, code.unpack(w), m);
            frobenius.ge(c.tail_bound, c.frobenius_sq);
        }
        o.detail << "n=" << n << ":p=" << p << ",bound=" << fmt(report.value) << " ";
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    o.detail << "separation_slack=" << fmt(separation.worst) << " frobenius_slack=" << fmt(frobenius.worst)
             << " bound*n^(1/3)=[" << fmt(scaled[0]) << "," << fmt(scaled[1]) << "," << fmt(scaled[2]) << "]";
    o.require(separation.worst >= -1e-10, "spectral separation");
    o.require(frobenius.worst >= -1e-12, "frobenius <= tail");
    o.require(*lo > 0.0 && *hi <= 3.0 * *lo, "factor-3 band");
    return o;
}

// 11. Planar cap pipeline.
Outcome criterion11() {
    Outcome o;
    double closed_err = 0.0, additivity_err = 0.0;
    std::vector<double> ratios;
    for (double eps : {0.005, 0.01, 0.02}) {
        const auto geom = cap_geometry(eps, 2, 1.0);
        closed_err = std::max(closed_err, std::abs(cap_distance(geom) - oracle::planar_cap_distance_p1(eps)));
        o.require(std::sin(geom.beta_angle) >= std::sqrt(eps) / (2.0 * std::sqrt(2.0)), "sin beta");
        const auto r = support_packing_bound(2, 1.0, eps, 0);
        const std::size_t npts = r.packing.points.size();
        o.require(r.log_code_size >= npts / 8.0, "log|W| >= N/8");
        double worst = INFINITY;
        unsigned min_h = npts + 1;
        for (std::size_t i = 0; i < r.words.size(); ++i)
            for (std::size_t j = i + 1; j < r.words.size(); ++j) {
                const unsigned h = hamming(r.words[i], r.words[j]);
                min_h = std::min(min_h, h);
                worst = std::min(worst, h * r.cap_distance);
            }
        o.require(min_h >= (npts + 3) / 4, "pairwise hamming >= N/4");
        o.require(std::abs(worst - r.min_distance) <= 1e-12, "reported min distance");
        std::vector<double> angles;
        for (const auto& pt : r.packing.points) angles.push_back(std::atan2(pt[1], pt[0]));
        for (std::size_t i = 0; i + 1 < std::min<std::size_t>(r.words.size(), 4); ++i) {
            const double direct =
                oracle::planar_support_distance_pow(angles, geom.alpha_angle, r.words[i], r.words[i + 1], 1.0);
            additivity_err =
                std::max(additivity_err, std::abs(direct - hamming(r.words[i], r.words[i + 1]) * r.cap_distance));
        }
        ratios.push_back(r.claim_ratio);
        o.detail << "eps=" << eps << ":N=" << npts << ",|W|=" << r.code_size << ",min_dist=" << fmt(r.min_distance)
                 << " ";
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    o.detail << "closed_form_err=" << fmt(closed_err) << " additivity_err=" << fmt(additivity_err)
             << " claim_ratio=[" << fmt(*lo) << "," << fmt(*hi) << "]";
    o.require(closed_err <= 1e-9, "closed form");
    o.require(additivity_err <= 1e-9, "additivity");
    o.require(*lo > 0.0 && *lo >= 0.5 * *hi, "claim ratio bounded below");
    return o;
}

// 12. verify output is byte-identical across runs.
Outcome criterion12() {
    Outcome o;
    std::ostringstream a, b, ea, eb;
    const std::vector<std::string> args{"verify", "--seed", "0"};
    const int ca = cli::run_cli(args, a, ea);
    const int cb = cli::run_cli(args, b, eb);
    o.detail << "bytes=" << a.str().size() << " exit=" << ca << "," << cb;
    o.require(!a.str().empty() && a.str() == b.str(), "identical output");
    o.require(ca == cb, "identical exit status");
    return o;
}

struct Criterion {
    int id;
    Outcome (*run)();
    double time_limit;  // seconds; 0 when none is stated
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    int only = 0;
    app.add_option("--only", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{{1, criterion1, 30},  {2, criterion2, 10},   {3, criterion3, 0},
                                     {4, criterion4, 0},   {5, criterion5, 0},    {6, criterion6, 0},
                                     {7, criterion7, 0},   {8, criterion8, 0},    {9, criterion9, 0},
                                     {10, criterion10, 120}, {11, criterion11, 0}, {12, criterion12, 0}};
    bool ok = true;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && secs > c.time_limit) out.require(false, "runtime < " + fmt(c.time_limit) + "s");
        std::cout << "criterion " << c.id << ": " << (out.pass ? "PASS" : "FAIL") << " " << out.detail.str() << " ("
                  << fmt(secs) << "s)" << std::endl;
        ok &= out.pass;
    }
    return ok ? 0 : 1;
}
