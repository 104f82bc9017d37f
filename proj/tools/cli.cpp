#include "cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mmlb/caps.hpp"
#include "mmlb/codes.hpp"
#include "mmlb/covariance.hpp"
#include "mmlb/divergence.hpp"
#include "mmlb/entropy_bounds.hpp"
#include "mmlb/errors.hpp"
#include "mmlb/jf_solver.hpp"
#include "mmlb/json_io.hpp"
#include "mmlb/mixture_bounds.hpp"
#include "mmlb/testing_risk.hpp"
#include "mmlb/verify.hpp"

namespace mmlb::cli {

namespace {

/// Bad flag values or combinations; reported with exit status 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError(what + ": '" + s + "' is not a number");
    }
    if (used != s.size()) throw UsageError(what + ": '" + s + "' is not a number");
    return v;
}

std::vector<double> number_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split(s, ',')) out.push_back(to_double(item, what));
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

/// "lo:hi:count" (log-spaced) or a comma-separated list.
std::vector<double> grid_spec(const std::string& s, const std::string& what) {
    if (s.find(':') == std::string::npos) return number_list(s, what);
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError(what + ": expected lo:hi:count");
    const double count = to_double(parts[2], what);
    if (count < 1 || count != std::floor(count)) throw UsageError(what + ": count must be a positive integer");
    return log_spaced(to_double(parts[0], what), to_double(parts[1], what), static_cast<std::size_t>(count));
}

std::vector<int> bit_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    for (char c : s) {
        if (c == ',' || c == ' ') continue;
        if (c != '0' && c != '1') throw UsageError(what + ": expected a string of 0/1");
        out.push_back(c - '0');
    }
    return out;
}

NamedStats stats_spec(const std::string& s) {
    NamedStats out;
    for (const auto& item : split(s, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--stats: expected key=value pairs");
        out[item.substr(0, eq)] = to_double(item.substr(eq + 1), "--stats");
    }
    return out;
}

std::uint64_t default_seed() {
    const char* env = std::getenv(kSeedEnv);
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string(kSeedEnv) + " must be a nonnegative integer");
    }
}

Generator generator_arg(const std::string& name) {
    try {
        return Generator::from_name(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

template <class Fn>
auto usage_guard(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Json distribution_json(const Distribution& d) { return num_array({d.pmf().begin(), d.pmf().end()}); }

Json jf_json(const JfResult& r) {
    Json j;
    j["value"] = num(r.value);
    j["method"] = to_string(r.method);
    j["dual_value"] = num(r.dual_value);
    j["iterations"] = r.iterations;
    j["minimizer"] = distribution_json(r.minimizer);
    return j;
}

std::string words_as_strings(const BinaryCode& code, std::size_t i) {
    std::string s;
    for (int b : code.unpack(i)) s.push_back(static_cast<char>('0' + b));
    return s;
}

Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw UsageError(what + ": expected a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw UsageError(what + ": matrix must be square");
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

struct Options {
    // shared
    std::string gen = "kl";
    std::string mode;
    std::string format = "json";
    std::vector<std::string> files;
    std::optional<std::uint64_t> seed;
    double l = 3.0;
    double tol = 0.0;
    // divergence
    unsigned power = 1;
    // bayes-risk
    std::string prior;
    // bound
    std::string family;
    std::string stats;
    std::string from_ensemble;
    double n_members = 0.0, sum = 0.0, a = 0.0, w = 0.0, rbar = 0.0, v = 0.0;
    // jf / jf-cover
    std::string method = "auto";
    std::string kind;
    std::string candidates;
    double m_count = 1.0, approx_error = 0.0;
    // entropy-bound
    std::string model;
    std::string profile;
    std::string loss;
    std::map<std::string, double> params;
    std::string eta_grid, eps_grid;
    double eta = 0.0, eps = 0.0, packing = 0.0, covering = 0.0;
    std::string analytic;
    double theta = 0.0, theta_prime = 0.0, sigma = 1.0, widen = 0.0;
    double spacing = 0.0, radius = 0.0;
    std::optional<double> schedule_c;
    // covmat-bound
    double alpha = 1.0;
    unsigned sample_n = 0, p = 0, k = 0, m = 0;
    std::optional<double> delta_a;
    double delta_report = 2.0, km_scale = 0.5;
    std::optional<unsigned> k_minus_m;
    std::string tau, tau_prime, sigma0, sigma1;
    // vg
    std::size_t budget = kDefaultVgBudget;
    // cap-packing
    unsigned d = 2;
    double cap_p = 1.0;
    // verify
    std::string suite = "all";
};

Json cmd_divergence(const Options& o) {
    if (o.files.size() != 2) throw UsageError("divergence: expected two distribution files P and Q");
    const Generator g = generator_arg(o.gen);
    Distribution p = usage_guard([&] { return distribution_from_json(read_json_file(o.files[0])); });
    Distribution q = usage_guard([&] { return distribution_from_json(read_json_file(o.files[1])); });
    if (o.power > 1) {
        p = product_distribution(p, o.power);
        q = product_distribution(q, o.power);
    }
    Json j;
    j["generator"] = g.name();
    if (o.power > 1) j["power"] = o.power;
    if (o.mode == "distances") {
        j["tv_distance"] = num(tv_distance(p, q));
        j["hellinger_distance_sq"] = num(hellinger_distance_sq(p, q));
        return j;
    }
    if (!o.mode.empty()) throw UsageError("divergence: unknown mode '" + o.mode + "'");
    j["value"] = num(usage_guard([&] { return eval_divergence(g, p, q); }));
    return j;
}

Ensemble load_ensemble(const std::string& path) {
    return usage_guard([&] { return ensemble_from_json(read_json_file(path)); });
}

Json cmd_bayes_risk(const Options& o) {
    if (o.files.size() != 1) throw UsageError("bayes-risk: expected one ensemble file");
    Ensemble ens = load_ensemble(o.files[0]);
    if (!o.prior.empty()) ens = usage_guard([&] { return ens.with_prior(number_list(o.prior, "--prior")); });
    BoundReport r;
    r.family = "bayes_risk";
    r.value = bayes_risk_exact(ens).value;
    r.inputs["members"] = ens.size();
    r.inputs["support_size"] = ens.support_size();
    r.inputs["prior"] = num_array({ens.prior().begin(), ens.prior().end()});
    const TestAssignment t = map_test(ens);
    r.witnesses["map_test"] = t.choice;
    r.intermediates["member_errors"] = num_array(member_errors(ens, t));
    r.intermediates["map_average_error"] = num(average_error(ens, t));
    return r.to_json();
}

Json cmd_minimax(const Options& o) {
    if (o.files.size() != 1) throw UsageError("minimax-risk: expected one ensemble file");
    const Ensemble ens = load_ensemble(o.files[0]);
    const double tol = o.tol > 0.0 ? o.tol : kDefaultMinimaxTol;
    const MinimaxResult mm = minimax_risk(ens, tol);
    BoundReport r;
    r.family = "minimax_risk";
    r.value = mm.value;
    r.inputs["members"] = ens.size();
    r.inputs["support_size"] = ens.support_size();
    r.inputs["tol"] = num(tol);
    r.intermediates["randomized_upper"] = num(mm.randomized_upper);
    r.intermediates["deterministic_upper"] = num(mm.deterministic_upper);
    r.intermediates["duality_gap"] = num(mm.duality_gap);
    r.intermediates["deterministic_gap"] = num(mm.deterministic_gap);
    r.intermediates["pivots"] = mm.pivots;
    r.witnesses["prior"] = num_array(mm.prior);
    return r.to_json();
}

Json cmd_bound(const Options& o) {
    if (o.family.empty()) throw UsageError("bound: --family is required");
    const auto n_count = [&] {
        if (o.n_members < 2 || o.n_members != std::floor(o.n_members)) throw UsageError("bound: --n must be an integer >= 2");
        return static_cast<std::size_t>(o.n_members);
    };
    Json j;
    if (o.family == "theorem1") {
        j["family"] = o.family;
        j["value"] = num(usage_guard([&] { return theorem1_rhs(generator_arg(o.gen), o.w, o.rbar); }));
        return j;
    }
    if (o.family == "g") {
        j["family"] = o.family;
        j["value"] = num(usage_guard([&] { return g_function(generator_arg(o.gen), n_count(), o.a); }));
        return j;
    }
    if (o.family == "implicit") {
        const auto inv = usage_guard([&] { return invert_implicit_bound(generator_arg(o.gen), n_count(), o.sum); });
        BoundReport r;
        r.family = "implicit";
        r.value = inv.value;
        r.inputs["generator"] = o.gen;
        r.inputs["N"] = n_count();
        r.inputs["divergence_sum"] = num(o.sum);
        r.intermediates["bracket"] = num_array({inv.bracket_lo, inv.bracket_hi});
        r.intermediates["g_at_value"] = num(inv.g_at_value);
        r.intermediates["iterations"] = inv.iterations;
        return r.to_json();
    }
    if (o.family == "explicit") {
        BoundReport r;
        r.family = "explicit";
        r.value = usage_guard([&] { return explicit_bound(generator_arg(o.gen), n_count(), o.sum, o.a); });
        r.inputs["generator"] = o.gen;
        r.inputs["N"] = n_count();
        r.inputs["divergence_sum"] = num(o.sum);
        r.inputs["a"] = num(o.a);
        return r.to_json();
    }
    if (o.family == "two-point") {
        const auto w = usage_guard([&] { return two_point_sharpness(o.v, generator_arg(o.gen)); });
        j["family"] = o.family;
        j["generator"] = o.gen;
        j["v"] = num(o.v);
        j["achieved"] = num(w.achieved);
        j["target"] = num(w.target);
        j["tv"] = num(w.tv);
        j["p1"] = distribution_json(w.p1);
        j["p2"] = distribution_json(w.p2);
        j["q"] = distribution_json(w.q);
        return j;
    }
    if (o.family == "two-point-infimum") {
        const auto m = usage_guard([&] { return two_point_infimum(generator_arg(o.gen), o.v); });
        j["family"] = o.family;
        j["generator"] = o.gen;
        j["v"] = num(o.v);
        j["value"] = num(m.value);
        j["p1_first"] = num(m.p1_first);
        j["q_first"] = num(m.q_first);
        return j;
    }
    if (o.family == "pinsker-ratio") {
        const auto [ratio, at] = usage_guard([&] { return pinsker_ratio_infimum(o.v); });
        j["family"] = o.family;
        j["v_min"] = num(o.v);
        j["ratio"] = num(ratio);
        j["at_v"] = num(at);
        return j;
    }
    const NamedFamily fam = usage_guard([&] { return parse_named_family(o.family); });
    if (!o.stats.empty() == !o.from_ensemble.empty())
        throw UsageError("bound: give exactly one of --stats and --from-ensemble");
    if (!o.stats.empty()) return usage_guard([&] { return named_bound(fam, stats_spec(o.stats)); }).to_json();
    const Ensemble ens = load_ensemble(o.from_ensemble);
    return named_bound_from_ensemble(fam, ens, o.l).to_json();
}

Json cmd_jf(const Options& o) {
    if (o.files.size() != 1) throw UsageError("jf: expected one ensemble file");
    const Generator g = generator_arg(o.gen);
    const Ensemble ens = load_ensemble(o.files[0]);
    Json j;
    j["generator"] = g.name();
    if (o.mode == "chain") {
        const ChainBounds c = simple_chain(g, ens);
        j["to_mixture"] = num(c.to_mixture);
        j["pairwise_average"] = num(c.pairwise_average);
        j["pairwise_max"] = num(c.pairwise_max);
        j["pairwise"] = num_array(pairwise_divergences(g, ens));
        j["average_pairwise_hellinger"] = num(average_pairwise_hellinger(ens));
        return j;
    }
    if (!o.mode.empty()) throw UsageError("jf: unknown mode '" + o.mode + "'");
    const double tol = o.tol > 0.0 ? o.tol : kDefaultJfTol;
    JfResult r;
    if (o.method == "closed") {
        if (!has_jf_closed_form(g)) throw UsageError("jf: no closed form for generator '" + g.name() + "'");
        r = jf_closed_form(g, ens);
    } else if (o.method == "numeric") {
        r = jf_numeric(g, ens, tol);
    } else if (o.method == "auto") {
        r = jf_exact(g, ens);
    } else {
        throw UsageError("jf: --method must be closed, numeric or auto");
    }
    j.update(jf_json(r));
    return j;
}

Json cmd_jf_cover(const Options& o) {
    if (o.kind.empty()) throw UsageError("jf-cover: --kind is required");
    const CoverKind kind = usage_guard([&] { return parse_cover_kind(o.kind); });
    Json j;
    j["kind"] = to_string(kind);
    if (o.mode == "specialization") {
        j["m"] = num(o.m_count);
        j["approx_error"] = num(o.approx_error);
        j["value"] = num(usage_guard([&] { return covering_specialization(kind, o.m_count, o.approx_error, o.l); }));
        return j;
    }
    if (!o.mode.empty()) throw UsageError("jf-cover: unknown mode '" + o.mode + "'");
    if (o.files.size() != 1 || o.candidates.empty())
        throw UsageError("jf-cover: expected --candidates <file> and one ensemble file");
    const Ensemble ens = load_ensemble(o.files[0]);
    const CoveringFamily fam = usage_guard([&] { return covering_from_json(read_json_file(o.candidates)); });
    const Generator g = cover_generator(kind, o.l);
    const CoveringResult res = usage_guard([&] { return covering_upper_bound(g, ens, fam); });
    const double m = static_cast<double>(fam.candidates.size());
    j["generator"] = g.name();
    j["m"] = fam.candidates.size();
    j["value"] = num(res.value);
    j["approx_error"] = num(res.approx_error);
    j["specialization"] = num(covering_specialization(kind, m, res.approx_error, o.l));
    j["assignment"] = res.assignment;
    j["member_errors"] = num_array(res.member_errors);
    j["jf"] = num(jf_exact(g, ens.with_uniform_prior()).value);
    return j;
}

EntropyProfile entropy_profile(const Options& o) {
    const int sources = (!o.profile.empty()) + (!o.model.empty()) + (o.packing > 0.0);
    if (sources != 1) throw UsageError("entropy-bound: give exactly one of --model, --profile, --packing/--covering");
    if (!o.profile.empty()) return usage_guard([&] { return profile_from_json(read_json_file(o.profile)); });
    if (o.packing > 0.0) return usage_guard([&] { return constant_profile(o.packing, o.covering); });
    return usage_guard([&] { return builtin_profile(parse_model(o.model), o.params); });
}

void write_csv(std::ostream& out, const std::vector<GridCell>& cells) {
    out << "eta,eps,value\n" << std::setprecision(17);
    for (const auto& c : cells) out << c.eta << ',' << c.eps << ',' << c.value << '\n';
}

std::optional<Json> cmd_entropy(const Options& o, std::ostream& out) {
    const std::string mode = o.mode.empty() ? "optimize" : o.mode;
    if (o.format == "csv" && mode != "grid")
        throw UsageError("entropy-bound: CSV output is only available with --mode grid");
    if (mode == "analytic") {
        const auto model = usage_guard([&] { return parse_analytic_model(o.analytic); });
        const auto n = o.params.count("n") ? o.params.at("n") : 1.0;
        const auto r = usage_guard([&] {
            return analytic_divergence(model, o.theta, o.theta_prime, static_cast<unsigned>(n), o.sigma, o.widen);
        });
        Json j;
        j["model"] = to_string(model);
        j["kl"] = r.kl ? num(*r.kl) : Json(nullptr);
        j["chi2"] = num(r.chi2);
        return j;
    }
    if (mode == "schedule") {
        const auto get = [&](const char* k, double dflt) { return o.params.count(k) ? o.params.at(k) : dflt; };
        const auto s = usage_guard([&] {
            return support_schedule(static_cast<unsigned>(get("d", 0.0)), get("gamma", 0.0), get("sigma", 0.0),
                                    get("n", 0.0), get("c_prime", 1.0), get("c_dprime", 1.0), o.schedule_c);
        });
        Json j;
        j["c"] = num(s.c);
        j["eta"] = num(s.eta);
        j["u"] = num(s.u);
        j["eps"] = num(s.eps);
        j["log_packing"] = num(s.log_n);
        j["log_covering"] = num(s.log_m);
        return j;
    }
    if (mode == "lattice") {
        const double gamma = o.params.count("gamma") ? o.params.at("gamma") : 0.0;
        const auto pts = usage_guard([&] { return disc_lattice(gamma, o.spacing); });
        const auto packing = usage_guard([&] { return greedy_separated(pts, o.radius, false); });
        const auto centers = greedy_separated(pts, o.radius, true);
        Json j;
        j["lattice_points"] = pts.size();
        j["radius"] = num(o.radius);
        j["packing_count"] = packing.size();
        j["packing_volume_bound"] = num(std::pow(gamma / o.radius, 2.0));
        j["covering_count"] = centers.size();
        j["covering_volume_bound"] = num(std::pow(3.0 * gamma / o.radius, 2.0));
        j["covers"] = covers(pts, centers, o.radius);
        return j;
    }
    const EntropyKind kind = usage_guard([&] { return parse_entropy_kind(o.kind.empty() ? "chi2" : o.kind); });
    const EntropyProfile prof = entropy_profile(o);
    const Loss loss = o.loss.empty() ? prof.loss : usage_guard([&] { return parse_loss(o.loss); });
    if (mode == "point") {
        const auto pt = usage_guard([&] { return theorem3_evaluate(kind, prof, loss, o.eta, o.eps, o.l); });
        Json j;
        j["kind"] = to_string(kind);
        j["model"] = prof.model;
        j["eta"] = num(o.eta);
        j["eps"] = num(o.eps);
        j["value"] = num(pt.value);
        j["raw"] = num(pt.raw);
        j["star"] = num(pt.star);
        j["log_packing"] = num(pt.log_n);
        j["log_covering"] = num(pt.log_m);
        j["vacuous"] = pt.vacuous;
        return j;
    }
    const auto etas = o.eta_grid.empty() ? std::vector<double>{} : grid_spec(o.eta_grid, "--eta-grid");
    const auto epss = o.eps_grid.empty() ? std::vector<double>{} : grid_spec(o.eps_grid, "--eps-grid");
    if (mode == "grid") {
        const auto cells = usage_guard([&] { return theorem3_grid(kind, prof, loss, etas, epss, o.l); });
        if (o.format == "csv") {
            write_csv(out, cells);
            return std::nullopt;
        }
        Json j;
        j["kind"] = to_string(kind);
        j["model"] = prof.model;
        j["cells"] = Json::array();
        for (const auto& c : cells) j["cells"].push_back({num(c.eta), num(c.eps), num(c.value)});
        return j;
    }
    if (mode != "optimize") throw UsageError("entropy-bound: unknown mode '" + mode + "'");
    return usage_guard([&] { return theorem3_optimize(kind, prof, loss, etas, epss, o.l); }).to_json();
}

Json cmd_covmat(const Options& o) {
    const std::string mode = o.mode.empty() ? "assembly" : o.mode;
    if (mode == "assembly") {
        CovmatConstants c;
        c.delta_report = o.delta_report;
        c.km_scale = o.km_scale;
        c.k_minus_m = o.k_minus_m;
        c.delta_a = o.delta_a;
        c.seed = o.seed ? *o.seed : default_seed();
        return usage_guard([&] { return covmat_bound_assembly(o.sample_n, o.p, o.alpha, c); }).to_json();
    }
    if (mode == "gaussian-kl") {
        const auto s0 = matrix_from_json(usage_guard([&] { return read_json_file(o.sigma0); }), "--sigma0");
        const auto s1 = matrix_from_json(usage_guard([&] { return read_json_file(o.sigma1); }), "--sigma1");
        Json j;
        j["value"] = num(usage_guard([&] { return gaussian_kl(s0, s1, std::max(1U, o.sample_n)); }));
        return j;
    }
    const CovFamily fam = usage_guard([&] { return build_cov_family(o.p, o.k, o.alpha, o.delta_a); });
    Json j;
    j["p"] = fam.p;
    j["k"] = fam.k;
    j["alpha"] = num(fam.alpha);
    j["delta_a"] = num(fam.delta);
    j["harmonic_tail"] = num(fam.harmonic_tail());
    const auto tau = bit_list(o.tau, "--tau");
    if (mode == "family") {
        const Eigen::MatrixXd a = tau.empty() ? fam.base : usage_guard([&] { return fam.materialize(tau); });
        j["positive_definite"] = is_positive_definite(a);
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            std::vector<double> row(a.cols());
            for (Eigen::Index c = 0; c < a.cols(); ++c) row[c] = a(r, c);
            rows.push_back(num_array(row));
        }
        j["matrix"] = rows;
        return j;
    }
    if (mode == "separation") {
        const auto r = usage_guard([&] { return spectral_separation(fam, tau, bit_list(o.tau_prime, "--tau-prime")); });
        j["hamming"] = r.hamming;
        j["achieved"] = num(r.achieved);
        j["guaranteed"] = num(r.guaranteed);
        return j;
    }
    if (mode == "kl-check") {
        const auto r = usage_guard([&] { return kl_frobenius_check(fam, tau, o.m); });
        j["tau_prime"] = r.tau_prime;
        j["exact_kl"] = num(r.exact_kl);
        j["frobenius_sq"] = num(r.frobenius_sq);
        j["tail_bound"] = num(r.tail_bound);
        j["kl_constant"] = num(r.kl_constant);
        return j;
    }
    throw UsageError("covmat-bound: unknown mode '" + mode + "'");
}

Json cmd_vg(const Options& o) {
    const std::uint64_t seed = o.seed ? *o.seed : default_seed();
    const BinaryCode code = usage_guard([&] { return vg_code(o.k, seed, o.budget); });
    Json j;
    j["k"] = code.length;
    j["seed"] = seed;
    j["size"] = code.size();
    j["target_size"] = vg_target_size(code.length);
    j["min_distance"] = code.min_distance();
    j["target_distance"] = vg_target_distance(code.length);
    j["words"] = Json::array();
    for (std::size_t i = 0; i < code.size(); ++i) j["words"].push_back(words_as_strings(code, i));
    return j;
}

Json points_json(const SpherePacking& sp) {
    Json pts = Json::array();
    for (const auto& pt : sp.points) {
        std::vector<double> v(pt.begin(), pt.begin() + sp.d);
        pts.push_back(num_array(v));
    }
    return pts;
}

std::optional<Json> cmd_caps(const Options& o, std::ostream& out) {
    const std::string mode = o.mode.empty() ? "packing" : o.mode;
    const std::uint64_t seed = o.seed ? *o.seed : default_seed();
    if (o.format == "csv" && mode != "sweep")
        throw UsageError("cap-packing: CSV output is only available with --mode sweep");
    if (mode == "sweep") {
        const auto grid = grid_spec(o.eps_grid.empty() ? "0.005,0.01,0.02,0.05,0.1,0.2" : o.eps_grid, "--eps-grid");
        std::vector<std::vector<double>> rows;
        for (double eps : grid) {
            const auto g = usage_guard([&] { return cap_geometry(eps, o.d, o.cap_p); });
            const double pw = cap_distance_pow(g);
            rows.push_back({eps, g.alpha_angle, g.beta_angle, std::sin(g.beta_angle), std::pow(pw, 1.0 / g.p),
                            pw / (std::pow(eps, g.p) * std::pow(eps, (g.d - 1) / 2.0))});
        }
        static const std::vector<std::string> cols{"eps", "alpha", "beta", "sin_beta", "cap_distance", "claim_ratio"};
        if (o.format == "csv") {
            out << std::setprecision(17);
            for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
            out << '\n';
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
                out << '\n';
            }
            return std::nullopt;
        }
        Json j = Json::array();
        for (const auto& r : rows) {
            Json row;
            for (std::size_t i = 0; i < cols.size(); ++i) row[cols[i]] = num(r[i]);
            j.push_back(row);
        }
        return j;
    }
    if (mode == "geometry") {
        const auto g = usage_guard([&] { return cap_geometry(o.eps, o.d, o.cap_p); });
        Json j;
        j["epsilon"] = num(g.epsilon);
        j["d"] = g.d;
        j["p"] = num(g.p);
        j["alpha"] = num(g.alpha_angle);
        j["beta"] = num(g.beta_angle);
        j["sin_beta"] = num(std::sin(g.beta_angle));
        j["sin_beta_lower"] = num(std::sqrt(g.epsilon) / (2.0 * std::sqrt(2.0)));
        j["sphere_constant"] = num(sphere_constant(g.d));
        j["cap_distance"] = num(cap_distance(g));
        return j;
    }
    if (mode == "points") {
        const auto sp = usage_guard([&] { return sphere_packing_points(o.d, o.eps, seed); });
        Json j;
        j["d"] = sp.d;
        j["epsilon"] = num(sp.epsilon);
        j["threshold"] = num(sp.threshold);
        j["count"] = sp.points.size();
        j["min_distance"] = num(sp.min_distance);
        j["packing_constant"] = num(sp.packing_constant);
        j["mesh_size"] = sp.mesh_size;
        j["points"] = points_json(sp);
        return j;
    }
    if (mode != "packing") throw UsageError("cap-packing: unknown mode '" + mode + "'");
    const auto sp = usage_guard([&] { return support_packing_bound(o.d, o.cap_p, o.eps, seed); });
    Json j;
    j["d"] = sp.geom.d;
    j["p"] = num(sp.geom.p);
    j["epsilon"] = num(sp.geom.epsilon);
    j["seed"] = seed;
    j["alpha"] = num(sp.geom.alpha_angle);
    j["beta"] = num(sp.geom.beta_angle);
    j["caps"] = sp.packing.points.size();
    j["packing_constant"] = num(sp.packing.packing_constant);
    j["code_size"] = sp.code_size;
    j["log_count"] = num(sp.log_code_size);
    j["log_count_target"] = num(sp.packing.points.size() / 8.0);
    j["min_hamming"] = sp.min_hamming;
    j["cap_distance"] = num(sp.cap_distance);
    j["min_distance"] = num(sp.min_distance);
    j["claim_ratio"] = num(sp.claim_ratio);
    j["points"] = points_json(sp.packing);
    Json words = Json::array();
    for (const auto& w : sp.words) {
        std::string s;
        for (int b : w) s.push_back(static_cast<char>('0' + b));
        words.push_back(s);
    }
    j["words"] = words;
    return j;
}

Json cmd_verify(const Options& o) {
    std::vector<Ensemble> extra;
    for (const auto& f : o.files) extra.push_back(load_ensemble(f));
    const std::uint64_t seed = o.seed ? *o.seed : default_seed();
    return usage_guard([&] { return run_verify(o.suite, seed, extra); });
}

void add_param(CLI::App* sub, Options& o, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<double>(flag, [&o, key](double v) { o.params[key] = v; }, help);
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"divergence", "bayes-risk", "minimax-risk", "bound",
                                                "jf", "jf-cover", "entropy-bound", "covmat-bound",
                                                "vg", "cap-packing", "verify"};
    return names;
}

const std::vector<Route>& operation_routes() {
    static const std::vector<Route> routes{
        {"validate", "divergence", "", {"divergence", "--gen", "kl", "@p.json", "@q.json"}},
        {"product_distribution", "divergence", "", {"divergence", "--gen", "kl", "--power", "3", "@p.json", "@q.json"}},
        {"eval_divergence", "divergence", "", {"divergence", "--gen", "chi2", "@p.json", "@q.json"}},
        {"tv_distance", "divergence", "distances", {"divergence", "--mode", "distances", "@p.json", "@q.json"}},
        {"hellinger_distance_sq", "divergence", "distances", {"divergence", "--mode", "distances", "@p.json", "@q.json"}},
        {"g_function", "bound", "g", {"bound", "--family", "g", "--gen", "chi2", "--n", "2", "--a", "0.25"}},
        {"bayes_risk_exact", "bayes-risk", "", {"bayes-risk", "@pair.json"}},
        {"map_test", "bayes-risk", "", {"bayes-risk", "@pair.json", "--prior", "0.3,0.7"}},
        {"minimax_risk", "minimax-risk", "", {"minimax-risk", "@pair.json", "--tol", "1e-6"}},
        {"theorem1_rhs", "bound", "theorem1", {"bound", "--family", "theorem1", "--gen", "chi2", "--w", "0.5", "--rbar", "0.25"}},
        {"invert_implicit_bound", "bound", "implicit", {"bound", "--family", "implicit", "--gen", "chi2", "--n", "2", "--sum", "0.5"}},
        {"explicit_bound", "bound", "explicit", {"bound", "--family", "explicit", "--gen", "kl", "--n", "4", "--sum", "1", "--a", "0.4"}},
        {"named_bound", "bound", "named", {"bound", "--family", "fano", "--stats", "N=16,avgKL=1"}},
        {"two_point_sharpness", "bound", "two-point", {"bound", "--family", "two-point", "--gen", "chi2", "--v", "0.3"}},
        {"two_point_infimum", "bound", "two-point-infimum", {"bound", "--family", "two-point-infimum", "--gen", "kl", "--v", "0.5"}},
        {"pinsker_ratio_infimum", "bound", "pinsker-ratio", {"bound", "--family", "pinsker-ratio", "--v", "0.05"}},
        {"named_statistics", "bound", "from-ensemble", {"bound", "--family", "chi2", "--from-ensemble", "@triple.json"}},
        {"jf_closed_form", "jf", "closed", {"jf", "--gen", "chi2", "--method", "closed", "@singular.json"}},
        {"jf_numeric", "jf", "numeric", {"jf", "--gen", "power:3", "--method", "numeric", "@singular.json"}},
        {"simple_chain", "jf", "chain", {"jf", "--gen", "chi2", "--mode", "chain", "@pair.json"}},
        {"covering_upper_bound", "jf-cover", "", {"jf-cover", "--kind", "chi2", "--candidates", "@candidates.json", "@singular.json"}},
        {"covering_specialization", "jf-cover", "specialization", {"jf-cover", "--kind", "chi2", "--mode", "specialization", "--m", "4", "--approx-error", "1"}},
        {"theorem3_point", "entropy-bound", "point", {"entropy-bound", "--mode", "point", "--kind", "chi2", "--packing", "100", "--covering", "4", "--loss", "identity", "--eta", "0.2", "--eps", "1"}},
        {"theorem3_grid", "entropy-bound", "grid", {"entropy-bound", "--mode", "grid", "--kind", "chi2", "--model", "gaussian_ball", "--d", "2", "--gamma", "10", "--sigma", "1", "--eta-grid", "0.1:10:4", "--eps-grid", "0.5:1.3:3", "--format", "csv"}},
        {"theorem3_optimize", "entropy-bound", "optimize", {"entropy-bound", "--kind", "chi2", "--model", "gaussian_ball", "--d", "2", "--gamma", "10", "--sigma", "1"}},
        {"builtin_profile", "entropy-bound", "optimize", {"entropy-bound", "--kind", "chi2", "--model", "gaussian_1d", "--n", "100", "--c1", "1", "--c2", "1", "--eta0", "1", "--eps0", "1"}},
        {"profile_from_json", "entropy-bound", "optimize", {"entropy-bound", "--kind", "chi2", "--profile", "@profile.json", "--loss", "squared"}},
        {"analytic_divergence", "entropy-bound", "analytic", {"entropy-bound", "--mode", "analytic", "--analytic", "gaussian_location", "--theta", "1", "--theta-prime", "0", "--n", "2"}},
        {"support_schedule", "entropy-bound", "schedule", {"entropy-bound", "--mode", "schedule", "--d", "3", "--gamma", "1", "--sigma", "1", "--n", "1000"}},
        {"disc_lattice", "entropy-bound", "lattice", {"entropy-bound", "--mode", "lattice", "--gamma", "1", "--spacing", "0.05", "--radius", "0.2"}},
        {"vg_code", "vg", "", {"vg", "--k", "16", "--seed", "7"}},
        {"build_cov_family", "covmat-bound", "family", {"covmat-bound", "--mode", "family", "--p", "4", "--k", "2", "--alpha", "1", "--delta-a", "4"}},
        {"spectral_separation", "covmat-bound", "separation", {"covmat-bound", "--mode", "separation", "--p", "4", "--k", "2", "--alpha", "1", "--delta-a", "4", "--tau", "10", "--tau-prime", "00"}},
        {"kl_frobenius_check", "covmat-bound", "kl-check", {"covmat-bound", "--mode", "kl-check", "--p", "6", "--k", "3", "--alpha", "1", "--delta-a", "4", "--tau", "111", "--m", "2"}},
        {"gaussian_kl", "covmat-bound", "gaussian-kl", {"covmat-bound", "--mode", "gaussian-kl", "--sigma0", "@sigma0.json", "--sigma1", "@sigma1.json"}},
        {"covmat_bound_assembly", "covmat-bound", "assembly", {"covmat-bound", "--alpha", "1", "--n", "8", "--p", "40", "--delta-report", "1"}},
        {"cap_geometry", "cap-packing", "geometry", {"cap-packing", "--mode", "geometry", "--d", "2", "--p", "1", "--eps", "0.1"}},
        {"cap_distance", "cap-packing", "sweep", {"cap-packing", "--mode", "sweep", "--d", "3", "--p", "2", "--format", "csv"}},
        {"sphere_packing_points", "cap-packing", "points", {"cap-packing", "--mode", "points", "--d", "3", "--eps", "0.04"}},
        {"support_packing_bound", "cap-packing", "packing", {"cap-packing", "--d", "2", "--p", "1", "--eps", "0.01"}},
        {"run_verify", "verify", "", {"verify", "--suite", "mixture", "@pair.json", "@triple.json"}},
    };
    return routes;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("mmlb");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimax lower bounds via f-divergences on finite and analytic models"};
    app.name("mmlb");
    app.require_subcommand(1);
    Options o;

    auto seed_opt = [&](CLI::App* sub) {
        sub->add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t s) { o.seed = s; },
                                                std::string("Seed (default from ") + kSeedEnv + ", else 0)");
    };

    auto* div = app.add_subcommand("divergence", "f-divergence D_f(P||Q) between two distribution files");
    div->add_option("--gen", o.gen, "Generator: kl, chi2, hellinger_half, hellinger_sq, tv, power:l, reverse_kl");
    div->add_option("--power", o.power, "Compare the n-fold products")->check(CLI::PositiveNumber);
    div->add_option("--mode", o.mode, "distances: total variation and squared Hellinger distance");
    div->add_option("files", o.files, "P.json Q.json")->required();

    auto* bayes = app.add_subcommand("bayes-risk", "Exact Bayes testing risk and the MAP test");
    bayes->add_option("ensemble", o.files, "Ensemble file")->required();
    bayes->add_option("--prior", o.prior, "Comma-separated prior (default: file prior or uniform)");

    auto* minimax = app.add_subcommand("minimax-risk", "Minimax testing risk with least favourable prior");
    minimax->add_option("ensemble", o.files, "Ensemble file")->required();
    minimax->add_option("--tol", o.tol, "Duality gap tolerance (default 1e-6)");

    auto* bound = app.add_subcommand("bound", "Lower bounds on the Bayes testing risk");
    bound->add_option("--family", o.family,
                      "fano, chi2, hellinger, tv, power_l, reverse_kl_tv, theorem1, implicit, explicit, g, "
                      "two-point, two-point-infimum, pinsker-ratio")
        ->required();
    bound->add_option("--stats", o.stats, "Statistics as key=value pairs, e.g. N=16,avgKL=1");
    bound->add_option("--from-ensemble", o.from_ensemble, "Compute the statistics from an ensemble file");
    bound->add_option("--gen", o.gen, "Generator for theorem1/implicit/explicit/g/two-point");
    bound->add_option("--n", o.n_members, "Number of hypotheses N");
    bound->add_option("--sum", o.sum, "Divergence sum");
    bound->add_option("--a", o.a, "Expansion point a");
    bound->add_option("--w", o.w, "W, the MAP-weighted mass of Q");
    bound->add_option("--rbar", o.rbar, "Bayes risk");
    bound->add_option("--v", o.v, "Total variation V (two-point) or smallest V (pinsker-ratio)");
    bound->add_option("--l", o.l, "Exponent for power_l (default 3)");

    auto* jf = app.add_subcommand("jf", "J_f = inf_Q average f-divergence to Q");
    jf->add_option("--gen", o.gen, "Generator (default kl)");
    jf->add_option("--method", o.method, "closed, numeric or auto (default)");
    jf->add_option("--tol", o.tol, "Numeric solver tolerance (default 1e-8)");
    jf->add_option("--mode", o.mode, "chain: mixture/pairwise upper bounds");
    jf->add_option("ensemble", o.files, "Ensemble file")->required();

    auto* cover = app.add_subcommand("jf-cover", "Covering upper bounds on J_f");
    cover->add_option("--kind", o.kind, "kl, chi2, power_l, hellinger_sq")->required();
    cover->add_option("--candidates", o.candidates, "Covering family file");
    cover->add_option("--mode", o.mode, "specialization: closed-form bound from --m and --approx-error");
    cover->add_option("--m", o.m_count, "Number of candidates M");
    cover->add_option("--approx-error", o.approx_error, "max_theta min_alpha D_f(P_theta || Q_alpha)");
    cover->add_option("--l", o.l, "Exponent for power_l (default 3)");
    cover->add_option("ensemble", o.files, "Ensemble file");

    auto* ent = app.add_subcommand("entropy-bound", "Global metric entropy minimax lower bounds");
    ent->add_option("--mode", o.mode, "optimize (default), point, grid, analytic, schedule, lattice");
    ent->add_option("--kind", o.kind, "kl, chi2 (default), power_l");
    ent->add_option("--model", o.model, "gaussian_1d, uniform_scale, uniform_shift, gaussian_ball, support_function");
    ent->add_option("--profile", o.profile, "Custom profile file");
    ent->add_option("--packing", o.packing, "Constant packing number N");
    ent->add_option("--covering", o.covering, "Constant covering number M");
    ent->add_option("--loss", o.loss, "squared or identity (default: the model's)");
    ent->add_option("--eta", o.eta, "Packing radius (point mode)");
    ent->add_option("--eps", o.eps, "Covering radius (point mode)");
    ent->add_option("--eta-grid", o.eta_grid, "lo:hi:count (log-spaced) or a comma list");
    ent->add_option("--eps-grid", o.eps_grid, "lo:hi:count (log-spaced) or a comma list");
    ent->add_option("--l", o.l, "Exponent for power_l (default 3)");
    ent->add_option("--format", o.format, "json or csv (grid mode)");
    ent->add_option("--analytic", o.analytic, "gaussian_location, uniform_scale, uniform_shift");
    ent->add_option("--theta", o.theta, "First parameter (analytic mode)");
    ent->add_option("--theta-prime", o.theta_prime, "Second parameter (analytic mode)");
    ent->add_option("--widen", o.widen, "Widening of the candidate interval (uniform_shift)");
    ent->add_option_function<double>("--c", [&o](double v) { o.schedule_c = v; }, "Schedule constant c");
    ent->add_option("--spacing", o.spacing, "Lattice spacing");
    ent->add_option("--radius", o.radius, "Packing/covering radius");
    ent->add_option_function<double>("--sigma", [&o](double v) {
        o.params["sigma"] = v;
        o.sigma = v;
    }, "Noise level");
    add_param(ent, o, "--n", "n", "Sample size");
    add_param(ent, o, "--d", "d", "Dimension");
    add_param(ent, o, "--gamma", "gamma", "Radius of the parameter set");
    add_param(ent, o, "--c1", "c1", "Packing constant");
    add_param(ent, o, "--c2", "c2", "Covering constant");
    add_param(ent, o, "--c3", "c3", "Covering constant (uniform_scale)");
    add_param(ent, o, "--c-prime", "c_prime", "Packing constant (support_function)");
    add_param(ent, o, "--c-dprime", "c_dprime", "Covering constant (support_function)");
    add_param(ent, o, "--eta0", "eta0", "Upper end of the packing range");
    add_param(ent, o, "--eps0", "eps0", "Upper end of the covering range");

    auto* cov = app.add_subcommand("covmat-bound", "Banded covariance family and its Fano bound");
    cov->add_option("--mode", o.mode, "assembly (default), family, separation, kl-check, gaussian-kl");
    cov->add_option("--alpha", o.alpha, "Decay exponent of the band");
    cov->add_option("--n", o.sample_n, "Sample size");
    cov->add_option("--p", o.p, "Dimension");
    cov->add_option("--k", o.k, "Number of perturbed rows");
    cov->add_option("--m", o.m, "kl-check: tau' zeroes coordinates before m");
    cov->add_option_function<double>("--delta-a", [&o](double v) { o.delta_a = v; }, "Band constant (default: diagonal dominance)");
    cov->add_option("--delta-report", o.delta_report, "k = ceil(4 delta_report n^{1/(2 alpha+1)})");
    cov->add_option("--km-scale", o.km_scale, "k - m = ceil(km_scale n^{1/(2 alpha+1)})");
    cov->add_option_function<unsigned>("--k-minus-m", [&o](unsigned v) { o.k_minus_m = v; });
    cov->add_option("--tau", o.tau, "Bits, e.g. 101");
    cov->add_option("--tau-prime", o.tau_prime, "Bits, e.g. 001");
    cov->add_option("--sigma0", o.sigma0, "Matrix file (array of rows)");
    cov->add_option("--sigma1", o.sigma1, "Matrix file (array of rows)");
    seed_opt(cov);

    auto* vg = app.add_subcommand("vg", "Greedy binary code with exp(k/8) words at distance k/4");
    vg->add_option("--k", o.k, "Word length (>= 8)")->required();
    vg->add_option("--budget", o.budget, "Candidate budget");
    seed_opt(vg);

    auto* caps = app.add_subcommand("cap-packing", "Spherical cap packing of convex bodies");
    caps->add_option("--mode", o.mode, "packing (default), geometry, points, sweep");
    caps->add_option("--d", o.d, "Dimension (2 or 3)");
    caps->add_option("--p", o.cap_p, "L_p index");
    caps->add_option("--eps", o.eps, "Cap depth");
    caps->add_option("--eps-grid", o.eps_grid, "sweep: lo:hi:count or a comma list");
    caps->add_option("--format", o.format, "json or csv (sweep mode)");
    seed_opt(caps);

    auto* ver = app.add_subcommand("verify", "Run the invariant suites");
    ver->add_option("--suite", o.suite, "dist, fdiv, testing, mixture, jf, entropy, constructions, all");
    ver->add_option("ensembles", o.files, "Extra ensemble files to include");
    seed_opt(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version report success; every other parse failure is a usage error.
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
        std::optional<Json> result;
        if (div->parsed()) result = cmd_divergence(o);
        if (bayes->parsed()) result = cmd_bayes_risk(o);
        if (minimax->parsed()) result = cmd_minimax(o);
        if (bound->parsed()) result = cmd_bound(o);
        if (jf->parsed()) result = cmd_jf(o);
        if (cover->parsed()) result = cmd_jf_cover(o);
        if (ent->parsed()) result = cmd_entropy(o, out);
        if (cov->parsed()) result = cmd_covmat(o);
        if (vg->parsed()) result = cmd_vg(o);
        if (caps->parsed()) result = cmd_caps(o, out);
        if (ver->parsed()) {
            result = cmd_verify(o);
            out << dump(*result);
            return (*result)["passed"].get<bool>() ? 0 : 1;
        }
        if (result) out << dump(*result);
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace mmlb::cli
