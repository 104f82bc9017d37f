#include "mmlb/entropy_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mmlb/kernels.hpp"

namespace mmlb {

EntropyKind parse_entropy_kind(const std::string& name) {
    if (name == "kl") return EntropyKind::kl;
    if (name == "chi2") return EntropyKind::chi2;
    if (name == "power_l") return EntropyKind::power_l;
    throw std::invalid_argument("unknown bound kind '" + name + "' (expected kl, chi2, power_l)");
}

const char* to_string(EntropyKind kind) {
    switch (kind) {
        case EntropyKind::kl:
            return "kl";
        case EntropyKind::chi2:
            return "chi2";
        case EntropyKind::power_l:
            return "power_l";
    }
    return "?";
}

Loss squared_loss() {
    return {"squared", [](double x) { return x * x; }};
}

Loss identity_loss() {
    return {"identity", [](double x) { return x; }};
}

Loss parse_loss(const std::string& name) {
    if (name == "squared") return squared_loss();
    if (name == "identity") return identity_loss();
    throw std::invalid_argument("unknown loss '" + name + "' (expected squared, identity)");
}

bool is_nondecreasing(const Loss& loss, double upper) {
    constexpr int steps = 1000;
    double prev = loss(0.0);
    if (prev < 0.0) return false;
    for (int i = 1; i <= steps; ++i) {
        const double v = loss(upper * i / steps);
        if (v < prev) return false;
        prev = v;
    }
    return true;
}

double EntropyProfile::log_n(double eta) const { return std::max(0.0, log_packing(eta)); }

double EntropyProfile::log_m(EntropyKind kind, double eps) const {
    auto it = log_covering.find(kind);
    if (it == log_covering.end())
        throw std::invalid_argument(std::string("profile '") + model + "' has no covering numbers for kind '" +
                                    to_string(kind) + "'");
    return std::max(0.0, it->second(eps));
}

EntropyProfile constant_profile(double packing, double covering) {
    if (!(packing >= 1.0) || !(covering >= 1.0))
        throw std::invalid_argument("constant_profile: N and M must be at least 1");
    EntropyProfile p;
    p.model = "constant";
    const double ln = std::log(packing);
    const double lm = std::log(covering);
    p.log_packing = [ln](double) { return ln; };
    p.packing_valid = [](double eta) { return eta > 0.0; };
    for (auto k : {EntropyKind::kl, EntropyKind::chi2, EntropyKind::power_l})
        p.log_covering[k] = [lm](double) { return lm; };
    p.covering_valid = [](double eps) { return eps > 0.0; };
    p.constants = {{"N", packing}, {"M", covering}};
    return p;
}

Model parse_model(const std::string& name) {
    if (name == "gaussian_1d") return Model::gaussian_1d;
    if (name == "uniform_scale") return Model::uniform_scale;
    if (name == "uniform_shift") return Model::uniform_shift;
    if (name == "gaussian_ball") return Model::gaussian_ball;
    if (name == "support_function") return Model::support_function;
    throw std::invalid_argument("unknown model '" + name +
                                "' (expected gaussian_1d, uniform_scale, uniform_shift, gaussian_ball, "
                                "support_function)");
}

const char* to_string(Model model) {
    switch (model) {
        case Model::gaussian_1d:
            return "gaussian_1d";
        case Model::uniform_scale:
            return "uniform_scale";
        case Model::uniform_shift:
            return "uniform_shift";
        case Model::gaussian_ball:
            return "gaussian_ball";
        case Model::support_function:
            return "support_function";
    }
    return "?";
}

namespace {

class Params {
public:
    Params(const std::map<std::string, double>& given, const char* model, std::vector<std::string> required,
           std::vector<std::string> defaulted)
        : given_(given), model_(model) {
        std::set<std::string> known(required.begin(), required.end());
        known.insert(defaulted.begin(), defaulted.end());
        for (const auto& [k, v] : given_) {
            if (!known.count(k))
                throw std::invalid_argument(std::string("profile '") + model_ + "': unknown parameter '" + k + "'");
            if (!std::isfinite(v) || v <= 0.0)
                throw std::invalid_argument(std::string("profile '") + model_ + "': parameter '" + k +
                                            "' must be positive");
        }
        for (const auto& k : required) {
            if (!given_.count(k))
                throw std::invalid_argument(std::string("profile '") + model_ + "': missing required constant '" +
                                            k + "'");
            values_[k] = given_.at(k);
        }
        for (const auto& k : defaulted) {
            auto it = given_.find(k);
            if (it == given_.end()) {
                values_[k] = 1.0;
                warnings_.push_back("constant '" + k + "' not supplied; using default 1.0");
            } else {
                values_[k] = it->second;
            }
        }
    }

    double operator[](const std::string& k) const { return values_.at(k); }
    const std::map<std::string, double>& values() const { return values_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    const std::map<std::string, double>& given_;
    const char* model_;
    std::map<std::string, double> values_;
    std::vector<std::string> warnings_;
};

void require_integer(double v, const char* what) {
    if (v != std::floor(v) || v < 1.0) throw std::invalid_argument(std::string(what) + " must be a positive integer");
}

}  // namespace

EntropyProfile builtin_profile(Model model, const std::map<std::string, double>& params) {
    EntropyProfile p;
    p.model = to_string(model);
    switch (model) {
        case Model::gaussian_1d:
        case Model::uniform_scale:
        case Model::uniform_shift: {
            const char* cover_const = model == Model::uniform_scale ? "c3" : "c2";
            const Params c(params, p.model.c_str(), {"n"}, {"c1", cover_const, "eta0", "eps0"});
            require_integer(c["n"], "n");
            const double n = c["n"], c1 = c["c1"], cc = c[cover_const], eta0 = c["eta0"], eps0 = c["eps0"];
            p.log_packing = [c1](double eta) { return std::log(c1 / eta); };
            p.packing_valid = [eta0](double eta) { return eta > 0.0 && eta <= eta0; };
            p.covering_valid = [eps0](double eps) { return eps > 0.0 && eps <= eps0; };
            if (model == Model::gaussian_1d) {
                p.log_covering[EntropyKind::kl] = [n, cc](double eps) { return std::log(cc * std::sqrt(n) / eps); };
                p.log_covering[EntropyKind::chi2] = [n, cc](double eps) {
                    return std::log(cc * std::sqrt(n)) - 0.5 * std::log(std::log1p(eps * eps));
                };
            } else if (model == Model::uniform_scale) {
                p.log_covering[EntropyKind::chi2] = [n, cc](double eps) {
                    return std::log(cc * n) - std::log(std::log1p(eps * eps));
                };
            } else {
                p.log_covering[EntropyKind::chi2] = [n, cc](double eps) {
                    return std::log(cc) - std::log(std::expm1(std::log1p(eps * eps) / n));
                };
            }
            p.eta_range = {eta0 * 1e-6, eta0};
            p.eps_range = {eps0 * 1e-3, eps0};
            p.loss = squared_loss();
            p.constants = c.values();
            p.warnings = c.warnings();
            break;
        }
        case Model::gaussian_ball: {
            const Params c(params, p.model.c_str(), {"d", "gamma", "sigma"}, {});
            require_integer(c["d"], "d");
            const double d = c["d"], gamma = c["gamma"], sigma = c["sigma"];
            p.log_packing = [d, gamma](double eta) { return d * std::log(gamma / eta); };
            p.packing_valid = [gamma](double eta) { return eta > 0.0 && eta <= gamma; };
            p.log_covering[EntropyKind::chi2] = [d, gamma, sigma](double eps) {
                return d * (std::log(3.0 * gamma / sigma) - 0.5 * std::log(std::log1p(eps * eps)));
            };
            p.covering_valid = [gamma, sigma](double eps) {
                return eps > 0.0 && sigma * std::sqrt(std::log1p(eps * eps)) <= gamma;
            };
            const double ratio = gamma / sigma;
            const double eps_max = ratio * ratio > 1400.0 ? 1e300 : std::sqrt(std::expm1(ratio * ratio));
            p.eta_range = {gamma * 1e-4, gamma};
            p.eps_range = {std::min(1e-3, eps_max * 1e-3), eps_max};
            p.loss = squared_loss();
            p.constants = c.values();
            break;
        }
        case Model::support_function: {
            const Params c(params, p.model.c_str(), {"d", "gamma", "sigma", "n"},
                           {"c_prime", "c_dprime", "eta0", "eps0"});
            require_integer(c["d"], "d");
            require_integer(c["n"], "n");
            if (c["d"] < 2.0) throw std::invalid_argument("profile 'support_function': d must be at least 2");
            const double d = c["d"], gamma = c["gamma"], sigma = c["sigma"], n = c["n"];
            const double cp = c["c_prime"], cdp = c["c_dprime"], eta0 = c["eta0"], eps0 = c["eps0"];
            const double k = (d - 1.0) / 2.0;
            p.log_packing = [cp, gamma, k](double eta) { return cp * std::pow(gamma / eta, k); };
            p.packing_valid = [eta0](double eta) { return eta > 0.0 && eta <= eta0; };
            p.log_covering[EntropyKind::chi2] = [cdp, gamma, sigma, n, k](double eps) {
                return cdp * std::pow(gamma * std::sqrt(n) / (sigma * std::sqrt(std::log1p(eps * eps))), k);
            };
            const double u_max = n * eps0 * eps0 / (sigma * sigma);
            p.covering_valid = [u_max](double eps) { return eps > 0.0 && std::log1p(eps * eps) <= u_max; };
            const double eps_max = u_max > 1400.0 ? 1e300 : std::sqrt(std::expm1(u_max));
            p.eta_range = {eta0 * 1e-4, eta0};
            p.eps_range = {std::min(1e-3, eps_max * 1e-3), eps_max};
            p.loss = identity_loss();
            p.constants = c.values();
            p.warnings = c.warnings();
            break;
        }
    }
    return p;
}

namespace {

struct Table {
    std::vector<double> x;
    std::vector<double> log_y;

    double operator()(double at) const {
        if (x.size() == 1) return log_y.front();
        auto it = std::upper_bound(x.begin(), x.end(), at);
        std::size_t hi = static_cast<std::size_t>(it - x.begin());
        hi = std::clamp<std::size_t>(hi, 1, x.size() - 1);
        const std::size_t lo = hi - 1;
        const double t = (at - x[lo]) / (x[hi] - x[lo]);
        return log_y[lo] + t * (log_y[hi] - log_y[lo]);
    }
};

Table read_table(const Json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string("profile: '") + what + "' must be a nonempty array of [x, count]");
    Table t;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 2)
            throw std::invalid_argument(std::string("profile: '") + what + "' rows must be [x, count] pairs");
        const double x = parse_num(row[0]);
        const double y = parse_num(row[1]);
        if (!(x > 0.0) || !(y >= 1.0) || !std::isfinite(y))
            throw std::invalid_argument(std::string("profile: '") + what + "' needs x > 0 and finite count >= 1");
        if (!t.x.empty() && !(x > t.x.back()))
            throw std::invalid_argument(std::string("profile: '") + what + "' must be sorted by strictly increasing x");
        if (!t.log_y.empty() && std::log(y) > t.log_y.back())
            throw std::invalid_argument(std::string("profile: '") + what + "' counts must be non-increasing");
        t.x.push_back(x);
        t.log_y.push_back(std::log(y));
    }
    return t;
}

}  // namespace

EntropyProfile profile_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("packing") || !j.contains("covering"))
        throw std::invalid_argument("profile: expected an object with 'packing' and 'covering'");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "packing" && it.key() != "covering" && it.key() != "kind" && it.key() != "loss")
            throw std::invalid_argument("profile: unknown field '" + it.key() + "'");
    const Table pack = read_table(j["packing"], "packing");
    const Table cover = read_table(j["covering"], "covering");
    const EntropyKind kind = j.contains("kind") ? parse_entropy_kind(j["kind"].get<std::string>()) : EntropyKind::chi2;
    EntropyProfile p;
    p.model = "custom";
    p.log_packing = pack;
    p.log_covering[kind] = cover;
    const double plo = pack.x.front(), phi = pack.x.back();
    const double clo = cover.x.front(), chi = cover.x.back();
    p.packing_valid = [plo, phi](double eta) { return eta >= plo && eta <= phi; };
    p.covering_valid = [clo, chi](double eps) { return eps >= clo && eps <= chi; };
    p.eta_range = {plo, phi};
    p.eps_range = {clo, chi};
    if (j.contains("loss")) p.loss = parse_loss(j["loss"].get<std::string>());
    return p;
}

Theorem3Point theorem3_evaluate(EntropyKind kind, const EntropyProfile& profile, const Loss& loss, double eta,
                                double eps, double l) {
    if (!profile.packing_valid(eta))
        throw std::invalid_argument("theorem3: eta = " + std::to_string(eta) + " outside the profile's packing range");
    if (!profile.covering_valid(eps))
        throw std::invalid_argument("theorem3: eps = " + std::to_string(eps) + " outside the profile's covering range");
    Theorem3Point out;
    out.log_n = profile.log_n(eta);
    out.log_m = profile.log_m(kind, eps);
    const double eps2 = eps * eps;
    switch (kind) {
        case EntropyKind::kl:
            if (!(out.log_n > 0.0)) throw std::invalid_argument("theorem3: kl kind requires N(eta) > 1");
            out.star = (std::log(2.0) + out.log_m + eps2) / out.log_n;
            break;
        case EntropyKind::chi2:
            out.star = std::exp(-out.log_n) + std::exp(0.5 * (std::log1p(eps2) + out.log_m - out.log_n));
            break;
        case EntropyKind::power_l:
            if (!(l > 1.0) || l == 2.0)
                throw std::invalid_argument("theorem3: power_l kind requires l > 1 and l != 2");
            out.star = std::pow(std::exp(-(l - 1.0) * out.log_n) +
                                    std::exp(std::log1p(eps2) + (l - 1.0) * (out.log_m - out.log_n)),
                                1.0 / l);
            break;
    }
    out.loss_value = loss(eta / 2.0);
    out.raw = out.loss_value * (1.0 - out.star);
    out.vacuous = !(out.raw > 0.0);
    out.value = out.vacuous ? 0.0 : out.raw;
    return out;
}

double theorem3_point(EntropyKind kind, const EntropyProfile& profile, const Loss& loss, double eta, double eps,
                      double l) {
    return theorem3_evaluate(kind, profile, loss, eta, eps, l).value;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0)
        throw std::invalid_argument("log_spaced: need 0 < lo <= hi and count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = hi;
        return out;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<GridCell> theorem3_grid(EntropyKind kind, const EntropyProfile& profile, const Loss& loss,
                                    std::vector<double> eta_grid, std::vector<double> eps_grid, double l) {
    if (eta_grid.empty()) eta_grid = log_spaced(profile.eta_range.first, profile.eta_range.second, kDefaultGridPoints);
    if (eps_grid.empty()) eps_grid = log_spaced(profile.eps_range.first, profile.eps_range.second, kDefaultGridPoints);
    std::sort(eta_grid.begin(), eta_grid.end());
    std::sort(eps_grid.begin(), eps_grid.end());
    const std::size_t ne = eta_grid.size();
    const std::size_t nf = eps_grid.size();
    constexpr double skip = std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> values = kernels::parallel::evaluate(ne * nf, [&](std::size_t k) {
        const double eta = eta_grid[k / nf];
        const double eps = eps_grid[k % nf];
        if (!profile.packing_valid(eta) || !profile.covering_valid(eps)) return skip;
        try {
            return theorem3_evaluate(kind, profile, loss, eta, eps, l).value;
        } catch (const std::invalid_argument&) {
            return skip;
        }
    });
    std::vector<GridCell> cells;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (!std::isnan(values[k])) cells.push_back({eta_grid[k / nf], eps_grid[k % nf], values[k]});
    return cells;
}

BoundReport theorem3_optimize(EntropyKind kind, const EntropyProfile& profile, const Loss& loss,
                              std::vector<double> eta_grid, std::vector<double> eps_grid, double l) {
    const std::size_t requested = (eta_grid.empty() ? kDefaultGridPoints : eta_grid.size()) *
                                  (eps_grid.empty() ? kDefaultGridPoints : eps_grid.size());
    const std::vector<GridCell> cells = theorem3_grid(kind, profile, loss, std::move(eta_grid), std::move(eps_grid), l);
    if (cells.empty()) throw std::invalid_argument("theorem3_optimize: no feasible grid point");
    std::size_t best = 0;
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i].value > cells[best].value) best = i;
    const Theorem3Point at = theorem3_evaluate(kind, profile, loss, cells[best].eta, cells[best].eps, l);

    BoundReport r;
    r.family = std::string("entropy_") + to_string(kind);
    r.value = at.value;
    r.vacuous = at.vacuous;
    r.inputs["kind"] = to_string(kind);
    r.inputs["model"] = profile.model;
    r.inputs["loss"] = loss.name;
    if (kind == EntropyKind::power_l) r.inputs["l"] = num(l);
    Json constants = Json::object();
    for (const auto& [k, v] : profile.constants) constants[k] = num(v);
    r.inputs["constants"] = constants;
    r.inputs["grid_points"] = requested;
    r.intermediates["feasible_points"] = cells.size();
    r.intermediates["star"] = num(at.star);
    r.intermediates["log_packing"] = num(at.log_n);
    r.intermediates["log_covering"] = num(at.log_m);
    r.intermediates["loss_at_half_eta"] = num(at.loss_value);
    r.intermediates["raw"] = num(at.raw);
    r.witnesses["eta"] = num(cells[best].eta);
    r.witnesses["eps"] = num(cells[best].eps);
    r.warnings = profile.warnings;
    return r;
}

AnalyticModel parse_analytic_model(const std::string& name) {
    if (name == "gaussian_location") return AnalyticModel::gaussian_location;
    if (name == "uniform_scale") return AnalyticModel::uniform_scale;
    if (name == "uniform_shift") return AnalyticModel::uniform_shift;
    throw std::invalid_argument("unknown analytic model '" + name +
                                "' (expected gaussian_location, uniform_scale, uniform_shift)");
}

const char* to_string(AnalyticModel model) {
    switch (model) {
        case AnalyticModel::gaussian_location:
            return "gaussian_location";
        case AnalyticModel::uniform_scale:
            return "uniform_scale";
        case AnalyticModel::uniform_shift:
            return "uniform_shift";
    }
    return "?";
}

AnalyticDivergence analytic_divergence(AnalyticModel model, double theta, double theta_prime, unsigned n,
                                       double sigma, double widen) {
    if (n == 0) throw std::invalid_argument("analytic_divergence: n must be positive");
    if (!std::isfinite(theta) || !std::isfinite(theta_prime))
        throw std::invalid_argument("analytic_divergence: parameters must be finite");
    const double nn = static_cast<double>(n);
    AnalyticDivergence out;
    switch (model) {
        case AnalyticModel::gaussian_location: {
            if (!(sigma > 0.0)) throw std::invalid_argument("analytic_divergence: sigma must be positive");
            const double z = (theta - theta_prime) / sigma;
            out.kl = nn * z * z / 2.0;
            out.chi2 = std::expm1(nn * z * z);
            break;
        }
        case AnalyticModel::uniform_scale: {
            if (!(theta > 0.0) || !(theta_prime > 0.0))
                throw std::invalid_argument("analytic_divergence: uniform_scale needs theta, theta' > 0");
            if (theta <= theta_prime) {
                const double lr = std::log(theta_prime / theta);
                out.kl = nn * lr;
                out.chi2 = std::expm1(nn * lr);
            } else {
                out.kl = INFINITY;
                out.chi2 = INFINITY;
            }
            break;
        }
        case AnalyticModel::uniform_shift: {
            if (!(widen >= 0.0)) throw std::invalid_argument("analytic_divergence: widen must be >= 0");
            const double offset = theta - theta_prime;
            if (offset >= 0.0 && offset <= 2.0 * widen) {
                const double lr = std::log1p(2.0 * widen);
                out.kl = nn * lr;
                out.chi2 = std::expm1(nn * lr);
            } else {
                out.kl = INFINITY;
                out.chi2 = INFINITY;
            }
            break;
        }
    }
    return out;
}

SupportSchedule support_schedule(unsigned d, double gamma, double sigma, double n, double c_prime,
                                 double c_dprime, std::optional<double> c) {
    if (d < 2) throw std::invalid_argument("support_schedule: d must be at least 2");
    if (!(gamma > 0.0 && sigma > 0.0 && n >= 1.0 && c_prime > 0.0 && c_dprime > 0.0))
        throw std::invalid_argument("support_schedule: gamma, sigma, c', c'' must be positive and n >= 1");
    const double dd = static_cast<double>(d);
    const double k = (dd - 1.0) / 2.0;
    SupportSchedule s;
    s.c = c ? *c : std::pow(c_prime / (2.0 + 2.0 * c_dprime), 1.0 / k);
    if (!(s.c > 0.0)) throw std::invalid_argument("support_schedule: c must be positive");
    s.eta = s.c * std::pow(sigma, 4.0 / (dd + 3.0)) * std::pow(gamma, (dd - 1.0) / (dd + 3.0)) *
            std::pow(n, -2.0 / (dd + 3.0));
    s.u = std::pow(gamma * std::sqrt(n) / sigma, (dd - 1.0) / (dd + 3.0));
    s.eps = s.u * s.u > 1400.0 ? INFINITY : std::sqrt(std::expm1(s.u * s.u));
    s.log_n = c_prime / std::pow(s.c, k) * s.u * s.u;
    s.log_m = c_dprime * s.u * s.u;
    return s;
}

std::vector<std::pair<double, double>> disc_lattice(double gamma, double spacing) {
    if (!(gamma > 0.0 && spacing > 0.0)) throw std::invalid_argument("disc_lattice: gamma and spacing must be positive");
    const long long m = static_cast<long long>(std::floor(gamma / spacing));
    std::vector<std::pair<double, double>> pts;
    for (long long i = -m; i <= m; ++i)
        for (long long j = -m; j <= m; ++j) {
            const double x = static_cast<double>(i) * spacing;
            const double y = static_cast<double>(j) * spacing;
            if (x * x + y * y <= gamma * gamma * (1.0 + 1e-12)) pts.emplace_back(x, y);
        }
    return pts;
}

namespace {

struct CellHash {
    std::size_t operator()(const std::pair<long long, long long>& c) const noexcept {
        return std::hash<long long>()(c.first * 1000003LL ^ c.second);
    }
};

using Buckets = std::unordered_map<std::pair<long long, long long>, std::vector<std::size_t>, CellHash>;

std::pair<long long, long long> cell_of(const std::pair<double, double>& pt, double size) {
    return {static_cast<long long>(std::floor(pt.first / size)), static_cast<long long>(std::floor(pt.second / size))};
}

template <class Fn>
bool any_neighbor(const Buckets& buckets, const std::pair<double, double>& pt, double size, Fn&& fn) {
    const auto c = cell_of(pt, size);
    for (long long dx = -1; dx <= 1; ++dx)
        for (long long dy = -1; dy <= 1; ++dy) {
            auto it = buckets.find({c.first + dx, c.second + dy});
            if (it == buckets.end()) continue;
            for (std::size_t idx : it->second)
                if (fn(idx)) return true;
        }
    return false;
}

double dist2(const std::pair<double, double>& a, const std::pair<double, double>& b) {
    const double dx = a.first - b.first;
    const double dy = a.second - b.second;
    return dx * dx + dy * dy;
}

}  // namespace

std::vector<std::size_t> greedy_separated(const std::vector<std::pair<double, double>>& points, double radius,
                                          bool strict) {
    if (!(radius > 0.0)) throw std::invalid_argument("greedy_separated: radius must be positive");
    const double r2 = radius * radius;
    Buckets buckets;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const bool conflict = any_neighbor(buckets, points[i], radius, [&](std::size_t j) {
            const double d2 = dist2(points[i], points[j]);
            return strict ? d2 <= r2 : d2 < r2;
        });
        if (conflict) continue;
        chosen.push_back(i);
        buckets[cell_of(points[i], radius)].push_back(i);
    }
    return chosen;
}

bool covers(const std::vector<std::pair<double, double>>& points, const std::vector<std::size_t>& centers,
            double radius) {
    const double r2 = radius * radius;
    Buckets buckets;
    for (std::size_t c : centers) buckets[cell_of(points[c], radius)].push_back(c);
    for (const auto& pt : points) {
        const bool hit = any_neighbor(buckets, pt, radius, [&](std::size_t j) { return dist2(pt, points[j]) <= r2; });
        if (!hit) return false;
    }
    return true;
}

}  // namespace mmlb
