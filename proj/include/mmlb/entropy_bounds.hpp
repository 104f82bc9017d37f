#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmlb/report.hpp"

namespace mmlb {

/// Which divergence the covering numbers are measured in.
enum class EntropyKind { kl, chi2, power_l };

EntropyKind parse_entropy_kind(const std::string& name);
const char* to_string(EntropyKind kind);

/// Nondecreasing loss l: [0, inf) -> [0, inf).
struct Loss {
    std::string name;
    std::function<double(double)> fn;

    double operator()(double x) const { return fn(x); }
};

Loss squared_loss();
Loss identity_loss();
Loss parse_loss(const std::string& name);
/// Checks monotonicity on a grid of [0, upper].
bool is_nondecreasing(const Loss& loss, double upper = 100.0);

/// Packing lower bound eta -> N(eta) and covering upper bounds eps -> M(eps),
/// stored as logarithms so that profiles such as exp(c (G/eta)^k) do not
/// overflow. Counts below 1 are raised to 1.
struct EntropyProfile {
    using LogFn = std::function<double(double)>;
    using Predicate = std::function<bool(double)>;

    std::string model;
    LogFn log_packing;
    Predicate packing_valid;
    std::map<EntropyKind, LogFn> log_covering;
    Predicate covering_valid;
    /// Default (log-spaced) search ranges for eta and eps.
    std::pair<double, double> eta_range{1e-3, 1.0};
    std::pair<double, double> eps_range{1e-3, 1.0};
    Loss loss = squared_loss();
    /// Every constant the profile was built from, including defaulted ones.
    std::map<std::string, double> constants;
    std::vector<std::string> warnings;

    double log_n(double eta) const;
    double log_m(EntropyKind kind, double eps) const;
    bool has_covering(EntropyKind kind) const { return log_covering.count(kind) != 0; }
};

/// Profile with constant N and M for all three kinds, valid everywhere.
EntropyProfile constant_profile(double packing, double covering);

enum class Model { gaussian_1d, uniform_scale, uniform_shift, gaussian_ball, support_function };

Model parse_model(const std::string& name);
const char* to_string(Model model);

/// Built-in profiles. Structural parameters (n, d, gamma, sigma as
/// applicable) are required; unspecified constants (c1, c2, c3, c_prime,
/// c_dprime, eta0, eps0) default to 1.0 and produce a warning.
///   gaussian_1d:      N = c1/eta (eta <= eta0); M_KL = c2 sqrt(n)/eps,
///                     M_C = c2 sqrt(n)/sqrt(log(1+eps^2)) (eps <= eps0)
///   uniform_scale:    N = c1/eta; M_C = c3 n / log(1+eps^2)
///   uniform_shift:    N = c1/eta; M_C = c2 / ((1+eps^2)^{1/n} - 1)
///   gaussian_ball:    N = (gamma/eta)^d; M_C = (3 gamma/(sigma sqrt(log(1+eps^2))))^d,
///                     valid while sigma sqrt(log(1+eps^2)) <= gamma
///   support_function: log N = c_prime (gamma/eta)^{(d-1)/2} (eta <= eta0);
///                     log M_C = c_dprime (gamma sqrt(n)/(sigma sqrt(log(1+eps^2))))^{(d-1)/2},
///                     valid while log(1+eps^2) <= n eps0^2/sigma^2
EntropyProfile builtin_profile(Model model, const std::map<std::string, double>& params);

/// Profile from tabulated points {"packing":[[eta,N],...],"covering":[[eps,M],...]}
/// with an optional "kind" (default chi2). log N and log M are interpolated
/// linearly in eta and eps; the table range is the validity range. Throws
/// std::invalid_argument for unsorted, non-monotone or malformed tables.
EntropyProfile profile_from_json(const Json& j);

struct Theorem3Point {
    double value = 0.0;
    double raw = 0.0;
    double star = 0.0;
    double log_n = 0.0;
    double log_m = 0.0;
    double loss_value = 0.0;
    bool vacuous = false;
};

/// l(eta/2) (1 - star), clamped below at 0, where star is
///   kl:      (log 2 + log M_KL(eps) + eps^2) / log N(eta)
///   chi2:    1/N(eta) + sqrt((1+eps^2) M_C(eps) / N(eta))
///   power_l: (N^{1-l} + (1+eps^2) M_l(eps)^{l-1} / N^{l-1})^{1/l}
/// Throws std::invalid_argument outside the profile's validity ranges, for
/// log N <= 0 with the kl kind, or for a bad exponent.
Theorem3Point theorem3_evaluate(EntropyKind kind, const EntropyProfile& profile, const Loss& loss, double eta,
                                double eps, double l = 3.0);

double theorem3_point(EntropyKind kind, const EntropyProfile& profile, const Loss& loss, double eta, double eps,
                      double l = 3.0);

inline constexpr std::size_t kDefaultGridPoints = 32;

std::vector<double> log_spaced(double lo, double hi, std::size_t count);

struct GridCell {
    double eta = 0.0;
    double eps = 0.0;
    double value = 0.0;
};

/// Evaluates every feasible grid point (in parallel); infeasible points are
/// skipped. Cells are ordered by eta, then eps.
std::vector<GridCell> theorem3_grid(EntropyKind kind, const EntropyProfile& profile, const Loss& loss,
                                    std::vector<double> eta_grid, std::vector<double> eps_grid, double l = 3.0);

/// Maximum of theorem3_point over the grid; ties go to the smallest (eta, eps).
/// Empty grids default to kDefaultGridPoints log-spaced points over the
/// profile's ranges. Throws std::invalid_argument when no grid point is feasible.
BoundReport theorem3_optimize(EntropyKind kind, const EntropyProfile& profile, const Loss& loss,
                              std::vector<double> eta_grid = {}, std::vector<double> eps_grid = {},
                              double l = 3.0);

enum class AnalyticModel { gaussian_location, uniform_scale, uniform_shift };

AnalyticModel parse_analytic_model(const std::string& name);
const char* to_string(AnalyticModel model);

struct AnalyticDivergence {
    std::optional<double> kl;
    double chi2 = 0.0;
};

/// Closed-form divergences between n-fold products:
///   gaussian_location: N(theta, sigma^2) vs N(theta', sigma^2)
///   uniform_scale:     U[0, theta] vs U[0, theta']
///   uniform_shift:     U[theta, theta+1] vs U[theta', theta'+1+2 widen]
AnalyticDivergence analytic_divergence(AnalyticModel model, double theta, double theta_prime, unsigned n,
                                       double sigma = 1.0, double widen = 0.0);

/// Rate schedule for the support-function problem: eta(n), u(n),
/// eps(n) = sqrt(exp(u^2) - 1), and the scale c solving
/// c^{(d-1)/2} = c_prime / (2 + 2 c_dprime) when `c` is not given.
struct SupportSchedule {
    double c = 0.0;
    double eta = 0.0;
    double u = 0.0;
    double eps = 0.0;
    double log_n = 0.0;
    double log_m = 0.0;
};

SupportSchedule support_schedule(unsigned d, double gamma, double sigma, double n, double c_prime,
                                 double c_dprime, std::optional<double> c = std::nullopt);

/// Points of the lattice h Z^2 inside the closed disc of radius gamma.
std::vector<std::pair<double, double>> disc_lattice(double gamma, double spacing);

/// Greedy maximal subset of `points` whose pairwise distances are >= radius
/// (strict > when `strict`), scanning points in order.
std::vector<std::size_t> greedy_separated(const std::vector<std::pair<double, double>>& points, double radius,
                                          bool strict);

/// True when every point lies within `radius` of some center.
bool covers(const std::vector<std::pair<double, double>>& points, const std::vector<std::size_t>& centers,
            double radius);

}  // namespace mmlb
