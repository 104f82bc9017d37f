#include "mmlb/distribution.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mmlb/kernels.hpp"

namespace mmlb {

namespace {

std::vector<double> checked_weights(std::vector<double> w, std::size_t n, double tolerance,
                                    const char* what) {
    if (w.size() != n)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) +
                                    " entries, got " + std::to_string(w.size()));
    double total = 0.0;
    for (double v : w) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument(std::string(what) + ": entries must be finite and nonnegative");
        total += v;
    }
    if (std::abs(total - 1.0) > tolerance)
        throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(total) +
                                    ", not 1");
    for (double& v : w) v /= total;
    return w;
}

}  // namespace

Distribution Distribution::validate(std::vector<double> pmf, double tolerance) {
    if (pmf.empty()) throw std::invalid_argument("distribution: pmf is empty");
    const std::size_t n = pmf.size();
    return Distribution(checked_weights(std::move(pmf), n, tolerance, "distribution"));
}

Distribution Distribution::uniform(std::size_t support_size) {
    if (support_size == 0) throw std::invalid_argument("distribution: support_size must be positive");
    return Distribution(std::vector<double>(support_size, 1.0 / static_cast<double>(support_size)));
}

Distribution Distribution::point_mass(std::size_t support_size, std::size_t at) {
    if (at >= support_size) throw std::invalid_argument("distribution: point mass outside support");
    std::vector<double> pmf(support_size, 0.0);
    pmf[at] = 1.0;
    return Distribution(std::move(pmf));
}

Distribution product_distribution(const Distribution& base, unsigned n, std::size_t max_points) {
    if (n == 0) throw std::invalid_argument("product_distribution: n must be positive");
    const std::size_t k = base.support_size();
    std::size_t points = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (k > 1 && points > max_points / k)
            throw std::length_error("product_distribution: product space exceeds the size cap of " +
                                    std::to_string(max_points) + " points");
        points *= k;
    }
    if (points > max_points)
        throw std::length_error("product_distribution: product space exceeds the size cap of " +
                                std::to_string(max_points) + " points");
    std::vector<double> acc(base.pmf().begin(), base.pmf().end());
    for (unsigned i = 1; i < n; ++i) acc = kernels::parallel::product_step(acc, base.pmf());
    // Each entry carries n roundings and the normalization check sums `points` of them.
    const double rounding = std::numeric_limits<double>::epsilon() * static_cast<double>(n + points);
    return Distribution::validate(std::move(acc), kNormTolerance * static_cast<double>(n + 1) + rounding);
}

std::vector<double> marginal(const Distribution& product, std::size_t base_size, unsigned factors,
                             unsigned coordinate) {
    if (coordinate >= factors) throw std::invalid_argument("marginal: coordinate out of range");
    std::size_t stride = 1;
    for (unsigned i = coordinate + 1; i < factors; ++i) stride *= base_size;
    std::vector<double> out(base_size, 0.0);
    for (std::size_t x = 0; x < product.support_size(); ++x) out[(x / stride) % base_size] += product[x];
    return out;
}

Distribution mixture(std::span<const Distribution> members, std::span<const double> weights) {
    if (members.empty() || members.size() != weights.size())
        throw std::invalid_argument("mixture: members and weights must be nonempty and of equal length");
    const std::size_t s = members.front().support_size();
    std::vector<double> out(s, 0.0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].support_size() != s) throw std::invalid_argument("mixture: support size mismatch");
        for (std::size_t x = 0; x < s; ++x) out[x] += weights[i] * members[i][x];
    }
    return Distribution::validate(std::move(out), kInputTolerance);
}

Ensemble::Ensemble(std::vector<Distribution> members, std::optional<std::vector<double>> prior,
                   std::vector<double> labels)
    : members_(std::move(members)), labels_(std::move(labels)) {
    if (members_.size() < 2) throw std::invalid_argument("ensemble: needs at least two members");
    const std::size_t s = members_.front().support_size();
    for (const auto& m : members_)
        if (m.support_size() != s) throw std::invalid_argument("ensemble: members must share support_size");
    if (!labels_.empty() && labels_.size() != members_.size())
        throw std::invalid_argument("ensemble: one label per member required");
    if (prior) {
        prior_ = checked_weights(std::move(*prior), members_.size(), kInputTolerance, "ensemble prior");
        explicit_prior_ = true;
    } else {
        prior_.assign(members_.size(), 1.0 / static_cast<double>(members_.size()));
    }
    packed_.reserve(members_.size() * s);
    for (const auto& m : members_) packed_.insert(packed_.end(), m.pmf().begin(), m.pmf().end());
}

Ensemble Ensemble::with_prior(std::vector<double> prior) const {
    return Ensemble(members_, std::move(prior), labels_);
}

Ensemble Ensemble::with_uniform_prior() const { return Ensemble(members_, std::nullopt, labels_); }

Distribution Ensemble::uniform_mixture() const {
    const std::vector<double> w(members_.size(), 1.0 / static_cast<double>(members_.size()));
    return mixture(members_, w);
}

}  // namespace mmlb
