#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mmlb {

/// Normalization slack kept internally once a vector has been accepted.
inline constexpr double kNormTolerance = 1e-12;
/// Normalization slack accepted at input boundaries (files, CLI flags).
inline constexpr double kInputTolerance = 1e-9;

/// Probability vector over a finite sample space {0, ..., support_size - 1}.
///
/// The dominating measure is counting measure, so the pmf doubles as the
/// density. Instances are immutable and always satisfy: every entry >= 0,
/// entries sum to 1 within kNormTolerance, support_size >= 1.
class Distribution {
public:
    /// Checks `pmf` and returns it as a distribution, rescaled so that the
    /// entries sum to 1. Throws std::invalid_argument for an empty vector, a
    /// negative or non-finite entry, or a sum deviating from 1 by more than
    /// `tolerance`.
    static Distribution validate(std::vector<double> pmf, double tolerance = kInputTolerance);

    static Distribution uniform(std::size_t support_size);
    static Distribution point_mass(std::size_t support_size, std::size_t at);

    std::span<const double> pmf() const noexcept { return pmf_; }
    std::size_t support_size() const noexcept { return pmf_.size(); }
    double operator[](std::size_t x) const noexcept { return pmf_[x]; }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    explicit Distribution(std::vector<double> pmf) : pmf_(std::move(pmf)) {}
    std::vector<double> pmf_;
};

/// Default cap on the number of points of a product space.
inline constexpr std::size_t kDefaultProductCap = 1'000'000;

/// n-fold product of `base`, laid out lexicographically with the first
/// coordinate most significant. Throws std::length_error when
/// support_size^n exceeds `max_points`.
Distribution product_distribution(const Distribution& base, unsigned n,
                                  std::size_t max_points = kDefaultProductCap);

/// Marginal of a product-space pmf along `coordinate`, the base space having
/// `base_size` points.
std::vector<double> marginal(const Distribution& product, std::size_t base_size,
                             unsigned factors, unsigned coordinate);

/// Convex combination sum_i weights[i] * members[i].
Distribution mixture(std::span<const Distribution> members, std::span<const double> weights);

/// A finite family {P_theta} with a prior w (uniform when not given) and
/// optional numeric labels for the parameter values.
class Ensemble {
public:
    explicit Ensemble(std::vector<Distribution> members,
                      std::optional<std::vector<double>> prior = std::nullopt,
                      std::vector<double> labels = {});

    std::size_t size() const noexcept { return members_.size(); }
    std::size_t support_size() const noexcept { return members_.front().support_size(); }
    const std::vector<Distribution>& members() const noexcept { return members_; }
    const Distribution& member(std::size_t i) const { return members_.at(i); }
    std::span<const double> prior() const noexcept { return prior_; }
    double weight(std::size_t i) const { return prior_.at(i); }
    bool has_explicit_prior() const noexcept { return explicit_prior_; }
    const std::vector<double>& labels() const noexcept { return labels_; }

    /// Same members under a different prior.
    Ensemble with_prior(std::vector<double> prior) const;
    /// Same members under the uniform prior.
    Ensemble with_uniform_prior() const;

    /// Uniform mixture (1/N) sum_theta P_theta, independent of the prior.
    Distribution uniform_mixture() const;

    /// Members packed row-major (N x support_size) for the kernels.
    const std::vector<double>& packed() const noexcept { return packed_; }

private:
    std::vector<Distribution> members_;
    std::vector<double> prior_;
    bool explicit_prior_ = false;
    std::vector<double> labels_;
    std::vector<double> packed_;
};

}  // namespace mmlb
