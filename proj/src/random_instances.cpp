#include "mmlb/random_instances.hpp"

#include <stdexcept>

namespace mmlb {

Distribution random_distribution(Rng& rng, std::size_t support, double zero_prob) {
    if (support == 0) throw std::invalid_argument("random_distribution: support must be positive");
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution drop(zero_prob);
    std::vector<double> w(support);
    double total = 0.0;
    for (auto& v : w) {
        v = expo(rng);
        if (zero_prob > 0.0 && drop(rng)) v = 0.0;
        total += v;
    }
    if (total == 0.0) {
        w[uniform_index(rng, 0, support - 1)] = 1.0;
        total = 1.0;
    }
    for (auto& v : w) v /= total;
    return Distribution::validate(std::move(w));
}

std::vector<double> random_prior(Rng& rng, std::size_t n) {
    const Distribution d = random_distribution(rng, n);
    return {d.pmf().begin(), d.pmf().end()};
}

Ensemble random_ensemble(Rng& rng, std::size_t n, std::size_t support, double zero_prob, bool random_weights) {
    std::vector<Distribution> members;
    for (std::size_t i = 0; i < n; ++i) members.push_back(random_distribution(rng, support, zero_prob));
    std::optional<std::vector<double>> prior;
    if (random_weights) prior = random_prior(rng, n);
    return Ensemble(std::move(members), std::move(prior));
}

std::vector<int> random_bits(Rng& rng, std::size_t k) {
    std::vector<int> out(k);
    for (auto& b : out) b = static_cast<int>(rng() & 1U);
    return out;
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace mmlb
