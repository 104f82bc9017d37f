#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "mmlb/distribution.hpp"

namespace mmlb {

using Rng = std::mt19937_64;

/// Uniform on the simplex (normalized exponentials). Each point is
/// independently zeroed with probability `zero_prob`, keeping at least one
/// point positive.
Distribution random_distribution(Rng& rng, std::size_t support, double zero_prob = 0.0);
std::vector<double> random_prior(Rng& rng, std::size_t n);
/// Members drawn with random_distribution; uniform prior unless
/// `random_weights`.
Ensemble random_ensemble(Rng& rng, std::size_t n, std::size_t support, double zero_prob = 0.0,
                         bool random_weights = false);
std::vector<int> random_bits(Rng& rng, std::size_t k);
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

}  // namespace mmlb
