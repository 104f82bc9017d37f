#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mmlb {

/// A set of binary words of a common length, bit-packed 64 bits per limb.
struct BinaryCode {
    unsigned length = 0;
    std::vector<std::vector<std::uint64_t>> words;

    std::size_t size() const noexcept { return words.size(); }
    int bit(std::size_t word, unsigned position) const;
    std::vector<int> unpack(std::size_t word) const;
    /// Minimum pairwise Hamming distance, checked over all pairs
    /// (length + 1 for codes with fewer than two words).
    unsigned min_distance() const;
};

/// Number of positions where two 0/1 vectors differ.
unsigned hamming(std::span<const int> a, std::span<const int> b);
unsigned hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

std::vector<std::uint64_t> pack_bits(std::span<const int> bits);

/// ceil(exp(k/8)), the size a code of length k must reach.
std::size_t vg_target_size(unsigned k);
/// ceil(k/4), the required pairwise distance.
unsigned vg_target_distance(unsigned k);

inline constexpr std::size_t kDefaultVgBudget = 2'000'000;

/// Greedy code of length k >= 8 with at least ceil(exp(k/8)) words at
/// pairwise distance >= k/4. Candidates are visited in a seeded random order
/// (every word of {0,1}^k shuffled when k <= 20, independent uniform draws
/// otherwise); a candidate is kept when it is far enough from all kept words.
/// The result is verified pair by pair before it is returned. Throws
/// ConvergenceError when `budget` candidates do not reach the target, in
/// which case another seed should be tried.
BinaryCode vg_code(unsigned k, std::uint64_t seed, std::size_t budget = kDefaultVgBudget);

}  // namespace mmlb
