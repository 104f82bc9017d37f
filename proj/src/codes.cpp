#include "mmlb/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "mmlb/errors.hpp"
#include "mmlb/kernels.hpp"

namespace mmlb {

namespace {

std::size_t limbs(unsigned length) { return (length + 63) / 64; }

}  // namespace

int BinaryCode::bit(std::size_t word, unsigned position) const {
    if (position >= length) throw std::out_of_range("BinaryCode::bit: position out of range");
    return static_cast<int>((words.at(word)[position / 64] >> (position % 64)) & 1U);
}

std::vector<int> BinaryCode::unpack(std::size_t word) const {
    std::vector<int> out(length);
    for (unsigned i = 0; i < length; ++i) out[i] = bit(word, i);
    return out;
}

unsigned BinaryCode::min_distance() const {
    return kernels::parallel::min_pairwise<unsigned>(words.size(), length + 1,
                                                     [&](std::size_t i, std::size_t j) { return hamming(words[i], words[j]); });
}

unsigned hamming(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming: words of different length");
    unsigned d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] != 0 && a[i] != 1) || (b[i] != 0 && b[i] != 1))
            throw std::invalid_argument("hamming: entries must be 0 or 1");
        d += a[i] != b[i] ? 1U : 0U;
    }
    return d;
}

unsigned hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming: words of different length");
    unsigned d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<unsigned>(std::popcount(a[i] ^ b[i]));
    return d;
}

std::vector<std::uint64_t> pack_bits(std::span<const int> bits) {
    std::vector<std::uint64_t> out(limbs(static_cast<unsigned>(bits.size())), 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("pack_bits: entries must be 0 or 1");
        if (bits[i]) out[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return out;
}

std::size_t vg_target_size(unsigned k) { return static_cast<std::size_t>(std::ceil(std::exp(k / 8.0))); }

unsigned vg_target_distance(unsigned k) { return (k + 3) / 4; }

BinaryCode vg_code(unsigned k, std::uint64_t seed, std::size_t budget) {
    if (k < 8) throw std::invalid_argument("vg_code: k must be at least 8");
    if (k > 160) throw std::invalid_argument("vg_code: k above 160 needs a code larger than 10^8 words");
    const std::size_t target = vg_target_size(k);
    const unsigned distance = vg_target_distance(k);
    const std::size_t nl = limbs(k);
    std::mt19937_64 rng(seed);

    BinaryCode code;
    code.length = k;
    auto consider = [&](std::vector<std::uint64_t> word) {
        for (const auto& kept : code.words)
            if (hamming(kept, word) < distance) return;
        code.words.push_back(std::move(word));
    };

    std::size_t tried = 0;
    if (k <= 20) {
        std::vector<std::uint32_t> order(std::size_t{1} << k);
        std::iota(order.begin(), order.end(), 0U);
        std::shuffle(order.begin(), order.end(), rng);
        for (std::uint32_t w : order) {
            if (code.size() >= target || tried >= budget) break;
            ++tried;
            consider({w});
        }
    } else {
        const std::uint64_t top_mask = k % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (k % 64)) - 1;
        while (code.size() < target && tried < budget) {
            ++tried;
            std::vector<std::uint64_t> word(nl);
            for (auto& limb : word) limb = rng();
            word.back() &= top_mask;
            consider(std::move(word));
        }
    }
    if (code.size() < target)
        throw ConvergenceError("vg_code: " + std::to_string(tried) + " candidates gave " +
                               std::to_string(code.size()) + " of " + std::to_string(target) +
                               " words; retry with another seed");
    if (code.min_distance() < distance)
        throw std::logic_error("vg_code: verification found a pair closer than the target distance");
    return code;
}

}  // namespace mmlb
