#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "mmlb/codes.hpp"
#include "mmlb/errors.hpp"

using namespace mmlb;

TEST(Hamming, UnpackedAndPacked) {
    const std::vector<int> a{1, 0, 1, 1, 0}, b{0, 0, 1, 0, 1};
    EXPECT_EQ(hamming(a, b), 3u);
    EXPECT_EQ(hamming(a, a), 0u);
    const auto pa = pack_bits(a), pb = pack_bits(b);
    EXPECT_EQ(hamming(pa, pb), 3u);
    const std::vector<int> bad{0, 2, 1, 0, 0};
    EXPECT_THROW(hamming(a, bad), std::invalid_argument);
    EXPECT_THROW(hamming(a, std::vector<int>{1, 0}), std::invalid_argument);
}

TEST(Hamming, PackedAcrossLimbs) {
    std::vector<int> a(130, 0), b(130, 0);
    for (int i = 0; i < 130; i += 3) a[i] = 1;
    for (int i = 0; i < 130; i += 5) b[i] = 1;
    unsigned direct = 0;
    for (int i = 0; i < 130; ++i) direct += a[i] != b[i];
    EXPECT_EQ(hamming(pack_bits(a), pack_bits(b)), direct);
}

TEST(VgTargets, Values) {
    EXPECT_EQ(vg_target_size(8), 3u);
    EXPECT_EQ(vg_target_size(16), 8u);
    EXPECT_EQ(vg_target_size(22), static_cast<std::size_t>(std::ceil(std::exp(2.75))));
    EXPECT_EQ(vg_target_distance(16), 4u);
    EXPECT_EQ(vg_target_distance(17), 5u);
}

TEST(VgCode, Example) {
    const auto code = vg_code(16, 7);
    EXPECT_GE(code.size(), 8u);
    EXPECT_GE(code.min_distance(), 4u);
}

TEST(VgCode, SizesAndDistancesVerifiedExhaustively) {
    for (unsigned k : {8u, 12u, 16u, 20u, 24u, 32u, 48u})
        for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
            const auto code = vg_code(k, seed);
            EXPECT_EQ(code.length, k);
            EXPECT_GE(code.size(), vg_target_size(k));
            unsigned worst = k + 1;
            for (std::size_t i = 0; i < code.size(); ++i)
                for (std::size_t j = i + 1; j < code.size(); ++j) {
                    const auto a = code.unpack(i), b = code.unpack(j);
                    unsigned d = 0;
                    for (unsigned t = 0; t < k; ++t) d += a[t] != b[t];
                    worst = std::min(worst, d);
                }
            EXPECT_GE(worst, vg_target_distance(k)) << "k=" << k;
            EXPECT_EQ(worst, code.min_distance());
        }
}

TEST(VgCode, DeterministicPerSeed) {
    EXPECT_EQ(vg_code(24, 5).words, vg_code(24, 5).words);
    EXPECT_NE(vg_code(24, 5).words, vg_code(24, 6).words);
}

TEST(VgCode, Errors) {
    EXPECT_THROW(vg_code(4, 0), std::invalid_argument);
    EXPECT_THROW(vg_code(64, 0, 10), ConvergenceError);
}
