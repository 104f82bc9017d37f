#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "mmlb/distribution.hpp"
#include "mmlb/random_instances.hpp"

using namespace mmlb;

TEST(Distribution, ValidateAcceptsAndRejects) {
    EXPECT_NO_THROW(Distribution::validate({0.5, 0.5}));
    EXPECT_NO_THROW(Distribution::validate({1.0, 0.0}));
    EXPECT_THROW(Distribution::validate({0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(Distribution::validate({-0.1, 1.1}), std::invalid_argument);
    EXPECT_THROW(Distribution::validate({}), std::invalid_argument);
    EXPECT_THROW(Distribution::validate({NAN, 1.0}), std::invalid_argument);
}

TEST(Distribution, ValidateRescalesWithinInputTolerance) {
    const auto d = Distribution::validate({0.5 + 4e-10, 0.5});
    EXPECT_NEAR(d[0] + d[1], 1.0, 1e-15);
    EXPECT_THROW(Distribution::validate({0.5 + 1e-8, 0.5}), std::invalid_argument);
}

TEST(Distribution, ProductExamples) {
    const auto fair = product_distribution(Distribution::validate({0.5, 0.5}), 2);
    ASSERT_EQ(fair.support_size(), 4u);
    for (double v : fair.pmf()) EXPECT_DOUBLE_EQ(v, 0.25);

    const auto point = product_distribution(Distribution::validate({1.0}), 3);
    ASSERT_EQ(point.support_size(), 1u);
    EXPECT_DOUBLE_EQ(point[0], 1.0);

    const auto skew = product_distribution(Distribution::validate({0.2, 0.8}), 2);
    const double expected[] = {0.2 * 0.2, 0.2 * 0.8, 0.8 * 0.2, 0.8 * 0.8};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(skew[i], expected[i], 1e-15);
}

TEST(Distribution, ProductCap) {
    const auto base = Distribution::uniform(10);
    EXPECT_THROW(product_distribution(base, 7), std::length_error);
    EXPECT_NO_THROW(product_distribution(base, 6));
    EXPECT_THROW(product_distribution(base, 3, 999), std::length_error);
}

TEST(Distribution, ProductMarginalsRecoverBase) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto base = random_distribution(rng, uniform_index(rng, 1, 5), trial % 2 ? 0.3 : 0.0);
        const auto n = static_cast<unsigned>(uniform_index(rng, 1, 4));
        const auto prod = product_distribution(base, n);
        double total = 0.0;
        for (double v : prod.pmf()) total += v;
        EXPECT_NEAR(total, 1.0, 1e-12);
        for (unsigned c = 0; c < n; ++c) {
            const auto m = marginal(prod, base.support_size(), n, c);
            for (std::size_t x = 0; x < m.size(); ++x) EXPECT_NEAR(m[x], base[x], 1e-12);
        }
    }
}

TEST(Distribution, Mixture) {
    const std::vector<Distribution> members{Distribution::validate({1.0, 0.0}), Distribution::validate({0.0, 1.0})};
    const std::vector<double> w{0.25, 0.75};
    const auto m = mixture(members, w);
    EXPECT_DOUBLE_EQ(m[0], 0.25);
    EXPECT_DOUBLE_EQ(m[1], 0.75);
}

TEST(Ensemble, Invariants) {
    const auto a = Distribution::validate({0.5, 0.5});
    const auto b = Distribution::validate({0.1, 0.9});
    EXPECT_THROW(Ensemble({a}), std::invalid_argument);
    EXPECT_THROW(Ensemble({a, Distribution::uniform(3)}), std::invalid_argument);
    EXPECT_THROW(Ensemble({a, b}, std::vector<double>{0.5}), std::invalid_argument);
    EXPECT_THROW(Ensemble({a, b}, std::vector<double>{0.7, 0.7}), std::invalid_argument);

    const Ensemble ens({a, b});
    EXPECT_FALSE(ens.has_explicit_prior());
    EXPECT_DOUBLE_EQ(ens.weight(0), 0.5);
    const auto weighted = ens.with_prior({0.2, 0.8});
    EXPECT_TRUE(weighted.has_explicit_prior());
    EXPECT_DOUBLE_EQ(weighted.weight(1), 0.8);
    const auto bar = weighted.uniform_mixture();
    EXPECT_DOUBLE_EQ(bar[0], 0.3);
    ASSERT_EQ(ens.packed().size(), 4u);
    EXPECT_DOUBLE_EQ(ens.packed()[2], 0.1);
}
