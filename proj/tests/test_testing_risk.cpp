#include <gtest/gtest.h>

#include <cmath>

#include "mmlb/oracles.hpp"
#include "mmlb/random_instances.hpp"
#include "mmlb/testing_risk.hpp"

using namespace mmlb;

namespace {

Ensemble pair() {
    return Ensemble({Distribution::validate({0.75, 0.25}), Distribution::validate({0.25, 0.75})});
}

Ensemble identical(std::size_t n) {
    return Ensemble(std::vector<Distribution>(n, Distribution::validate({0.2, 0.3, 0.5})));
}

}  // namespace

TEST(BayesRisk, Examples) {
    EXPECT_DOUBLE_EQ(bayes_risk_exact(pair()).value, 0.25);
    for (std::size_t n = 2; n <= 5; ++n) EXPECT_NEAR(bayes_risk_exact(identical(n)).value, 1.0 - 1.0 / n, 1e-15);
    EXPECT_EQ(bayes_risk_exact(pair().with_prior({1.0, 0.0})).value, 0.0);
}

TEST(MapTest, Examples) {
    EXPECT_EQ(map_test(pair()).choice, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(map_test(identical(3)).choice, (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_EQ(map_test(pair().with_prior({1.0, 0.0})).choice, (std::vector<std::size_t>{0, 0}));
}

TEST(BayesRisk, MatchesEnumerationAndMapTest) {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 4), uniform_index(rng, 2, 6), i % 3 ? 0.0 : 0.3, true);
        const double r = bayes_risk_exact(ens).value;
        EXPECT_NEAR(average_error(ens, map_test(ens)), r, 1e-12);
        EXPECT_NEAR(oracle::enumerated_bayes_risk(ens), r, 1e-12);
        EXPECT_LE(bayes_risk_exact(ens.with_uniform_prior()).value, 1.0 - 1.0 / ens.size() + 1e-12);
    }
}

TEST(BayesRisk, ConcaveInPrior) {
    Rng rng(32);
    for (int i = 0; i < 200; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 6), uniform_index(rng, 2, 10));
        const auto w1 = random_prior(rng, ens.size());
        const auto w2 = random_prior(rng, ens.size());
        std::vector<double> mid(w1.size());
        for (std::size_t t = 0; t < mid.size(); ++t) mid[t] = 0.5 * (w1[t] + w2[t]);
        EXPECT_GE(bayes_risk_exact(ens.with_prior(mid)).value,
                  0.5 * (bayes_risk_exact(ens.with_prior(w1)).value + bayes_risk_exact(ens.with_prior(w2)).value) -
                      1e-12);
    }
}

TEST(MinimaxRisk, Examples) {
    const auto mm = minimax_risk(pair());
    EXPECT_NEAR(mm.value, 0.25, 1e-9);
    EXPECT_NEAR(mm.prior[0], 0.5, 1e-9);
    EXPECT_NEAR(mm.prior[1], 0.5, 1e-9);
    const auto grid = oracle::grid_minimax(pair(), 10000);
    EXPECT_NEAR(grid.first, mm.value, 1e-9);

    EXPECT_NEAR(minimax_risk(identical(3)).value, 2.0 / 3.0, 1e-9);

    const Ensemble singular({Distribution::validate({1, 0, 0}), Distribution::validate({0, 1, 0}),
                             Distribution::validate({0, 0, 1})});
    EXPECT_NEAR(minimax_risk(singular).value, 0.0, 1e-12);
}

TEST(MinimaxRisk, DominatesEveryBayesRiskAndMatchesGrid) {
    Rng rng(33);
    for (int i = 0; i < 60; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 3), uniform_index(rng, 2, 6), i % 2 ? 0.3 : 0.0);
        const auto mm = minimax_risk(ens);
        EXPECT_LE(std::abs(mm.duality_gap), kDefaultMinimaxTol);
        EXPECT_GE(mm.deterministic_upper, mm.value - 1e-12);
        for (int j = 0; j < 5; ++j)
            EXPECT_LE(bayes_risk_exact(ens.with_prior(random_prior(rng, ens.size()))).value, mm.value + 1e-9);
        const auto grid = oracle::grid_minimax(ens, ens.size() == 2 ? 10000 : 300);
        EXPECT_LE(grid.first, mm.value + 1e-9);
        EXPECT_GE(grid.first, mm.value - (ens.size() == 2 ? 1e-3 : 2e-2));
    }
}

TEST(MinimaxRisk, RandomizationGapIsReported) {
    // Three hypotheses on two points: the minimax test must randomize.
    const Ensemble ens({Distribution::validate({1, 0}), Distribution::validate({0, 1}), Distribution::validate({0.5, 0.5})});
    const auto mm = minimax_risk(ens);
    EXPECT_GT(mm.deterministic_gap, 1e-3);
    EXPECT_NEAR(mm.randomized_upper, mm.value, kDefaultMinimaxTol);
}
