#include <gtest/gtest.h>

#include <cmath>

#include "mmlb/divergence.hpp"
#include "mmlb/errors.hpp"
#include "mmlb/jf_solver.hpp"
#include "mmlb/oracles.hpp"
#include "mmlb/random_instances.hpp"

using namespace mmlb;

namespace {

Ensemble singular() { return Ensemble({Distribution::validate({1, 0}), Distribution::validate({0, 1})}); }

}  // namespace

TEST(JfClosedForm, Examples) {
    const auto chi = jf_closed_form(Generator::chi2(), singular());
    EXPECT_NEAR(chi.value, 1.0, 1e-12);
    EXPECT_NEAR(chi.minimizer[0], 0.5, 1e-12);
    EXPECT_NEAR(oracle::grid_jf(Generator::chi2(), singular()).first, 1.0, 1e-9);
    EXPECT_NEAR(jf_closed_form(Generator::kl(), singular()).value, std::log(2.0), 1e-12);
    const auto hh = jf_closed_form(Generator::hellinger_half(), singular());
    EXPECT_NEAR(hh.value, 1.0 - std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(hh.minimizer[1], 0.5, 1e-12);
    const Ensemble same(std::vector<Distribution>(3, Distribution::validate({0.2, 0.8})));
    for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::hellinger_half()}) {
        const auto r = jf_closed_form(g, same);
        EXPECT_NEAR(r.value, 0.0, 1e-12);
        EXPECT_NEAR(r.minimizer[0], 0.2, 1e-12);
    }
    EXPECT_THROW(jf_closed_form(Generator::tv(), same), std::invalid_argument);
}

TEST(JfNumeric, Examples) {
    const Ensemble same(std::vector<Distribution>(3, Distribution::validate({0.2, 0.8})));
    EXPECT_NEAR(jf_numeric(Generator::power(3), same).value, 0.0, 1e-9);
    const auto grid = oracle::grid_jf(Generator::power(3), singular());
    const auto r = jf_numeric(Generator::power(3), singular());
    EXPECT_LE(r.value, grid.first + 1e-9);
    EXPECT_NEAR(r.value, grid.first, 2e-3);
    EXPECT_LE(r.dual_value, r.value + 1e-12);
}

TEST(JfNumeric, MatchesClosedFormsAndGrid) {
    Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 5), uniform_index(rng, 2, 4), i % 3 ? 0.0 : 0.3);
        for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::hellinger_half()}) {
            const auto c = jf_closed_form(g, ens);
            const auto n = jf_numeric(g, ens);
            EXPECT_NEAR(c.value, n.value, 1e-6) << g.name();
            if (i % 10 == 0 && ens.support_size() <= 3) {
                const double grid = oracle::grid_jf(g, ens).first;
                EXPECT_LE(c.value, grid + 1e-9);
                EXPECT_NEAR(c.value, grid, 2e-3) << g.name();
            }
        }
    }
}

TEST(JfNumeric, GeneralGeneratorsBelowGrid) {
    Rng rng(52);
    for (int i = 0; i < 30; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 4), uniform_index(rng, 2, 3));
        for (const auto& g : {Generator::power(3), Generator::tv(), Generator::reverse_kl(), Generator::hellinger_sq()}) {
            const auto r = jf_numeric(g, ens);
            const double grid = oracle::grid_jf(g, ens, 400).first;
            EXPECT_LE(r.value, grid + 1e-9) << g.name();
            EXPECT_GE(r.value, r.dual_value - 1e-12);
            EXPECT_NEAR(r.value, grid, 2e-2) << g.name();
        }
    }
}

TEST(SimpleChain, Examples) {
    const Ensemble same(std::vector<Distribution>(3, Distribution::validate({0.2, 0.8})));
    const auto c0 = simple_chain(Generator::chi2(), same);
    EXPECT_EQ(c0.to_mixture, 0.0);
    EXPECT_EQ(c0.pairwise_max, 0.0);
    const Ensemble pair({Distribution::validate({0.75, 0.25}), Distribution::validate({0.25, 0.75})});
    EXPECT_NEAR(simple_chain(Generator::chi2(), pair).pairwise_average, 2.0 / 3.0, 1e-12);
    const auto ck = simple_chain(Generator::kl(), singular());
    EXPECT_NEAR(ck.to_mixture, std::log(2.0), 1e-12);
    EXPECT_TRUE(std::isinf(ck.pairwise_average));
    EXPECT_TRUE(std::isinf(ck.pairwise_max));
}

TEST(SimpleChain, OrderedAndAboveJf) {
    Rng rng(53);
    for (int i = 0; i < 100; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 5), uniform_index(rng, 2, 8));
        for (const auto& g : {Generator::kl(), Generator::chi2(), Generator::hellinger_half(), Generator::power(3)}) {
            const auto c = simple_chain(g, ens);
            EXPECT_LE(c.to_mixture, c.pairwise_average + 1e-12);
            EXPECT_LE(c.pairwise_average, c.pairwise_max + 1e-12);
            EXPECT_GE(c.to_mixture, jf_exact(g, ens).value - 1e-9);
        }
        EXPECT_NEAR(simple_chain(Generator::kl(), ens).to_mixture, jf_closed_form(Generator::kl(), ens).value, 1e-12);
    }
}

TEST(Compensation, IdentityHolds) {
    Rng rng(54);
    for (int i = 0; i < 200; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 6), uniform_index(rng, 2, 10));
        const auto q = random_distribution(rng, ens.support_size());
        const auto bar = ens.uniform_mixture();
        double lhs = 0.0, rhs = ens.size() * eval_divergence(Generator::kl(), bar, q);
        for (const auto& m : ens.members()) {
            lhs += eval_divergence(Generator::kl(), m, q);
            rhs += eval_divergence(Generator::kl(), m, bar);
        }
        EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, lhs));
    }
}

TEST(Covering, Examples) {
    const Ensemble pair({Distribution::validate({0.75, 0.25}), Distribution::validate({0.25, 0.75})});
    CoveringFamily self{pair.members(), std::vector<std::size_t>{0, 1}};
    EXPECT_NEAR(covering_upper_bound(Generator::kl(), pair, self).value, std::log(2.0), 1e-12);

    CoveringFamily half{{Distribution::validate({0.5, 0.5})}, std::nullopt};
    const auto r = covering_upper_bound(Generator::chi2(), singular(), half);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_NEAR(covering_specialization(CoverKind::chi2, 1, r.approx_error), 1.0, 1e-12);

    const Ensemble same(std::vector<Distribution>(2, Distribution::validate({0.2, 0.8})));
    CoveringFamily exact{{Distribution::validate({0.2, 0.8})}, std::nullopt};
    EXPECT_NEAR(covering_upper_bound(Generator::power(3), same, exact).value, 0.0, 1e-12);

    CoveringFamily blind{{Distribution::validate({1.0, 0.0})}, std::nullopt};
    EXPECT_TRUE(std::isinf(covering_upper_bound(Generator::kl(), singular(), blind).value));
}

TEST(Covering, SpecializationExamples) {
    EXPECT_EQ(covering_specialization(CoverKind::kl, 1, 0), 0.0);
    EXPECT_EQ(covering_specialization(CoverKind::chi2, 4, 1), 7.0);
    EXPECT_EQ(covering_specialization(CoverKind::hellinger_sq, 4, 0), 1.0);
    EXPECT_EQ(covering_specialization(CoverKind::power_l, 2, 0, 3), 3.0);
    EXPECT_THROW(covering_specialization(CoverKind::kl, 0.5, 0), std::invalid_argument);
}

TEST(Covering, BoundsDominateJf) {
    Rng rng(55);
    for (int i = 0; i < 150; ++i) {
        const auto ens = random_ensemble(rng, uniform_index(rng, 2, 5), uniform_index(rng, 2, 6));
        CoveringFamily fam;
        const std::size_t m = uniform_index(rng, 1, 4);
        for (std::size_t a = 0; a < m; ++a) fam.candidates.push_back(random_distribution(rng, ens.support_size()));
        for (auto kind : {CoverKind::kl, CoverKind::chi2, CoverKind::power_l, CoverKind::hellinger_sq}) {
            const Generator g = cover_generator(kind);
            const double j = jf_exact(g, ens).value;
            const auto res = covering_upper_bound(g, ens, fam);
            EXPECT_GE(res.value, j - 1e-6) << to_string(kind);
            const double special = covering_specialization(kind, double(m), res.approx_error);
            EXPECT_GE(special, res.value - 1e-9) << to_string(kind);
            if (kind == CoverKind::kl) {
                double mean = 0.0;
                for (double e : res.member_errors) mean += e / ens.size();
                EXPECT_NEAR(res.value, std::log(double(m)) + mean, 1e-9);
            }
        }
    }
}
