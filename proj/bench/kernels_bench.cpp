#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "mmlb/kernels.hpp"

namespace {

namespace ser = mmlb::kernels::serial;
namespace par = mmlb::kernels::parallel;

std::vector<double> random_values(std::size_t count, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> out(count);
    for (double& v : out) v = unit(gen);
    return out;
}

// Members are left unnormalized; the kernels do not care.
struct Packed {
    std::size_t members;
    std::size_t points;
    std::vector<double> data;
    std::vector<double> prior;
};

Packed make_packed(std::size_t members, std::size_t points) {
    return {members, points, random_values(members * points, 7),
            std::vector<double>(members, 1.0 / static_cast<double>(members))};
}

template <bool Parallel>
void BM_Sum(benchmark::State& state) {
    const auto values = random_values(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        double s = Parallel ? par::sum(values) : ser::sum(values);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_BayesMass(benchmark::State& state) {
    const auto p = make_packed(16, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        double m = Parallel ? par::bayes_mass(p.data, p.members, p.points, p.prior)
                            : ser::bayes_mass(p.data, p.members, p.points, p.prior);
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}

template <bool Parallel>
void BM_MapAssign(benchmark::State& state) {
    const auto p = make_packed(16, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto c = Parallel ? par::map_assign(p.data, p.members, p.points, p.prior)
                          : ser::map_assign(p.data, p.members, p.points, p.prior);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}

template <bool Parallel>
void BM_MinPairwise(benchmark::State& state) {
    const std::size_t count = static_cast<std::size_t>(state.range(0));
    const auto xs = random_values(count, 3);
    const auto dist = [&](std::size_t i, std::size_t j) { return std::abs(xs[i] - xs[j]); };
    for (auto _ : state) {
        double m = Parallel ? par::min_pairwise(count, 1e300, dist) : ser::min_pairwise(count, 1e300, dist);
        benchmark::DoNotOptimize(m);
    }
}

template <bool Parallel>
void BM_ProductStep(benchmark::State& state) {
    const auto acc = random_values(static_cast<std::size_t>(state.range(0)), 4);
    const auto base = random_values(10, 5);
    for (auto _ : state) {
        auto out = Parallel ? par::product_step(acc, base) : ser::product_step(acc, base);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

template <bool Parallel>
void BM_Evaluate(benchmark::State& state) {
    const std::size_t count = static_cast<std::size_t>(state.range(0));
    const auto fn = [](std::size_t i) { return std::log1p(std::sqrt(static_cast<double>(i))); };
    for (auto _ : state) {
        auto out = Parallel ? par::evaluate(count, fn) : ser::evaluate(count, fn);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Sum<false>)->Name("sum/serial")->Range(1 << 10, 1 << 22);
BENCHMARK(BM_Sum<true>)->Name("sum/parallel")->Range(1 << 10, 1 << 22);
BENCHMARK(BM_BayesMass<false>)->Name("bayes_mass/serial")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_BayesMass<true>)->Name("bayes_mass/parallel")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_MapAssign<false>)->Name("map_assign/serial")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_MapAssign<true>)->Name("map_assign/parallel")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_MinPairwise<false>)->Name("min_pairwise/serial")->Range(64, 4096);
BENCHMARK(BM_MinPairwise<true>)->Name("min_pairwise/parallel")->Range(64, 4096);
BENCHMARK(BM_ProductStep<false>)->Name("product_step/serial")->Range(1 << 8, 1 << 18);
BENCHMARK(BM_ProductStep<true>)->Name("product_step/parallel")->Range(1 << 8, 1 << 18);
BENCHMARK(BM_Evaluate<false>)->Name("evaluate/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_Evaluate<true>)->Name("evaluate/parallel")->Range(1 << 10, 1 << 20);

BENCHMARK_MAIN();
