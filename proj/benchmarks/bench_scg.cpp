#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "scg/equilibrium_1d.hpp"
#include "scg/equilibrium_nd.hpp"
#include "scg/subsidy_welfare.hpp"

using namespace scg;

namespace {

Scenario example1() {
    ScenarioParams p;
    p.group_a = {Distribution::uniform(), CostFunction::sqrt_linear(8, 1), {0.4}};
    p.group_b = {Distribution::uniform(), CostFunction::sqrt_linear(12, 0), {0.3}};
    p.lambda = 0.75;
    return Scenario(p);
}

void BM_LearnerCost1D(benchmark::State& state) {
    const auto s = example1();
    const auto plan = SubsidyPlan::proportional(0.558);
    for (auto _ : state) benchmark::DoNotOptimize(learner_cost_1d(s, {0.546}, plan));
}
BENCHMARK(BM_LearnerCost1D);

void BM_EquilibriumThreshold(benchmark::State& state) {
    const auto s = example1();
    const SearchOptions opts{static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(equilibrium_threshold(s, SubsidyPlan::none(), opts));
}
BENCHMARK(BM_EquilibriumThreshold)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_OptimizeSubsidy(benchmark::State& state) {
    const auto s = example1();
    SubsidySearchOptions opts;
    opts.sigma_grid = opts.param_grid = static_cast<std::size_t>(state.range(0));
    const auto family = state.range(1) ? SubsidyFamily::Flat : SubsidyFamily::Proportional;
    for (auto _ : state) benchmark::DoNotOptimize(optimize_subsidy(s, family, opts));
}
BENCHMARK(BM_OptimizeSubsidy)->Args({64, 0})->Args({512, 0})->Args({64, 1})->Unit(benchmark::kMillisecond);

void BM_BestResponseND(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> c(d), g(d);
    for (std::size_t i = 0; i < d; ++i) {
        c[i] = 1.0 + 4.0 * u(rng);
        g[i] = 0.1 + u(rng);
    }
    const LinearCostVector costs{c};
    double gsum = 0.0;
    for (double w : g) gsum += w;
    const Hyperplane h{g, 0.7 * gsum};
    std::vector<std::vector<double>> xs(1024, std::vector<double>(d));
    for (auto& x : xs) {
        for (auto& v : x) v = u(rng);
    }
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(best_response_nd(xs[i++ & 1023], costs, h));
}
BENCHMARK(BM_BestResponseND)->DenseRange(1, 4);

void BM_LearnerCostND(benchmark::State& state) {
    GroupND a{{Distribution::uniform(), Distribution::uniform()}, LinearCostVector{{2, 3}}, {{1, 1}, 1.0}};
    GroupND b{{Distribution::uniform(), Distribution::uniform()}, LinearCostVector{{3, 5}}, {{1, 1}, 1.0}};
    ScenarioNDParams p;
    p.group_a = a;
    p.group_b = b;
    const ScenarioND s(p);
    const MonteCarloOptions mc{static_cast<std::size_t>(state.range(0)), 7};
    for (auto _ : state) benchmark::DoNotOptimize(learner_cost_nd(s, {{1, 1}, 1.4}, SubsidyPlan::none(), mc));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_LearnerCostND)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
