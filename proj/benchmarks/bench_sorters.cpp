#include <benchmark/benchmark.h>

#include <random>

#include "msort/oracle.hpp"
#include "msort/radix_select.hpp"
#include "msort/sortnet.hpp"

namespace {

using namespace msort;

StructuredList random_input(std::uint32_t list_size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, 255);
    std::vector<MetricKey> mu(list_size), a(list_size);
    for (auto& k : mu) k.value = dist(rng);
    std::sort(mu.begin(), mu.end());
    for (auto& k : a) k.value = dist(rng);
    return make_structured(mu, a);
}

void BM_network(benchmark::State& state, SortNetwork (*build)(std::uint32_t)) {
    const auto list_size = static_cast<std::uint32_t>(state.range(0));
    const SortNetwork net = build(list_size);
    const StructuredList input = random_input(list_size, 7);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(net, input.entries));
    state.SetItemsProcessed(state.iterations());
}

void BM_radix(benchmark::State& state, RankSelectPlan (*plan_fn)(std::uint32_t)) {
    const auto list_size = static_cast<std::uint32_t>(state.range(0));
    const RankSelectPlan plan = plan_fn(list_size);
    const StructuredList input = random_input(list_size, 7);
    for (auto _ : state) benchmark::DoNotOptimize(select(plan, input.entries));
    state.SetItemsProcessed(state.iterations());
}

void BM_oracle(benchmark::State& state) {
    const auto list_size = static_cast<std::uint32_t>(state.range(0));
    const StructuredList input = random_input(list_size, 7);
    for (auto _ : state) benchmark::DoNotOptimize(select_l_smallest_oracle(input.entries));
    state.SetItemsProcessed(state.iterations());
}

void BM_build_pruned_bitonic(benchmark::State& state) {
    const auto list_size = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_pruned_bitonic(list_size));
}

BENCHMARK_CAPTURE(BM_network, bitonic, build_bitonic)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK_CAPTURE(BM_network, pruned_bitonic, build_pruned_bitonic)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK_CAPTURE(BM_network, bubble, build_full_bubble)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK_CAPTURE(BM_network, simplified_bubble, build_simplified_bubble)
    ->RangeMultiplier(2)
    ->Range(2, 32);
BENCHMARK_CAPTURE(BM_radix, full, plan_full)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK_CAPTURE(BM_radix, pruned, plan_pruned)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_oracle)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_build_pruned_bitonic)->RangeMultiplier(2)->Range(2, 32);

}  // namespace

BENCHMARK_MAIN();
