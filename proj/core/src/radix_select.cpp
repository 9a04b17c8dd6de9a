#include "msort/radix_select.hpp"

#include <cassert>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msort {

namespace {

void require_min_size(std::uint32_t list_size, const char* who) {
    if (list_size < 2)
        throw std::invalid_argument(std::string(who) + ": list size must be at least 2");
}

}  // namespace

RankSelectPlan plan_full(std::uint32_t list_size) {
    require_min_size(list_size, "plan_full");
    const std::uint32_t n = 2 * list_size;

    RankSelectPlan plan;
    plan.list_size = list_size;
    plan.pruned = false;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) plan.comparator_pairs.emplace_back(i, j);

    std::vector<std::uint32_t> all(n);
    for (std::uint32_t w = 0; w < n; ++w) all[w] = w;
    plan.output_slots.assign(list_size, all);

    assert(plan.comparator_pairs.size() == std::size_t{list_size} * (2 * list_size - 1));
    return plan;
}

RankSelectPlan plan_pruned(std::uint32_t list_size) {
    require_min_size(list_size, "plan_pruned");
    const std::uint32_t n = 2 * list_size;

    RankSelectPlan plan;
    plan.list_size = list_size;
    plan.pruned = true;
    // Candidates are wires 0..2L-2: the top wire never reaches the L smallest.
    // Even-smaller-index pairs are known; only odd-first pairs need hardware.
    for (std::uint32_t i = 0; i < n - 1; ++i)
        for (std::uint32_t j = i + 1; j < n - 1; ++j)
            (i % 2 == 1 ? plan.comparator_pairs : plan.known_table).emplace_back(i, j);

    plan.output_slots.resize(list_size);
    plan.output_slots[0] = {0};
    std::vector<std::uint32_t> middle;
    for (std::uint32_t w = 1; w < n - 1; ++w) middle.push_back(w);
    for (std::uint32_t r = 1; r < list_size; ++r) plan.output_slots[r] = middle;

    assert(plan.comparator_pairs.size() ==
           std::size_t{list_size - 1} * std::size_t{list_size - 1});
    return plan;
}

RankVector compute_ranks(const RankSelectPlan& plan, std::span<const MetricEntry> input) {
    const std::uint32_t n = 2 * plan.list_size;
    if (input.size() != n)
        throw std::invalid_argument("compute_ranks: input length does not match the plan");

    const std::uint32_t candidates = plan.pruned ? n - 1 : n;
    RankVector ranks(candidates, 0);
    const auto count = [&](std::uint32_t i, std::uint32_t j) {
        if (precedes(input[i], input[j]))
            ++ranks[j];
        else
            ++ranks[i];
    };
    for (const auto& [i, j] : plan.comparator_pairs) count(i, j);
    for (const auto& [i, j] : plan.known_table) ++ranks[j];
    return ranks;
}

std::vector<MetricEntry> select(const RankSelectPlan& plan, std::span<const MetricEntry> input) {
    const std::uint32_t n = 2 * plan.list_size;
    if (input.size() != n)
        throw std::invalid_argument("select: input length does not match the plan");
    if (plan.pruned) {
        const ValidationResult check = validate_structured(input);
        if (!check.ok())
            throw std::invalid_argument("select: input violates the structured-list contract");
    }

    const RankVector ranks = compute_ranks(plan, input);
    std::vector<MetricEntry> out(plan.list_size);
    std::vector<char> filled(plan.list_size, 0);
    for (std::uint32_t w = 0; w < ranks.size(); ++w) {
        if (ranks[w] >= plan.list_size) continue;
        if (filled[ranks[w]]++)
            throw std::runtime_error("select: rank collision; known table contradicts the input");
        out[ranks[w]] = input[w];
    }
    for (std::uint32_t r = 0; r < plan.list_size; ++r)
        if (!filled[r]) throw std::runtime_error("select: rank " + std::to_string(r) + " unassigned");
    return out;
}

std::string export_plan_json(const RankSelectPlan& plan) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [i, j] : plan.comparator_pairs) pairs.push_back({i, j});
    const nlohmann::json j = {{"arch", plan.pruned ? "radix-pruned" : "radix"},
                              {"L", plan.list_size},
                              {"pairs", std::move(pairs)}};
    return j.dump(2) + "\n";
}

}  // namespace msort
