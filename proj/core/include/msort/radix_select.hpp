#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msort/metric.hpp"

namespace msort {

/// Comparator-matrix sorter: a set of pairs evaluated at runtime, a table of
/// statically resolved precedences, and per-output multiplexer slot sets.
/// The full plan compares all pairs; the pruned plan keeps only the pairs the
/// structured-list contract leaves open and drops the top wire entirely.
struct RankSelectPlan {
    std::uint32_t list_size = 0;
    bool pruned = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> comparator_pairs;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> known_table;  // (i, j): i precedes j
    std::vector<std::vector<std::uint32_t>> output_slots;              // wires feeding output r
};

RankSelectPlan plan_full(std::uint32_t list_size);
RankSelectPlan plan_pruned(std::uint32_t list_size);

/// Number of entries preceding each candidate wire, restricted to the plan's
/// candidate set. Ranks form a permutation of 0..candidates-1.
using RankVector = std::vector<std::uint32_t>;

/// Evaluates the plan's comparators, fills in the known precedences, and
/// returns the entries of rank 0..L-1 in order. Pruned plans reject inputs
/// violating the structured-list contract (std::invalid_argument).
std::vector<MetricEntry> select(const RankSelectPlan& plan, std::span<const MetricEntry> input);

/// Exposed for rank-soundness and mux-structure tests.
RankVector compute_ranks(const RankSelectPlan& plan, std::span<const MetricEntry> input);

std::string export_plan_json(const RankSelectPlan& plan);

}  // namespace msort
