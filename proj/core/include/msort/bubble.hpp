#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "msort/metric.hpp"

namespace msort {

/// One round of the sequential bubble sort, as observed at the round start.
/// swap_set holds the positions whose entry is strictly key-smaller than its
/// left neighbour in the snapshot; swaps_executed records where the swap
/// actually fired while the loop ran downward over the live array.
struct RoundTrace {
    std::uint32_t round = 0;  // t, starting at 1
    std::vector<MetricEntry> snapshot;
    std::vector<std::uint32_t> swap_set;        // B_t, ascending
    std::vector<std::uint32_t> swaps_executed;  // in loop order 2L-1 .. 1
};

enum class BubbleMode {
    FullSort,    // run until no adjacent inversion remains anywhere
    FirstLOnly,  // run until the first L+1 entries are in order
};

struct BubbleRun {
    std::vector<MetricEntry> final_list;
    std::vector<RoundTrace> rounds;
};

/// Sequential bubble sort with per-round tracing. The input must be a valid
/// structured list; the termination condition is checked at round boundaries.
BubbleRun run_bubble_traced(const StructuredList& input, BubbleMode mode);

/// Per-round verdicts for the data-dependency properties the parallel
/// implementation rests on.
struct RoundChecks {
    bool non_adjacent = true;   // swap set has no adjacent positions
    bool swaps_match = true;    // executed swaps == swap set
    bool subset_shift = true;   // next swap set within this one shifted by +1
    bool key_floor = true;      // entry at each swap position >= entry two left
    bool evolution = true;      // parallel one-round update reproduces the next snapshot
    bool parity = true;         // swap positions all even at odd rounds, all odd at even rounds

    bool all() const {
        return non_adjacent && swaps_match && subset_shift && key_floor && evolution && parity;
    }
};

struct LemmaReport {
    std::vector<RoundChecks> rounds;
    std::uint32_t total_rounds = 0;
    bool first_round_even_only = true;  // B_1 within {2, 4, ..., 2L-2}

    bool all_pass() const;
};

/// Checks every traced round of a run. Failures are reported, not thrown:
/// any failure means an implementation bug, so the caller gets the full
/// picture for diagnosis.
LemmaReport check_lemma(const BubbleRun& run);

/// Applies the one-round parallel update: position l takes its left
/// neighbour's entry if l is in the swap set, its right neighbour's if l+1
/// is, and keeps its own otherwise. Throws std::invalid_argument if the swap
/// set contains adjacent positions.
std::vector<MetricEntry> parallel_round(std::span<const MetricEntry> snapshot,
                                        std::span<const std::uint32_t> swap_set);

/// Round traces as JSON lines, one object per round.
std::string export_trace_jsonl(const BubbleRun& run);

}  // namespace msort
