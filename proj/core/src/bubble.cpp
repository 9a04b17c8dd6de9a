#include "msort/bubble.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msort {

namespace {

// Adjacent inversion under strict key comparison; the round structure of the
// algorithm is a statement about key values, not about tie-broken order.
bool key_inverted(const MetricEntry& left, const MetricEntry& right) {
    return right.key < left.key;
}

std::vector<std::uint32_t> swap_set_of(std::span<const MetricEntry> m) {
    std::vector<std::uint32_t> b;
    for (std::uint32_t l = 1; l < m.size(); ++l)
        if (key_inverted(m[l - 1], m[l])) b.push_back(l);
    return b;
}

bool has_adjacent_inversion(std::span<const MetricEntry> m, std::size_t limit) {
    for (std::size_t l = 0; l + 1 < m.size() && l < limit; ++l)
        if (key_inverted(m[l], m[l + 1])) return true;
    return false;
}

}  // namespace

BubbleRun run_bubble_traced(const StructuredList& input, BubbleMode mode) {
    const ValidationResult check = validate_structured(input.entries);
    if (!check.ok())
        throw std::invalid_argument("run_bubble_traced: input is not a valid structured list");

    std::vector<MetricEntry> m = input.entries;
    const std::size_t limit =
        mode == BubbleMode::FullSort ? m.size() : input.list_size();

    BubbleRun run;
    std::uint32_t t = 0;
    while (has_adjacent_inversion(m, limit)) {
        RoundTrace trace;
        trace.round = ++t;
        trace.snapshot = m;
        trace.swap_set = swap_set_of(m);
        for (std::uint32_t l = static_cast<std::uint32_t>(m.size()) - 1; l >= 1; --l) {
            if (key_inverted(m[l - 1], m[l])) {
                std::swap(m[l - 1], m[l]);
                trace.swaps_executed.push_back(l);
            }
        }
        run.rounds.push_back(std::move(trace));
    }
    run.final_list = std::move(m);
    return run;
}

std::vector<MetricEntry> parallel_round(std::span<const MetricEntry> snapshot,
                                        std::span<const std::uint32_t> swap_set) {
    std::vector<char> in_set(snapshot.size() + 1, 0);
    for (const std::uint32_t l : swap_set) {
        if (l == 0 || l >= snapshot.size())
            throw std::invalid_argument("parallel_round: swap position out of range");
        in_set[l] = 1;
    }
    for (std::size_t l = 1; l + 1 < in_set.size(); ++l)
        if (in_set[l] && in_set[l + 1])
            throw std::invalid_argument("parallel_round: swap set contains adjacent positions");

    std::vector<MetricEntry> next(snapshot.size());
    for (std::size_t l = 0; l < snapshot.size(); ++l) {
        if (in_set[l])
            next[l] = snapshot[l - 1];
        else if (l + 1 < in_set.size() && in_set[l + 1])
            next[l] = snapshot[l + 1];
        else
            next[l] = snapshot[l];
    }
    return next;
}

bool LemmaReport::all_pass() const {
    if (!first_round_even_only) return false;
    return std::all_of(rounds.begin(), rounds.end(),
                       [](const RoundChecks& c) { return c.all(); });
}

LemmaReport check_lemma(const BubbleRun& run) {
    LemmaReport report;
    report.total_rounds = static_cast<std::uint32_t>(run.rounds.size());

    if (!run.rounds.empty()) {
        for (const std::uint32_t l : run.rounds.front().swap_set)
            if (l % 2 != 0 || l + 1 >= run.rounds.front().snapshot.size())
                report.first_round_even_only = false;
    }

    for (std::size_t r = 0; r < run.rounds.size(); ++r) {
        const RoundTrace& trace = run.rounds[r];
        RoundChecks checks;

        for (std::size_t k = 0; k + 1 < trace.swap_set.size(); ++k)
            if (trace.swap_set[k] + 1 == trace.swap_set[k + 1]) checks.non_adjacent = false;

        std::vector<std::uint32_t> executed = trace.swaps_executed;
        std::sort(executed.begin(), executed.end());
        checks.swaps_match = executed == trace.swap_set;

        const std::vector<MetricEntry>& next_snapshot =
            r + 1 < run.rounds.size() ? run.rounds[r + 1].snapshot : run.final_list;

        if (r + 1 < run.rounds.size()) {
            const std::vector<std::uint32_t>& next_set = run.rounds[r + 1].swap_set;
            for (const std::uint32_t l : next_set)
                if (!std::binary_search(trace.swap_set.begin(), trace.swap_set.end(), l - 1))
                    checks.subset_shift = false;
        }

        for (const std::uint32_t l : trace.swap_set)
            if (l >= 2 && trace.snapshot[l].key < trace.snapshot[l - 2].key)
                checks.key_floor = false;

        checks.evolution = parallel_round(trace.snapshot, trace.swap_set) == next_snapshot;

        const std::uint32_t want_parity = trace.round % 2 == 1 ? 0 : 1;
        for (const std::uint32_t l : trace.swap_set)
            if (l % 2 != want_parity) checks.parity = false;

        report.rounds.push_back(checks);
    }
    return report;
}

std::string export_trace_jsonl(const BubbleRun& run) {
    std::ostringstream os;
    for (const RoundTrace& trace : run.rounds) {
        nlohmann::json snapshot = nlohmann::json::array();
        for (const MetricEntry& e : trace.snapshot) snapshot.push_back({e.key.value, e.payload});
        const nlohmann::json j = {{"t", trace.round},
                                  {"snapshot", std::move(snapshot)},
                                  {"b_set", trace.swap_set},
                                  {"swaps", trace.swaps_executed}};
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace msort
