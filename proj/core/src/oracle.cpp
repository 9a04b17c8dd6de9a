#include "msort/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "msort/radix_select.hpp"
#include "msort/sortnet.hpp"

namespace msort {

std::vector<MetricEntry> full_sort_oracle(std::span<const MetricEntry> input) {
    std::vector<MetricEntry> sorted(input.begin(), input.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const MetricEntry e = sorted[i];
        std::size_t j = i;
        while (j > 0 && precedes(e, sorted[j - 1])) {
            sorted[j] = sorted[j - 1];
            --j;
        }
        sorted[j] = e;
    }
    return sorted;
}

std::vector<MetricEntry> select_l_smallest_oracle(std::span<const MetricEntry> input) {
    std::unordered_set<std::uint32_t> payloads;
    for (const MetricEntry& e : input)
        if (!payloads.insert(e.payload).second)
            throw std::invalid_argument("select_l_smallest_oracle: duplicate payloads");

    std::vector<MetricEntry> sorted = full_sort_oracle(input);
    sorted.resize(input.size() / 2);
    return sorted;
}

FirstLSorter make_first_l_sorter(Architecture arch, std::uint32_t list_size) {
    switch (arch) {
        case Architecture::Radix:
            return [plan = plan_full(list_size)](const StructuredList& in) {
                return select(plan, in.entries);
            };
        case Architecture::PrunedRadix:
            return [plan = plan_pruned(list_size)](const StructuredList& in) {
                return select(plan, in.entries);
            };
        case Architecture::Bitonic:
        case Architecture::PrunedBitonic:
        case Architecture::Bubble:
        case Architecture::SimplifiedBubble: {
            SortNetwork net;
            if (arch == Architecture::Bitonic) net = build_bitonic(list_size);
            if (arch == Architecture::PrunedBitonic) net = build_pruned_bitonic(list_size);
            if (arch == Architecture::Bubble) net = build_full_bubble(list_size);
            if (arch == Architecture::SimplifiedBubble) net = build_simplified_bubble(list_size);
            return [net = std::move(net), list_size](const StructuredList& in) {
                std::vector<MetricEntry> out = evaluate(net, in.entries);
                out.resize(list_size);
                return out;
            };
        }
    }
    throw std::invalid_argument("make_first_l_sorter: unknown architecture");
}

std::vector<MetricKey> sort_arbitrary_via_sorter(std::span<const MetricKey> values,
                                                 std::uint32_t list_size, const FirstLSorter& sorter,
                                                 KeyDomain domain) {
    if (values.empty()) return {};
    if (values.size() > list_size)
        throw std::invalid_argument("sort_arbitrary_via_sorter: more values than the list size");

    std::vector<MetricKey> remaining(values.begin(), values.end());
    std::vector<MetricKey> sorted;
    sorted.reserve(values.size());
    while (remaining.size() > 1) {
        const StructuredList embedded = embed_arbitrary(remaining, list_size, domain);
        const std::vector<MetricEntry> smallest = sorter(embedded);
        const MetricKey minimum = smallest.back().key;  // last slot holds min(values)
        const auto it = std::find(remaining.begin(), remaining.end(), minimum);
        if (it == remaining.end())
            throw std::runtime_error("sort_arbitrary_via_sorter: sorter returned a foreign key");
        sorted.push_back(minimum);
        remaining.erase(it);
    }
    sorted.push_back(remaining.front());
    return sorted;
}

InputGrid InputGrid::exhaustive(std::uint32_t list_size, std::uint32_t key_max) {
    InputGrid grid;
    grid.exhaustive_ = true;
    grid.list_size_ = list_size;
    grid.key_max_ = key_max;
    return grid;
}

InputGrid InputGrid::randomized(std::uint32_t list_size, unsigned q_bits, std::size_t trials,
                                std::uint64_t seed, IncrementStyle style) {
    InputGrid grid;
    grid.exhaustive_ = false;
    grid.list_size_ = list_size;
    grid.q_bits_ = q_bits;
    grid.trials_ = trials;
    grid.seed_ = seed;
    grid.style_ = style;
    return grid;
}

void InputGrid::visit(const std::function<void(const StructuredList&)>& fn) const {
    const std::uint32_t L = list_size_;
    if (exhaustive_) {
        // All non-decreasing mu tuples over {0..key_max}, odometer over a.
        std::vector<MetricKey> mu(L, MetricKey{0});
        std::vector<MetricKey> a(L, MetricKey{0});
        bool more_mu = true;
        while (more_mu) {
            std::fill(a.begin(), a.end(), MetricKey{0});
            bool more_a = true;
            while (more_a) {
                fn(make_structured(mu, a, KeyDomain{q_bits_}));
                more_a = false;
                for (std::size_t i = L; i-- > 0;) {
                    if (a[i].value < key_max_) {
                        ++a[i].value;
                        std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(),
                                  MetricKey{0});
                        more_a = true;
                        break;
                    }
                }
            }
            more_mu = false;
            for (std::size_t i = L; i-- > 0;) {
                if (mu[i].value < key_max_) {
                    const std::uint32_t next = mu[i].value + 1;
                    for (std::size_t k = i; k < L; ++k) mu[k].value = next;
                    more_mu = true;
                    break;
                }
            }
        }
        return;
    }

    std::mt19937_64 rng(seed_);
    const KeyDomain domain{q_bits_};
    std::uniform_int_distribution<std::uint32_t> key_dist(0, domain.max_value());
    std::uniform_int_distribution<std::uint32_t> inc_dist(
        0, style_ == IncrementStyle::FullRange ? domain.max_value() : 3u);
    std::vector<MetricKey> mu(L), a(L);
    for (std::size_t t = 0; t < trials_; ++t) {
        for (auto& k : mu) k.value = key_dist(rng);
        std::sort(mu.begin(), mu.end());
        for (auto& k : a) k.value = inc_dist(rng);
        fn(make_structured(mu, a, domain));
    }
}

std::size_t InputGrid::expected_count() const {
    if (!exhaustive_) return trials_;
    // C(key_max + L, L) non-decreasing tuples times (key_max+1)^L increments.
    std::size_t tuples = 1;
    for (std::uint32_t i = 1; i <= list_size_; ++i)
        tuples = tuples * (key_max_ + i) / i;
    std::size_t incs = 1;
    for (std::uint32_t i = 0; i < list_size_; ++i) incs *= key_max_ + 1;
    return tuples * incs;
}

std::string InputGrid::describe() const {
    std::ostringstream os;
    if (exhaustive_)
        os << "exhaustive L=" << list_size_ << " keys 0.." << key_max_;
    else
        os << "random L=" << list_size_ << " Q=" << q_bits_ << " trials=" << trials_
           << " seed=" << seed_
           << (style_ == IncrementStyle::SmallIncrements ? " small-increments" : "");
    return os.str();
}

EquivalenceReport equivalence_suite(std::span<const Architecture> architectures,
                                    const InputGrid& grid) {
    std::vector<std::pair<Architecture, FirstLSorter>> sorters;
    sorters.reserve(architectures.size());
    for (const Architecture arch : architectures)
        sorters.emplace_back(arch, make_first_l_sorter(arch, grid.list_size()));
    return equivalence_suite(sorters, grid);
}

EquivalenceReport equivalence_suite(
    std::span<const std::pair<Architecture, FirstLSorter>> sorters, const InputGrid& grid) {
    EquivalenceReport report;
    report.grid = grid.describe();
    report.seed = grid.seed();
    const std::uint32_t top_payload = 2 * grid.list_size() - 1;

    grid.visit([&](const StructuredList& input) {
        ++report.inputs;
        const std::vector<MetricEntry> expected = select_l_smallest_oracle(input.entries);
        for (const MetricEntry& e : expected)
            if (e.payload == top_payload) report.top_wire_excluded = false;
        for (const auto& [arch, sorter] : sorters) {
            const std::vector<MetricEntry> got = sorter(input);
            if (got != expected) {
                ++report.mismatches;
                if (!report.first_mismatch)
                    report.first_mismatch = Mismatch{arch, input.entries, expected, got};
            }
            for (const MetricEntry& e : got)
                if (e.payload == top_payload) report.top_wire_excluded = false;
        }
    });
    return report;
}

namespace {

nlohmann::json entries_to_json(std::span<const MetricEntry> entries) {
    nlohmann::json j = nlohmann::json::array();
    for (const MetricEntry& e : entries) j.push_back({e.key.value, e.payload});
    return j;
}

}  // namespace

std::string report_to_json(const EquivalenceReport& report) {
    nlohmann::json j = {{"grid", report.grid},
                        {"seed", report.seed},
                        {"inputs", report.inputs},
                        {"mismatches", report.mismatches},
                        {"top_wire_excluded", report.top_wire_excluded},
                        {"ok", report.ok()}};
    if (report.first_mismatch) {
        const Mismatch& m = *report.first_mismatch;
        j["first_mismatch"] = {{"arch", to_string(m.arch)},
                               {"input", entries_to_json(m.input)},
                               {"expected", entries_to_json(m.expected)},
                               {"got", entries_to_json(m.got)}};
    }
    return j.dump(2) + "\n";
}

}  // namespace msort
