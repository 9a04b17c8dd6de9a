#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "msort/oracle.hpp"
#include "msort/sortnet.hpp"
#include "test_util.hpp"

using namespace msort;
using namespace msort::test;

TEST_CASE("the oracle selects the sorted L smallest") {
    const auto input = entries_from_keys({1, 6, 2, 2, 3, 4, 4, 6});
    const auto out = select_l_smallest_oracle(input);
    CHECK(keys_of(out) == std::vector<std::uint32_t>{1, 2, 2, 3});
    CHECK(payloads_of(out) == std::vector<std::uint32_t>{0, 2, 3, 4});

    CHECK(payloads_of(select_l_smallest_oracle(entries_from_keys({5, 5, 5, 5, 5, 5, 5, 5}))) ==
          std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(keys_of(select_l_smallest_oracle(entries_from_keys({1, 1, 2, 2, 3, 3, 4, 4}))) ==
          std::vector<std::uint32_t>{1, 1, 2, 2});
}

TEST_CASE("the oracle rejects duplicate payloads") {
    std::vector<MetricEntry> input = entries_from_keys({1, 2, 3, 4});
    input[3].payload = 0;
    CHECK_THROWS_AS(select_l_smallest_oracle(input), std::invalid_argument);
}

TEST_CASE("oracle output is sorted and drawn from the input") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint32_t> dist(0, 255);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<MetricEntry> input(16);
        for (std::uint32_t w = 0; w < 16; ++w) input[w] = {MetricKey{dist(rng)}, w};
        const auto out = select_l_smallest_oracle(input);
        REQUIRE(out.size() == 8);
        REQUIRE(std::is_sorted(out.begin(), out.end(), TotalOrder{}));
        for (const MetricEntry& e : out)
            REQUIRE(std::count(input.begin(), input.end(), e) == 1);
    }
}

TEST_CASE("repeated embedding sorts arbitrary values through any pruned sorter") {
    for (const Architecture arch :
         {Architecture::PrunedBitonic, Architecture::SimplifiedBubble, Architecture::PrunedRadix}) {
        const FirstLSorter sorter = make_first_l_sorter(arch, 4);
        const auto sorted = sort_arbitrary_via_sorter(keys({5, 2, 7, 2}), 4, sorter);
        CHECK(sorted == keys({2, 2, 5, 7}));

        CHECK(sort_arbitrary_via_sorter(keys({9}), 4, sorter) == keys({9}));
        CHECK(sort_arbitrary_via_sorter(keys({1, 2, 3, 4}), 4, sorter) == keys({1, 2, 3, 4}));
        CHECK_THROWS_AS(sort_arbitrary_via_sorter(keys({5, 0}), 4, sorter), std::invalid_argument);
    }
}

TEST_CASE("repeated embedding matches an elementary sort on every small multiset") {
    const FirstLSorter sorter = make_first_l_sorter(Architecture::PrunedRadix, 4);
    std::size_t cases = 0;
    for (std::uint32_t v0 = 1; v0 <= 6; ++v0)
        for (std::uint32_t v1 = 1; v1 <= 6; ++v1)
            for (std::uint32_t v2 = 1; v2 <= 6; ++v2)
                for (std::uint32_t v3 = 1; v3 <= 6; ++v3) {
                    const std::vector<MetricKey> values = keys({v0, v1, v2, v3});
                    std::vector<MetricKey> expected = values;
                    std::sort(expected.begin(), expected.end());
                    REQUIRE(sort_arbitrary_via_sorter(values, 4, sorter) == expected);
                    ++cases;
                }
    CHECK(cases == 1296);
}

TEST_CASE("exhaustive grids have the closed-form size") {
    std::size_t visited = 0;
    const InputGrid grid4 = InputGrid::exhaustive(4, 3);
    grid4.visit([&](const StructuredList&) { ++visited; });
    CHECK(visited == 8960);
    CHECK(grid4.expected_count() == 8960);

    const InputGrid grid2 = InputGrid::exhaustive(2, 7);
    CHECK(grid2.expected_count() == 2304);

    // Every yielded list is valid; away from saturation the keys determine
    // (mu, a) uniquely, so each tuple appears exactly once.
    std::size_t valid = 0;
    std::set<std::vector<std::uint32_t>> seen;
    grid4.visit([&](const StructuredList& list) {
        if (validate_structured(list.entries).ok()) ++valid;
        seen.insert(keys_of(list.entries));
    });
    CHECK(valid == 8960);
    CHECK(seen.size() == 8960);
}

TEST_CASE("randomized grids are reproducible from their seed") {
    std::vector<std::vector<std::uint32_t>> first, second, other;
    InputGrid::randomized(8, kDefaultKeyBits, 50, 12345)
        .visit([&](const StructuredList& list) { first.push_back(keys_of(list.entries)); });
    InputGrid::randomized(8, kDefaultKeyBits, 50, 12345)
        .visit([&](const StructuredList& list) { second.push_back(keys_of(list.entries)); });
    InputGrid::randomized(8, kDefaultKeyBits, 50, 54321)
        .visit([&](const StructuredList& list) { other.push_back(keys_of(list.entries)); });
    CHECK(first == second);
    CHECK(first != other);
}

TEST_CASE("the equivalence suite passes on the exhaustive small grid") {
    const std::vector<Architecture> archs = {
        Architecture::Bitonic, Architecture::PrunedBitonic,     Architecture::Bubble,
        Architecture::SimplifiedBubble, Architecture::Radix, Architecture::PrunedRadix};
    const EquivalenceReport report = equivalence_suite(archs, InputGrid::exhaustive(2, 7));
    CHECK(report.inputs == 2304);
    CHECK(report.mismatches == 0);
    CHECK(report.top_wire_excluded);
    CHECK(report.ok());
    CHECK(!report.first_mismatch);
}

TEST_CASE("the suite pins a corrupted network with a mismatch dump") {
    SortNetwork net = build_pruned_bitonic(4);
    // Flip the direction of the final compare; ties and inversions surface.
    REQUIRE(!net.stages.back().cas.empty());
    net.stages.back().cas.back().dir = CasDirection::Descending;

    std::vector<std::pair<Architecture, FirstLSorter>> sorters;
    sorters.emplace_back(Architecture::PrunedBitonic, [net](const StructuredList& list) {
        auto out = evaluate(net, list.entries);
        out.resize(4);
        return out;
    });
    const EquivalenceReport report = equivalence_suite(sorters, InputGrid::exhaustive(4, 3));
    CHECK(report.mismatches > 0);
    CHECK(!report.ok());
    REQUIRE(report.first_mismatch);
    CHECK(report.first_mismatch->arch == Architecture::PrunedBitonic);
    CHECK(report.first_mismatch->input.size() == 8);
    CHECK(report.first_mismatch->expected.size() == 4);
    CHECK(report.first_mismatch->got.size() == 4);
    CHECK(report.first_mismatch->got != report.first_mismatch->expected);

    const nlohmann::json j = nlohmann::json::parse(report_to_json(report));
    CHECK(j["ok"] == false);
    CHECK(j["first_mismatch"]["arch"] == "pruned-bitonic");
}

TEST_CASE("suite reports serialize with counts and seed") {
    const std::vector<Architecture> archs = {Architecture::PrunedRadix};
    const EquivalenceReport report =
        equivalence_suite(archs, InputGrid::randomized(4, kDefaultKeyBits, 100, 99));
    const nlohmann::json j = nlohmann::json::parse(report_to_json(report));
    CHECK(j["inputs"] == 100);
    CHECK(j["mismatches"] == 0);
    CHECK(j["seed"] == 99);
    CHECK(j["ok"] == true);
}
