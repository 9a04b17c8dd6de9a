#include <doctest.h>

#include <stdexcept>

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "msort/bubble.hpp"
#include "msort/oracle.hpp"
#include "msort/sortnet.hpp"
#include "test_util.hpp"

using namespace msort;
using namespace msort::test;

namespace {

StructuredList worked_example() {
    return StructuredList{entries_from_keys({1, 6, 2, 2, 3, 4, 4, 6})};
}

}  // namespace

TEST_CASE("the worked example traces through three restricted rounds") {
    const BubbleRun run = run_bubble_traced(worked_example(), BubbleMode::FirstLOnly);
    REQUIRE(run.rounds.size() == 3);
    CHECK(run.rounds[0].swap_set == std::vector<std::uint32_t>{2});
    CHECK(run.rounds[1].swap_set == std::vector<std::uint32_t>{3});
    CHECK(run.rounds[2].swap_set == std::vector<std::uint32_t>{4});
    CHECK(run.rounds[0].swaps_executed == std::vector<std::uint32_t>{2});

    const std::vector<std::uint32_t> final_keys = keys_of(run.final_list);
    const std::vector<std::uint32_t> first4(final_keys.begin(), final_keys.begin() + 4);
    CHECK(first4 == std::vector<std::uint32_t>{1, 2, 2, 3});

    CHECK(check_lemma(run).all_pass());
}

TEST_CASE("the full-sort run finishes the worked example and passes every check") {
    const BubbleRun run = run_bubble_traced(worked_example(), BubbleMode::FullSort);
    CHECK(run.final_list == full_sort_oracle(worked_example().entries));
    const LemmaReport report = check_lemma(run);
    CHECK(report.all_pass());
    CHECK(report.total_rounds == run.rounds.size());
}

TEST_CASE("already-sorted input terminates with zero rounds") {
    const StructuredList sorted{entries_from_keys({0, 1, 2, 3, 4, 5, 6, 7})};
    const BubbleRun run = run_bubble_traced(sorted, BubbleMode::FullSort);
    CHECK(run.rounds.empty());
    CHECK(run.final_list == sorted.entries);
    CHECK(check_lemma(run).all_pass());  // vacuous
}

TEST_CASE("key ties are not inversions") {
    const StructuredList ties{entries_from_keys({1, 1, 2, 2, 3, 3, 4, 4})};
    const BubbleRun run = run_bubble_traced(ties, BubbleMode::FullSort);
    CHECK(run.rounds.empty());
}

TEST_CASE("run_bubble_traced rejects unstructured input") {
    CHECK_THROWS_AS(
        run_bubble_traced(StructuredList{entries_from_keys({9, 1, 4, 4, 0, 3, 7, 2})},
                          BubbleMode::FullSort),
        std::invalid_argument);
}

TEST_CASE("parallel_round applies the one-round update") {
    const auto snapshot = entries_from_keys({1, 6, 2, 2, 3, 4, 4, 6});
    const std::vector<std::uint32_t> b = {2};
    CHECK(keys_of(parallel_round(snapshot, b)) ==
          std::vector<std::uint32_t>{1, 2, 6, 2, 3, 4, 4, 6});

    CHECK(parallel_round(snapshot, {}) == snapshot);

    const std::vector<std::uint32_t> adjacent = {2, 3};
    CHECK_THROWS_AS(parallel_round(snapshot, adjacent), std::invalid_argument);
    const std::vector<std::uint32_t> zero = {0};
    CHECK_THROWS_AS(parallel_round(snapshot, zero), std::invalid_argument);
}

TEST_CASE("every structured input passes the round checks, exhaustively for L=4") {
    std::size_t count = 0;
    InputGrid::exhaustive(4, 3).visit([&](const StructuredList& list) {
        const BubbleRun run = run_bubble_traced(list, BubbleMode::FullSort);
        REQUIRE(check_lemma(run).all_pass());
        ++count;
    });
    CHECK(count == 8960);
}

TEST_CASE("round checks hold on randomized inputs for larger L") {
    for (const std::uint32_t L : {8u, 16u, 32u}) {
        InputGrid::randomized(L, kDefaultKeyBits, 2000, 0xfeed + L)
            .visit([&](const StructuredList& list) {
                const BubbleRun run = run_bubble_traced(list, BubbleMode::FullSort);
                REQUIRE(check_lemma(run).all_pass());
                REQUIRE(run.rounds.size() <= 2 * L - 2);  // the network's stage budget
            });
    }
}

TEST_CASE("the restricted run stays within L-1 rounds and matches the oracle") {
    for (const std::uint32_t L : {4u, 8u, 16u}) {
        const InputGrid grid =
            L == 4 ? InputGrid::exhaustive(4, 3)
                   : InputGrid::randomized(L, kDefaultKeyBits, 3000, 0xabc + L);
        grid.visit([&](const StructuredList& list) {
            const BubbleRun run = run_bubble_traced(list, BubbleMode::FirstLOnly);
            REQUIRE(run.rounds.size() <= L - 1);
            const auto expected = select_l_smallest_oracle(list.entries);
            for (std::uint32_t w = 0; w < L; ++w) REQUIRE(run.final_list[w] == expected[w]);
        });
    }
}

TEST_CASE("the network is the algorithm") {
    for (const std::uint32_t L : {4u, 8u}) {
        const SortNetwork simplified = build_simplified_bubble(L);
        const SortNetwork full = build_full_bubble(L);
        const InputGrid grid =
            L == 4 ? InputGrid::exhaustive(4, 3)
                   : InputGrid::randomized(L, kDefaultKeyBits, 3000, 0x7777 + L);
        grid.visit([&](const StructuredList& list) {
            const BubbleRun restricted = run_bubble_traced(list, BubbleMode::FirstLOnly);
            const auto net_out = evaluate(simplified, list.entries);
            for (std::uint32_t w = 0; w < L; ++w)
                REQUIRE(net_out[w] == restricted.final_list[w]);

            const BubbleRun sorted = run_bubble_traced(list, BubbleMode::FullSort);
            REQUIRE(evaluate(full, list.entries) == sorted.final_list);
        });
    }
}

TEST_CASE("entries move at most one position per round") {
    InputGrid::randomized(8, kDefaultKeyBits, 1000, 0x51).visit([&](const StructuredList& list) {
        const BubbleRun run = run_bubble_traced(list, BubbleMode::FullSort);
        std::vector<std::vector<MetricEntry>> snapshots;
        for (const RoundTrace& trace : run.rounds) snapshots.push_back(trace.snapshot);
        snapshots.push_back(run.final_list);
        for (std::size_t r = 0; r + 1 < snapshots.size(); ++r) {
            std::map<std::uint32_t, std::size_t> pos;
            for (std::size_t w = 0; w < snapshots[r].size(); ++w)
                pos[snapshots[r][w].payload] = w;
            for (std::size_t w = 0; w < snapshots[r + 1].size(); ++w) {
                const std::size_t before = pos[snapshots[r + 1][w].payload];
                REQUIRE((before == w || before + 1 == w || before == w + 1));
            }
        }
    });
}

TEST_CASE("the first round only ever swaps at even inner positions") {
    for (const std::uint32_t L : {4u, 8u, 16u}) {
        InputGrid::randomized(L, kDefaultKeyBits, 2000, 0x31 + L)
            .visit([&](const StructuredList& list) {
                const BubbleRun run = run_bubble_traced(list, BubbleMode::FullSort);
                if (run.rounds.empty()) return;
                for (const std::uint32_t l : run.rounds.front().swap_set) {
                    REQUIRE(l % 2 == 0);
                    REQUIRE(l >= 2);
                    REQUIRE(l <= 2 * L - 2);
                }
            });
    }
}

TEST_CASE("trace export matches the golden file byte for byte") {
    const BubbleRun run = run_bubble_traced(worked_example(), BubbleMode::FirstLOnly);
    std::ifstream golden(std::string(MSORT_TEST_DATA_DIR) + "/worked_example_trace.jsonl");
    REQUIRE(golden.good());
    std::stringstream expected;
    expected << golden.rdbuf();
    CHECK(export_trace_jsonl(run) == expected.str());
}

TEST_CASE("trace export emits one JSON object per round") {
    const BubbleRun run = run_bubble_traced(worked_example(), BubbleMode::FirstLOnly);
    const std::string jsonl = export_trace_jsonl(run);

    std::istringstream lines(jsonl);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        REQUIRE(j["t"] == n + 1);
        REQUIRE(j["snapshot"].size() == 8);
        if (n == 0) {
            CHECK(j["snapshot"][1] == nlohmann::json::array({6, 1}));
            CHECK(j["b_set"] == nlohmann::json::array({2}));
            CHECK(j["swaps"] == nlohmann::json::array({2}));
        }
        ++n;
    }
    CHECK(n == 3);
}
