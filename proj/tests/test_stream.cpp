#include <doctest.h>

#include <stdexcept>

#include <random>
#include <sstream>

#include "msort/stream.hpp"
#include "test_util.hpp"

using namespace msort;
using namespace msort::test;

namespace {

StreamConfig small_config(std::uint32_t list_size, std::size_t steps, std::uint64_t seed,
                          Architecture arch = Architecture::PrunedRadix) {
    StreamConfig config;
    config.list_size = list_size;
    config.steps = steps;
    config.seed = seed;
    config.sorter = arch;
    config.profile = IncrementProfile::UniformSmall;
    config.small_max = 3;
    return config;
}

}  // namespace

TEST_CASE("zero increments leave the survivors in place") {
    StreamConfig config = small_config(4, 1, 1);
    config.small_max = 0;  // every increment is 0
    const FirstLSorter sorter = make_first_l_sorter(config.sorter, config.list_size);
    std::mt19937_64 rng(config.seed);

    const StreamState before = initial_state(config);
    const StreamState after = step(before, config, rng, sorter);
    CHECK(after.mu == before.mu);
    REQUIRE(after.lineage.size() == 1);
    CHECK(after.lineage[0] == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("a saturated state is a fixed point") {
    StreamConfig config = small_config(4, 1, 2);
    config.profile = IncrementProfile::UniformFull;
    const FirstLSorter sorter = make_first_l_sorter(config.sorter, config.list_size);
    std::mt19937_64 rng(config.seed);

    StreamState state;
    state.mu.assign(4, MetricKey{255});
    const StreamState after = step(std::move(state), config, rng, sorter);
    CHECK(after.mu == std::vector<MetricKey>(4, MetricKey{255}));
}

TEST_CASE("the survivors stay sorted and their minimum never decreases") {
    StreamConfig config = small_config(8, 1, 3);
    config.profile = IncrementProfile::QuantizedHalfNormal;
    const FirstLSorter sorter = make_first_l_sorter(config.sorter, config.list_size);
    std::mt19937_64 rng(config.seed);

    // Start from a spread-out state so forks actually displace survivors.
    StreamState state = initial_state(config);
    state.mu = {MetricKey{3},   MetricKey{40},  MetricKey{90},  MetricKey{120},
                MetricKey{150}, MetricKey{180}, MetricKey{220}, MetricKey{255}};
    MetricKey last_min = state.mu.front();
    bool displaced = false;
    for (int s = 0; s < 300; ++s) {
        const std::vector<MetricKey> before = state.mu;
        state = step(std::move(state), config, rng, sorter);
        REQUIRE(std::is_sorted(state.mu.begin(), state.mu.end()));
        REQUIRE(last_min <= state.mu.front());
        last_min = state.mu.front();
        if (state.mu != before) displaced = true;
    }
    CHECK(displaced);
}

TEST_CASE("a single-step run equals one step call") {
    const StreamConfig config = small_config(4, 1, 7);
    const StreamSummary summary = run_stream(config);

    const FirstLSorter sorter = make_first_l_sorter(config.sorter, config.list_size);
    std::mt19937_64 rng(config.seed);
    const StreamState state = step(initial_state(config), config, rng, sorter);
    CHECK(summary.final_mu == state.mu);
    CHECK(summary.steps == 1);
}

TEST_CASE("identical seeds give identical summaries") {
    const StreamConfig config = small_config(8, 200, 11);
    const StreamSummary a = run_stream(config);
    const StreamSummary b = run_stream(config);
    CHECK(a.final_mu == b.final_mu);
    CHECK(a.lineage_digest == b.lineage_digest);

    StreamConfig other = config;
    other.seed = 12;
    CHECK(run_stream(other).lineage_digest != a.lineage_digest);
}

TEST_CASE("checked long streams report zero violations") {
    StreamConfig config = small_config(8, 1000, 5);
    config.check = true;
    const StreamSummary summary = run_stream(config);
    CHECK(summary.steps == 1000);
    CHECK(summary.violations == 0);
    CHECK(summary.ok());
}

TEST_CASE("every architecture drives the same trajectory") {
    const Architecture archs[] = {Architecture::Bitonic,   Architecture::PrunedBitonic,
                                  Architecture::Bubble,    Architecture::SimplifiedBubble,
                                  Architecture::Radix,     Architecture::PrunedRadix};
    StreamSummary reference;
    bool have_reference = false;
    for (const Architecture arch : archs) {
        const StreamSummary summary = run_stream(small_config(4, 200, 21, arch));
        if (!have_reference) {
            reference = summary;
            have_reference = true;
            continue;
        }
        CHECK(summary.final_mu == reference.final_mu);
        CHECK(summary.lineage_digest == reference.lineage_digest);
    }
}

TEST_CASE("CSV output has a header and one sorted row per step") {
    const StreamConfig config = small_config(4, 10, 9);
    const std::string csv = run_stream_csv(config);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "step,mu_0,mu_1,mu_2,mu_3");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string field;
        std::vector<std::uint32_t> values;
        while (std::getline(fields, field, ',')) values.push_back(std::stoul(field));
        REQUIRE(values.size() == 5);
        CHECK(values[0] == rows);
        CHECK(std::is_sorted(values.begin() + 1, values.end()));
    }
    CHECK(rows == 10);
}

TEST_CASE("summaries serialize to JSON") {
    const StreamSummary summary = run_stream(small_config(4, 5, 33));
    const std::string json = summary_to_json(summary);
    CHECK(json.find("\"steps\": 5") != std::string::npos);
    CHECK(json.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("configs are validated") {
    StreamConfig config = small_config(1, 10, 0);
    CHECK_THROWS_AS(initial_state(config), std::invalid_argument);
    config = small_config(4, 0, 0);
    CHECK_THROWS_AS(initial_state(config), std::invalid_argument);
}
