#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msort/arch.hpp"
#include "msort/metric.hpp"

namespace msort {

/// Brute-force ground truth. Deliberately a plain insertion sort so that no
/// tested architecture shares an algorithmic family with its checker.
std::vector<MetricEntry> full_sort_oracle(std::span<const MetricEntry> input);

/// Sorted L smallest of a 2L-entry input (L = input size / 2).
/// Throws std::invalid_argument on duplicate payloads.
std::vector<MetricEntry> select_l_smallest_oracle(std::span<const MetricEntry> input);

/// A sorter that maps a structured list to its sorted L smallest entries.
using FirstLSorter = std::function<std::vector<MetricEntry>(const StructuredList&)>;

/// Builds the named architecture for the given list size and wraps it as a
/// first-L sorter.
FirstLSorter make_first_l_sorter(Architecture arch, std::uint32_t list_size);

/// Sorts up to L arbitrary values by repeatedly embedding the remaining ones
/// into a structured list, running the sorter, and extracting the minimum
/// from the last meaningful output slot.
std::vector<MetricKey> sort_arbitrary_via_sorter(std::span<const MetricKey> values,
                                                 std::uint32_t list_size, const FirstLSorter& sorter,
                                                 KeyDomain domain = {});

enum class IncrementStyle {
    FullRange,         // a uniform over the whole key domain
    SmallIncrements,   // a uniform over {0..3}; stresses ties
};

/// Generator of valid structured lists, either every (mu, a) tuple over a
/// small key domain or seeded random draws over the full Q-bit domain.
class InputGrid {
public:
    static InputGrid exhaustive(std::uint32_t list_size, std::uint32_t key_max);
    static InputGrid randomized(std::uint32_t list_size, unsigned q_bits, std::size_t trials,
                                std::uint64_t seed, IncrementStyle style = IncrementStyle::FullRange);

    void visit(const std::function<void(const StructuredList&)>& fn) const;
    std::size_t expected_count() const;

    std::uint32_t list_size() const { return list_size_; }
    std::string describe() const;
    std::uint64_t seed() const { return seed_; }

private:
    bool exhaustive_ = true;
    std::uint32_t list_size_ = 0;
    std::uint32_t key_max_ = 0;
    unsigned q_bits_ = kDefaultKeyBits;
    std::size_t trials_ = 0;
    std::uint64_t seed_ = 0;
    IncrementStyle style_ = IncrementStyle::FullRange;
};

struct Mismatch {
    Architecture arch;
    std::vector<MetricEntry> input;
    std::vector<MetricEntry> expected;
    std::vector<MetricEntry> got;
};

struct EquivalenceReport {
    std::size_t inputs = 0;
    std::size_t mismatches = 0;
    std::optional<Mismatch> first_mismatch;
    bool top_wire_excluded = true;  // payload 2L-1 never surfaced in a first-L output
    std::string grid;
    std::uint64_t seed = 0;

    bool ok() const { return mismatches == 0 && top_wire_excluded; }
};

/// Runs every architecture against the oracle over the whole grid. Custom
/// sorters (e.g. a network loaded from a file) can replace the built one.
EquivalenceReport equivalence_suite(std::span<const Architecture> architectures,
                                    const InputGrid& grid);
EquivalenceReport equivalence_suite(
    std::span<const std::pair<Architecture, FirstLSorter>> sorters, const InputGrid& grid);

std::string report_to_json(const EquivalenceReport& report);

}  // namespace msort
