#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <span>
#include <vector>

namespace msort {

inline constexpr unsigned kDefaultKeyBits = 8;

/// Quantized path metric. Keys are unsigned fixed-point values of
/// KeyDomain::bits width; arithmetic on them saturates at the domain maximum.
struct MetricKey {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(MetricKey, MetricKey) = default;
};

/// Value range and arithmetic rules for Q-bit metric keys.
struct KeyDomain {
    unsigned bits = kDefaultKeyBits;

    constexpr std::uint32_t max_value() const { return (1u << bits) - 1u; }
    constexpr bool contains(MetricKey k) const { return k.value <= max_value(); }

    constexpr MetricKey add_saturating(MetricKey a, MetricKey b) const {
        const std::uint64_t sum = std::uint64_t{a.value} + b.value;
        return MetricKey{sum > max_value() ? max_value() : static_cast<std::uint32_t>(sum)};
    }
};

/// A metric with the index of the path that produced it. The payload rides
/// along unchanged through every swap and route; comparisons never read it
/// except to break key ties.
struct MetricEntry {
    MetricKey key;
    std::uint32_t payload = 0;

    friend constexpr bool operator==(const MetricEntry&, const MetricEntry&) = default;
};

/// Strict total order: by key, then by payload. Payload distinctness makes
/// this a strict total order, which in turn makes every architecture's output
/// bit-exact comparable.
constexpr bool precedes(const MetricEntry& a, const MetricEntry& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.payload < b.payload;
}

struct TotalOrder {
    constexpr bool operator()(const MetricEntry& a, const MetricEntry& b) const {
        return precedes(a, b);
    }
};

/// The 2L candidate metrics of one selection step. Constructors guarantee the
/// structural properties; validate_structured() re-checks them for lists of
/// unknown provenance.
struct StructuredList {
    std::vector<MetricEntry> entries;

    std::size_t list_size() const { return entries.size() / 2; }
};

enum class StructureRule {
    EvenNonDecreasing,  // entries[2l].key <= entries[2(l+1)].key
    EvenBelowOdd,       // entries[2l].key <= entries[2l+1].key
};

struct StructureViolation {
    StructureRule rule;
    std::size_t pair_index;  // the l at which the rule fails
};

struct ValidationResult {
    std::optional<StructureViolation> violation;

    bool ok() const { return !violation.has_value(); }
};

/// Builds the 2L-entry candidate list from the L sorted survivor metrics and
/// their nonnegative increments: entry 2l = mu[l], entry 2l+1 = mu[l] (+) a[l]
/// with saturating addition. Payload of entry i is i.
/// Throws std::invalid_argument if mu is not non-decreasing, sizes differ,
/// L < 2, or any input key is outside the domain.
StructuredList make_structured(std::span<const MetricKey> mu, std::span<const MetricKey> a,
                               KeyDomain domain = {});

/// Checks the two structural key properties on a candidate list. Note the
/// even-below-odd rule is required of every pair including the last one;
/// the exclusion of the top entry from the L smallest depends on it.
/// Throws std::invalid_argument for odd-sized lists or fewer than 4 entries.
ValidationResult validate_structured(std::span<const MetricEntry> entries);

enum class Relation {
    KnownSmaller,  // entry i precedes entry j on every valid structured list
    Unknown,       // order decided only at runtime
};

/// Statically known order between wires i < j of a valid structured list:
/// every even-indexed entry precedes all entries after it.
/// Throws std::invalid_argument if i >= j.
Relation known_relation(std::size_t i, std::size_t j);

/// Embeds up to L arbitrary key values into a structured list whose sorted
/// L smallest outputs end with the minimum of the values: even slots get the
/// domain minimum, odd slots the values (padded with the domain maximum), and
/// the final slot the domain maximum. Values equal to either sentinel are
/// rejected (std::invalid_argument), as are k < 1 or k > L.
StructuredList embed_arbitrary(std::span<const MetricKey> values, std::size_t list_size,
                               KeyDomain domain = {});

}  // namespace msort
