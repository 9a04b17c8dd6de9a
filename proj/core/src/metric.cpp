#include "msort/metric.hpp"

#include <stdexcept>
#include <string>

namespace msort {

StructuredList make_structured(std::span<const MetricKey> mu, std::span<const MetricKey> a,
                               KeyDomain domain) {
    if (mu.size() != a.size())
        throw std::invalid_argument("make_structured: mu and a must have equal length");
    if (mu.size() < 2)
        throw std::invalid_argument("make_structured: list size must be at least 2");
    for (std::size_t l = 0; l + 1 < mu.size(); ++l)
        if (mu[l + 1] < mu[l])
            throw std::invalid_argument("make_structured: mu is not non-decreasing at index " +
                                        std::to_string(l + 1));
    for (std::size_t l = 0; l < mu.size(); ++l)
        if (!domain.contains(mu[l]) || !domain.contains(a[l]))
            throw std::invalid_argument("make_structured: key outside Q-bit domain at index " +
                                        std::to_string(l));

    StructuredList list;
    list.entries.reserve(2 * mu.size());
    for (std::size_t l = 0; l < mu.size(); ++l) {
        list.entries.push_back({mu[l], static_cast<std::uint32_t>(2 * l)});
        list.entries.push_back(
            {domain.add_saturating(mu[l], a[l]), static_cast<std::uint32_t>(2 * l + 1)});
    }
    return list;
}

ValidationResult validate_structured(std::span<const MetricEntry> entries) {
    if (entries.size() % 2 != 0 || entries.size() < 4)
        throw std::invalid_argument("validate_structured: list must have even length >= 4");
    const std::size_t half = entries.size() / 2;
    for (std::size_t l = 0; l + 1 < half; ++l)
        if (entries[2 * (l + 1)].key < entries[2 * l].key)
            return {StructureViolation{StructureRule::EvenNonDecreasing, l}};
    for (std::size_t l = 0; l < half; ++l)
        if (entries[2 * l + 1].key < entries[2 * l].key)
            return {StructureViolation{StructureRule::EvenBelowOdd, l}};
    return {};
}

Relation known_relation(std::size_t i, std::size_t j) {
    if (i >= j) throw std::invalid_argument("known_relation: requires i < j");
    return i % 2 == 0 ? Relation::KnownSmaller : Relation::Unknown;
}

StructuredList embed_arbitrary(std::span<const MetricKey> values, std::size_t list_size,
                               KeyDomain domain) {
    if (values.empty()) throw std::invalid_argument("embed_arbitrary: need at least one value");
    if (list_size < 2) throw std::invalid_argument("embed_arbitrary: list size must be at least 2");
    if (values.size() > list_size)
        throw std::invalid_argument("embed_arbitrary: more values than the list size");

    const MetricKey lo_sentinel{0};
    const MetricKey hi_sentinel{domain.max_value()};
    for (const MetricKey v : values) {
        if (!domain.contains(v))
            throw std::invalid_argument("embed_arbitrary: value outside Q-bit domain");
        if (v == lo_sentinel || v == hi_sentinel)
            throw std::invalid_argument("embed_arbitrary: value collides with a sentinel key");
    }

    const auto value_or_pad = [&](std::size_t l) {
        return l < values.size() ? values[l] : hi_sentinel;
    };

    StructuredList list;
    list.entries.resize(2 * list_size);
    for (std::size_t l = 0; l + 1 < list_size; ++l) {
        list.entries[2 * l] = {lo_sentinel, static_cast<std::uint32_t>(2 * l)};
        list.entries[2 * l + 1] = {value_or_pad(l), static_cast<std::uint32_t>(2 * l + 1)};
    }
    list.entries[2 * list_size - 2] = {value_or_pad(list_size - 1),
                                       static_cast<std::uint32_t>(2 * list_size - 2)};
    list.entries[2 * list_size - 1] = {hi_sentinel, static_cast<std::uint32_t>(2 * list_size - 1)};
    return list;
}

}  // namespace msort
