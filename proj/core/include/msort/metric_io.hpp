#pragma once

#include <iosfwd>
#include <string>

#include "msort/metric.hpp"

namespace msort {

/// Metric list text format: a header line `L=<n> Q=<q>` followed by 2L lines
/// of `<key> <payload>`, all decimal.
struct MetricFile {
    std::uint32_t list_size = 0;
    unsigned q_bits = kDefaultKeyBits;
    std::vector<MetricEntry> entries;
};

/// Throws std::invalid_argument with the offending line on malformed input.
MetricFile read_metric_list(std::istream& in);

void write_metric_list(std::ostream& out, const MetricFile& file);

}  // namespace msort
