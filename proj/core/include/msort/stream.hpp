#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "msort/arch.hpp"
#include "msort/metric.hpp"
#include "msort/oracle.hpp"

namespace msort {

enum class IncrementProfile {
    UniformFull,          // a uniform over the whole key domain
    UniformSmall,         // a uniform over {0..small_max}
    QuantizedHalfNormal,  // a = round(|N(0, sigma)|), clamped to the domain
};

struct StreamConfig {
    std::uint32_t list_size = 4;
    unsigned q_bits = kDefaultKeyBits;
    std::size_t steps = 1;
    IncrementProfile profile = IncrementProfile::UniformFull;
    std::uint32_t small_max = 3;
    double sigma = 0.0;  // 0 selects the profile default (mean around 2^(Q-3))
    std::uint64_t seed = 0;
    Architecture sorter = Architecture::PrunedRadix;
    bool check = false;  // validate the list and cross-check against the oracle each step
};

/// Survivor metrics plus the payloads that produced them, step by step.
/// Payload parity records which of a path's two candidates survived.
struct StreamState {
    std::vector<MetricKey> mu;  // non-decreasing at every step boundary
    std::vector<std::vector<std::uint32_t>> lineage;
};

struct StreamSummary {
    std::size_t steps = 0;
    std::size_t violations = 0;  // structure or oracle-agreement failures when checking
    std::vector<MetricKey> final_mu;
    std::uint64_t lineage_digest = 0;
    std::uint64_t seed = 0;

    bool ok() const { return violations == 0; }
};

StreamState initial_state(const StreamConfig& config);

/// One metric-update/sort iteration: draw increments, build the structured
/// list, sort, keep the L smallest keys as the new survivors.
StreamState step(StreamState state, const StreamConfig& config, std::mt19937_64& rng,
                 const FirstLSorter& sorter);

StreamSummary run_stream(const StreamConfig& config);

/// Per-step survivor metrics as CSV: header, then step,mu_0,...,mu_{L-1}.
std::string run_stream_csv(const StreamConfig& config);

std::string summary_to_json(const StreamSummary& summary);

}  // namespace msort
