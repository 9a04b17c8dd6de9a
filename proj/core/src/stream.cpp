#include "msort/stream.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msort {

namespace {

double default_sigma(unsigned q_bits) {
    // Mean of |N(0, sigma)| is sigma*sqrt(2/pi); aim it at 2^(Q-3).
    return std::ldexp(1.0, static_cast<int>(q_bits) - 3) * std::sqrt(std::numbers::pi / 2.0);
}

std::vector<MetricKey> draw_increments(const StreamConfig& config, std::mt19937_64& rng) {
    const KeyDomain domain{config.q_bits};
    std::vector<MetricKey> a(config.list_size);
    switch (config.profile) {
        case IncrementProfile::UniformFull: {
            std::uniform_int_distribution<std::uint32_t> dist(0, domain.max_value());
            for (auto& k : a) k.value = dist(rng);
            break;
        }
        case IncrementProfile::UniformSmall: {
            std::uniform_int_distribution<std::uint32_t> dist(
                0, std::min(config.small_max, domain.max_value()));
            for (auto& k : a) k.value = dist(rng);
            break;
        }
        case IncrementProfile::QuantizedHalfNormal: {
            const double sigma = config.sigma > 0 ? config.sigma : default_sigma(config.q_bits);
            std::normal_distribution<double> dist(0.0, sigma);
            for (auto& k : a) {
                const double mag = std::round(std::abs(dist(rng)));
                k.value = static_cast<std::uint32_t>(std::min<double>(mag, domain.max_value()));
            }
            break;
        }
    }
    return a;
}

void apply_survivors(StreamState& state, const std::vector<MetricEntry>& survivors) {
    std::vector<std::uint32_t> payloads;
    payloads.reserve(survivors.size());
    for (std::size_t l = 0; l < survivors.size(); ++l) {
        state.mu[l] = survivors[l].key;
        payloads.push_back(survivors[l].payload);
    }
    state.lineage.push_back(std::move(payloads));
}

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
    constexpr std::uint64_t prime = 1099511628211ull;
    for (int byte = 0; byte < 8; ++byte) {
        hash ^= (value >> (8 * byte)) & 0xff;
        hash *= prime;
    }
    return hash;
}

}  // namespace

StreamState initial_state(const StreamConfig& config) {
    if (config.list_size < 2)
        throw std::invalid_argument("stream: list size must be at least 2");
    if (config.steps < 1) throw std::invalid_argument("stream: steps must be >= 1");
    StreamState state;
    state.mu.assign(config.list_size, MetricKey{0});
    return state;
}

StreamState step(StreamState state, const StreamConfig& config, std::mt19937_64& rng,
                 const FirstLSorter& sorter) {
    const std::vector<MetricKey> a = draw_increments(config, rng);
    const StructuredList list = make_structured(state.mu, a, KeyDomain{config.q_bits});
    apply_survivors(state, sorter(list));
    return state;
}

namespace {

StreamSummary run_stream_impl(const StreamConfig& config,
                              const std::function<void(std::size_t, const StreamState&)>& observe) {
    StreamState state = initial_state(config);
    const FirstLSorter sorter = make_first_l_sorter(config.sorter, config.list_size);
    std::mt19937_64 rng(config.seed);

    StreamSummary summary;
    summary.seed = config.seed;
    for (std::size_t s = 0; s < config.steps; ++s) {
        const std::vector<MetricKey> a = draw_increments(config, rng);
        const StructuredList list = make_structured(state.mu, a, KeyDomain{config.q_bits});
        if (config.check && !validate_structured(list.entries).ok()) ++summary.violations;
        const std::vector<MetricEntry> survivors = sorter(list);
        if (config.check && survivors != select_l_smallest_oracle(list.entries))
            ++summary.violations;
        apply_survivors(state, survivors);
        if (config.check && !std::is_sorted(state.mu.begin(), state.mu.end()))
            ++summary.violations;
        if (observe) observe(s, state);
    }

    summary.steps = config.steps;
    summary.final_mu = state.mu;
    std::uint64_t digest = 1469598103934665603ull;
    for (std::size_t s = 0; s < state.lineage.size(); ++s)
        for (const std::uint32_t payload : state.lineage[s])
            digest = fnv1a(digest, (std::uint64_t{s} << 32) | payload);
    summary.lineage_digest = digest;
    return summary;
}

}  // namespace

StreamSummary run_stream(const StreamConfig& config) { return run_stream_impl(config, nullptr); }

std::string run_stream_csv(const StreamConfig& config) {
    std::ostringstream os;
    os << "step";
    for (std::uint32_t l = 0; l < config.list_size; ++l) os << ",mu_" << l;
    os << "\n";
    run_stream_impl(config, [&](std::size_t s, const StreamState& state) {
        os << s + 1;
        for (const MetricKey k : state.mu) os << "," << k.value;
        os << "\n";
    });
    return os.str();
}

std::string summary_to_json(const StreamSummary& summary) {
    nlohmann::json mu = nlohmann::json::array();
    for (const MetricKey k : summary.final_mu) mu.push_back(k.value);
    const nlohmann::json j = {{"steps", summary.steps},
                              {"violations", summary.violations},
                              {"final_mu", std::move(mu)},
                              {"lineage_digest", summary.lineage_digest},
                              {"seed", summary.seed},
                              {"ok", summary.ok()}};
    return j.dump(2) + "\n";
}

}  // namespace msort
