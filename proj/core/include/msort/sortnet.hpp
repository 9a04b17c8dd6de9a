#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msort/arch.hpp"
#include "msort/metric.hpp"

namespace msort {

/// Compare-and-select unit between two wires of a stage. Ascending routes the
/// preceding entry (under TotalOrder) to the lo wire, Descending to the hi
/// wire.
enum class CasDirection { Ascending, Descending };

struct CasUnit {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
    CasDirection dir = CasDirection::Ascending;

    friend bool operator==(const CasUnit&, const CasUnit&) = default;
};

/// One pipeline stage: an unconditional wire permutation (disjoint swaps,
/// applied first) followed by CAS units evaluated in parallel on the routed
/// snapshot. CAS units are pairwise wire-disjoint, and so are the swaps; a
/// wire may feed one swap and then one CAS within the same stage.
struct Stage {
    std::vector<std::array<std::uint32_t, 2>> route;
    std::vector<CasUnit> cas;

    friend bool operator==(const Stage&, const Stage&) = default;
};

struct SortNetwork {
    std::string arch;  // architecture tag; builders use the canonical names
    std::uint32_t list_size = 0;
    std::uint32_t wires = 0;
    std::vector<Stage> stages;

    std::size_t cas_count() const;

    friend bool operator==(const SortNetwork&, const SortNetwork&) = default;
};

/// Closed-form stage and unit counts per architecture.
namespace cost_model {

std::size_t bitonic_stages(std::size_t L);
std::size_t bitonic_cas(std::size_t L);
std::size_t pruned_bitonic_stages(std::size_t L);
std::size_t pruned_bitonic_cas(std::size_t L);
std::size_t bubble_stages(std::size_t L);
std::size_t bubble_cas(std::size_t L);
std::size_t simplified_bubble_stages(std::size_t L);
std::size_t simplified_bubble_cas(std::size_t L);
std::size_t radix_comparators(std::size_t L);
std::size_t pruned_radix_comparators(std::size_t L);

}  // namespace cost_model

/// Batcher bitonic sorter over 2L wires; sorts arbitrary inputs ascending.
/// L must be a power of two >= 2.
SortNetwork build_bitonic(std::uint32_t list_size);

/// Bitonic sorter pruned for structured inputs: the first stage collapses to
/// static routing, units on the rails of the extremal entries are removed,
/// and the upper-half cleanup of the final merge is dropped. Only the first
/// L output wires are meaningful.
SortNetwork build_pruned_bitonic(std::uint32_t list_size);

/// Triangular bubble network, one stage per round; sorts any structured list
/// completely. Any L >= 2.
SortNetwork build_full_bubble(std::uint32_t list_size);

/// Bubble network keeping only the rounds and units that can influence the
/// first L outputs.
SortNetwork build_simplified_bubble(std::uint32_t list_size);

/// Runs the network: stages in order, each stage's route then its CAS units
/// computed from the routed snapshot. Input length must equal the wire count;
/// architectures that rely on the structured-list contract reject inputs that
/// violate it (std::invalid_argument).
std::vector<MetricEntry> evaluate(const SortNetwork& net, std::span<const MetricEntry> input);

struct CostReport {
    std::string arch;
    std::uint32_t list_size = 0;
    std::size_t measured_stages = 0;
    std::size_t measured_cas = 0;
    std::optional<std::size_t> formula_stages;
    std::optional<std::size_t> formula_cas;

    bool matches_formula() const {
        return formula_stages && formula_cas && measured_stages == *formula_stages &&
               measured_cas == *formula_cas;
    }
};

/// Measures stage/CAS counts and pairs them with the closed form for known
/// architecture tags; unknown tags get a measured-only report.
CostReport cost(const SortNetwork& net);

enum class ExportFormat { Json, Dot };

std::string export_network(const SortNetwork& net, ExportFormat format);

/// Parses a network from its JSON export. Schema and wire-disjointness are
/// checked; the architecture tag is kept verbatim.
SortNetwork import_network_json(std::string_view text);

}  // namespace msort
