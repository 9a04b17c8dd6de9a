#include "msort/sortnet.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msort {

namespace {

std::size_t log2_exact(std::size_t v) {
    assert(std::has_single_bit(v));
    return static_cast<std::size_t>(std::countr_zero(v));
}

void require_power_of_two(std::uint32_t list_size, const char* who) {
    if (list_size < 2 || !std::has_single_bit(list_size))
        throw std::invalid_argument(std::string(who) + ": list size must be a power of two >= 2");
}

void require_min_size(std::uint32_t list_size, const char* who) {
    if (list_size < 2)
        throw std::invalid_argument(std::string(who) + ": list size must be at least 2");
}

std::string violation_message(const StructureViolation& v) {
    std::ostringstream os;
    os << "input violates the structured-list contract: "
       << (v.rule == StructureRule::EvenNonDecreasing ? "even entries not non-decreasing"
                                                      : "even entry above its odd successor")
       << " at pair " << v.pair_index;
    return os.str();
}

}  // namespace

std::size_t SortNetwork::cas_count() const {
    std::size_t n = 0;
    for (const Stage& s : stages) n += s.cas.size();
    return n;
}

namespace cost_model {

std::size_t bitonic_stages(std::size_t L) {
    const std::size_t lg = log2_exact(L);
    return (lg + 1) * (lg + 2) / 2;
}

std::size_t bitonic_cas(std::size_t L) { return L * bitonic_stages(L); }

std::size_t pruned_bitonic_stages(std::size_t L) { return bitonic_stages(L) - 1; }

std::size_t pruned_bitonic_cas(std::size_t L) {
    const std::size_t lg = log2_exact(L);
    return (L / 2 - 1) * lg * (lg + 2) + 1;
}

std::size_t bubble_stages(std::size_t L) { return 2 * L - 2; }
std::size_t bubble_cas(std::size_t L) { return L * (L - 1); }
std::size_t simplified_bubble_stages(std::size_t L) { return L - 1; }
std::size_t simplified_bubble_cas(std::size_t L) { return L * (L - 1) / 2; }
std::size_t radix_comparators(std::size_t L) { return L * (2 * L - 1); }
std::size_t pruned_radix_comparators(std::size_t L) { return (L - 1) * (L - 1); }

}  // namespace cost_model

SortNetwork build_bitonic(std::uint32_t list_size) {
    require_power_of_two(list_size, "build_bitonic");
    const std::uint32_t n = 2 * list_size;

    SortNetwork net;
    net.arch = std::string(to_string(Architecture::Bitonic));
    net.list_size = list_size;
    net.wires = n;
    for (std::uint32_t block = 2; block <= n; block <<= 1) {
        for (std::uint32_t dist = block >> 1; dist >= 1; dist >>= 1) {
            Stage stage;
            for (std::uint32_t i = 0; i < n; ++i) {
                const std::uint32_t partner = i ^ dist;
                if (partner <= i) continue;
                const CasDirection dir =
                    (i & block) == 0 ? CasDirection::Ascending : CasDirection::Descending;
                stage.cas.push_back({i, partner, dir});
            }
            net.stages.push_back(std::move(stage));
        }
    }

    assert(net.stages.size() == cost_model::bitonic_stages(list_size));
    assert(net.cas_count() == cost_model::bitonic_cas(list_size));
    return net;
}

// The pruned builder walks the full bitonic construction and applies the
// structured-input prunings:
//   - super-stage 1 resolves statically (descending pairs become swaps),
//   - in the middle super-stages, the unit on the rail of the smallest entry
//     and the unit on the rail of the top entry are removed,
//   - in the final super-stage, the smallest entry's units and the upper-half
//     units of its last log L stages are removed.
// A removed unit whose outcome is implied by the known relations turns into a
// static route; otherwise its outputs are don't-care and it is dropped.
// Known relations are tracked per value node: "precedes the top entry" is
// seeded by the even-index rule and propagated through min/max nodes.
SortNetwork build_pruned_bitonic(std::uint32_t list_size) {
    require_power_of_two(list_size, "build_pruned_bitonic");
    const std::uint32_t n = 2 * list_size;
    const std::uint32_t top_node = n - 1;

    // precedes_top[node]: the node's value precedes the original top entry on
    // every valid input. min(a,b) precedes it if either input does; max(a,b)
    // if both do. The smallest entry's node never leaves wire 0, so its
    // relations need no tracking.
    std::vector<char> precedes_top;
    precedes_top.reserve(std::size_t{2} * n);
    for (std::uint32_t i = 0; i < n; ++i)
        precedes_top.push_back(i % 2 == 0 && i < top_node ? 1 : 0);

    std::vector<std::uint32_t> wire_node(n);
    for (std::uint32_t i = 0; i < n; ++i) wire_node[i] = i;
    std::uint32_t top_rail = top_node;

    SortNetwork net;
    net.arch = std::string(to_string(Architecture::PrunedBitonic));
    net.list_size = list_size;
    net.wires = n;

    std::vector<std::array<std::uint32_t, 2>> pending_route;
    const std::uint32_t last_block = n;

    for (std::uint32_t block = 2; block <= n; block <<= 1) {
        const bool first_super = block == 2;
        const bool last_super = block == last_block;
        for (std::uint32_t dist = block >> 1; dist >= 1; dist >>= 1) {
            Stage stage;
            if (!first_super) {
                stage.route = std::move(pending_route);
                pending_route.clear();
            }
            const bool upper_cleanup = last_super && dist <= list_size / 2;

            for (std::uint32_t i = 0; i < n; ++i) {
                const std::uint32_t partner = i ^ dist;
                if (partner <= i) continue;
                const CasDirection dir =
                    (i & block) == 0 ? CasDirection::Ascending : CasDirection::Descending;

                const std::uint32_t node_lo = wire_node[i];
                const std::uint32_t node_hi = wire_node[partner];

                if (first_super) {
                    // (1b) resolves every pair of super-stage 1.
                    assert(node_lo % 2 == 0 && node_hi == node_lo + 1);
                    if (dir == CasDirection::Descending) {
                        pending_route.push_back({i, partner});
                        std::swap(wire_node[i], wire_node[partner]);
                        if (top_rail == partner) top_rail = i;
                    }
                    continue;
                }

                if (i == 0) {
                    // Wire 0 holds the smallest entry throughout; its units
                    // are exact pass-throughs.
                    assert(dir == CasDirection::Ascending && node_lo == 0);
                    continue;
                }

                const bool on_top_rail = i == top_rail || partner == top_rail;
                if (!last_super && on_top_rail) {
                    const std::uint32_t other_node = i == top_rail ? node_hi : node_lo;
                    assert((i == top_rail ? node_lo : node_hi) == top_node);
                    if (precedes_top[other_node]) {
                        // Outcome is static; route only if the preceding
                        // entry is on the wrong side for this direction.
                        const bool top_at_lo = i == top_rail;
                        const bool swap_needed =
                            dir == CasDirection::Ascending ? top_at_lo : !top_at_lo;
                        if (swap_needed) {
                            pending_route.push_back({i, partner});
                            std::swap(wire_node[i], wire_node[partner]);
                            top_rail = top_rail == i ? partner : i;
                        }
                    }
                    // Unresolved top-rail units only reorder entries that the
                    // observed outputs never see; drop them.
                    continue;
                }

                if (upper_cleanup && i >= list_size) continue;

                stage.cas.push_back({i, partner, dir});
                const std::uint32_t min_node = static_cast<std::uint32_t>(precedes_top.size());
                precedes_top.push_back(precedes_top[node_lo] || precedes_top[node_hi] ? 1 : 0);
                const std::uint32_t max_node = static_cast<std::uint32_t>(precedes_top.size());
                precedes_top.push_back(precedes_top[node_lo] && precedes_top[node_hi] ? 1 : 0);
                wire_node[i] = dir == CasDirection::Ascending ? min_node : max_node;
                wire_node[partner] = dir == CasDirection::Ascending ? max_node : min_node;
            }

            if (!first_super) net.stages.push_back(std::move(stage));
        }
    }

    assert(pending_route.empty());
    assert(net.stages.size() == cost_model::pruned_bitonic_stages(list_size));
    assert(net.cas_count() == cost_model::pruned_bitonic_cas(list_size));
    return net;
}

namespace {

// Stage t of the bubble network compares pairs (l-1, l) for l of parity
// t+1 (mod 2) in [t+1, last]. Swaps alternate between even and odd positions
// round by round, which is what makes the parallel stage implementation of
// the sequential algorithm exact.
Stage bubble_stage(std::uint32_t t, std::uint32_t last) {
    Stage stage;
    for (std::uint32_t l = t + 1; l <= last; l += 2)
        stage.cas.push_back({l - 1, l, CasDirection::Ascending});
    return stage;
}

}  // namespace

SortNetwork build_full_bubble(std::uint32_t list_size) {
    require_min_size(list_size, "build_full_bubble");
    const std::uint32_t n = 2 * list_size;

    SortNetwork net;
    net.arch = std::string(to_string(Architecture::Bubble));
    net.list_size = list_size;
    net.wires = n;
    for (std::uint32_t t = 1; t <= n - 2; ++t) net.stages.push_back(bubble_stage(t, n - 1));

    assert(net.stages.size() == cost_model::bubble_stages(list_size));
    assert(net.cas_count() == cost_model::bubble_cas(list_size));
    return net;
}

SortNetwork build_simplified_bubble(std::uint32_t list_size) {
    require_min_size(list_size, "build_simplified_bubble");
    const std::uint32_t n = 2 * list_size;

    SortNetwork net;
    net.arch = std::string(to_string(Architecture::SimplifiedBubble));
    net.list_size = list_size;
    net.wires = n;
    // Entries move one position per round at most, so positions beyond
    // 2L-1-t can no longer reach the first half at round t.
    for (std::uint32_t t = 1; t <= list_size - 1; ++t)
        net.stages.push_back(bubble_stage(t, n - 1 - t));

    assert(net.stages.size() == cost_model::simplified_bubble_stages(list_size));
    assert(net.cas_count() == cost_model::simplified_bubble_cas(list_size));
    return net;
}

std::vector<MetricEntry> evaluate(const SortNetwork& net, std::span<const MetricEntry> input) {
    if (input.size() != net.wires)
        throw std::invalid_argument("evaluate: input length does not match the wire count");

    const auto arch = parse_architecture(net.arch);
    if (arch && requires_structured_input(*arch) && is_network(*arch)) {
        const ValidationResult check = validate_structured(input);
        if (!check.ok()) throw std::invalid_argument("evaluate: " + violation_message(*check.violation));
    }

    std::vector<MetricEntry> wires(input.begin(), input.end());
    std::vector<MetricEntry> snapshot;
    for (const Stage& stage : net.stages) {
        for (const auto& [a, b] : stage.route) std::swap(wires[a], wires[b]);
        snapshot = wires;
        for (const CasUnit& unit : stage.cas) {
            const MetricEntry& lo = snapshot[unit.lo];
            const MetricEntry& hi = snapshot[unit.hi];
            const bool lo_first = precedes(lo, hi);
            const bool swap = unit.dir == CasDirection::Ascending ? !lo_first : lo_first;
            if (swap) {
                wires[unit.lo] = hi;
                wires[unit.hi] = lo;
            } else {
                wires[unit.lo] = lo;
                wires[unit.hi] = hi;
            }
        }
    }
    return wires;
}

CostReport cost(const SortNetwork& net) {
    CostReport report;
    report.arch = net.arch;
    report.list_size = net.list_size;
    report.measured_stages = net.stages.size();
    report.measured_cas = net.cas_count();

    const std::size_t L = net.list_size;
    if (const auto arch = parse_architecture(net.arch); arch && is_network(*arch)) {
        switch (*arch) {
            case Architecture::Bitonic:
                report.formula_stages = cost_model::bitonic_stages(L);
                report.formula_cas = cost_model::bitonic_cas(L);
                break;
            case Architecture::PrunedBitonic:
                report.formula_stages = cost_model::pruned_bitonic_stages(L);
                report.formula_cas = cost_model::pruned_bitonic_cas(L);
                break;
            case Architecture::Bubble:
                report.formula_stages = cost_model::bubble_stages(L);
                report.formula_cas = cost_model::bubble_cas(L);
                break;
            case Architecture::SimplifiedBubble:
                report.formula_stages = cost_model::simplified_bubble_stages(L);
                report.formula_cas = cost_model::simplified_bubble_cas(L);
                break;
            default: break;
        }
    }
    return report;
}

namespace {

nlohmann::json network_to_json(const SortNetwork& net) {
    nlohmann::json stages = nlohmann::json::array();
    for (const Stage& stage : net.stages) {
        nlohmann::json cas = nlohmann::json::array();
        for (const CasUnit& unit : stage.cas)
            cas.push_back({{"lo", unit.lo},
                           {"hi", unit.hi},
                           {"dir", unit.dir == CasDirection::Ascending ? "asc" : "desc"}});
        nlohmann::json route = nlohmann::json::array();
        for (const auto& [a, b] : stage.route) route.push_back({a, b});
        stages.push_back({{"cas", std::move(cas)}, {"route", std::move(route)}});
    }
    return {{"arch", net.arch},
            {"L", net.list_size},
            {"wires", net.wires},
            {"stages", std::move(stages)}};
}

std::string network_to_dot(const SortNetwork& net) {
    std::ostringstream os;
    os << "digraph \"" << net.arch << "_L" << net.list_size << "\" {\n";
    os << "  rankdir=LR;\n  node [shape=point, width=0.06];\n  edge [arrowsize=0.5];\n";
    const std::size_t columns = net.stages.size() + 1;
    const auto node = [](std::size_t col, std::uint32_t wire) {
        std::ostringstream n;
        n << "c" << col << "w" << wire;
        return n.str();
    };
    for (std::size_t col = 0; col < columns; ++col) {
        os << "  { rank=same; ";
        for (std::uint32_t w = 0; w < net.wires; ++w) os << node(col, w) << "; ";
        os << "}\n";
    }
    // Horizontal rails, with route swaps drawn as crossings.
    for (std::size_t col = 0; col + 1 < columns; ++col) {
        const Stage& stage = net.stages[col];
        std::vector<std::uint32_t> dst(net.wires);
        for (std::uint32_t w = 0; w < net.wires; ++w) dst[w] = w;
        for (const auto& [a, b] : stage.route) std::swap(dst[a], dst[b]);
        for (std::uint32_t w = 0; w < net.wires; ++w)
            os << "  " << node(col, w) << " -> " << node(col + 1, dst[w]) << " [arrowhead=none"
               << (dst[w] != w ? ", style=dashed" : "") << "];\n";
    }
    // CAS units as vertical connectors, one subgraph per stage.
    for (std::size_t col = 0; col < net.stages.size(); ++col) {
        os << "  subgraph cluster_stage_" << col + 1 << " {\n    label=\"stage " << col + 1
           << "\";\n    style=invis;\n";
        for (const CasUnit& unit : net.stages[col].cas) {
            const bool asc = unit.dir == CasDirection::Ascending;
            os << "    " << node(col + 1, asc ? unit.hi : unit.lo) << " -> "
               << node(col + 1, asc ? unit.lo : unit.hi) << " [constraint=false];\n";
        }
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

void check_stage_disjoint(const Stage& stage, std::uint32_t wires, std::size_t stage_no) {
    const auto bad = [&](const char* what) {
        throw std::invalid_argument("network stage " + std::to_string(stage_no) +
                                    ": " + what);
    };
    std::vector<char> in_cas(wires, 0), in_route(wires, 0);
    for (const CasUnit& unit : stage.cas) {
        if (unit.lo >= unit.hi || unit.hi >= wires) bad("CAS wires out of order or out of range");
        if (in_cas[unit.lo]++ || in_cas[unit.hi]++) bad("wire used by two CAS units");
    }
    for (const auto& [a, b] : stage.route) {
        if (a == b || a >= wires || b >= wires) bad("route swap out of range");
        if (in_route[a]++ || in_route[b]++) bad("wire used by two route swaps");
    }
}

}  // namespace

std::string export_network(const SortNetwork& net, ExportFormat format) {
    if (format == ExportFormat::Dot) return network_to_dot(net);
    return network_to_json(net).dump(2) + "\n";
}

SortNetwork import_network_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("network JSON: ") + e.what());
    }

    SortNetwork net;
    try {
        net.arch = j.at("arch").get<std::string>();
        net.list_size = j.at("L").get<std::uint32_t>();
        net.wires = j.at("wires").get<std::uint32_t>();
        for (const auto& js : j.at("stages")) {
            Stage stage;
            for (const auto& jc : js.at("cas")) {
                CasUnit unit;
                unit.lo = jc.at("lo").get<std::uint32_t>();
                unit.hi = jc.at("hi").get<std::uint32_t>();
                const std::string dir = jc.at("dir").get<std::string>();
                if (dir != "asc" && dir != "desc")
                    throw std::invalid_argument("network JSON: dir must be 'asc' or 'desc'");
                unit.dir = dir == "asc" ? CasDirection::Ascending : CasDirection::Descending;
                stage.cas.push_back(unit);
            }
            for (const auto& jr : js.at("route"))
                stage.route.push_back({jr.at(0).get<std::uint32_t>(), jr.at(1).get<std::uint32_t>()});
            net.stages.push_back(std::move(stage));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("network JSON: ") + e.what());
    }

    if (net.wires == 0 || net.wires % 2 != 0 || net.wires != 2 * net.list_size)
        throw std::invalid_argument("network JSON: wires must equal 2*L");
    for (std::size_t s = 0; s < net.stages.size(); ++s)
        check_stage_disjoint(net.stages[s], net.wires, s + 1);
    return net;
}

}  // namespace msort
