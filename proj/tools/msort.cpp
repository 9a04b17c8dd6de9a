// msort: build, run, check, and cost the metric-sorter architectures.
//
// Subcommands: gen, cost, verify, lemma, stream, sort. Machine-readable
// output is JSON or CSV; everything is deterministic given flags and seed.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msort/bubble.hpp"
#include "msort/metric_io.hpp"
#include "msort/oracle.hpp"
#include "msort/radix_select.hpp"
#include "msort/sortnet.hpp"
#include "msort/stream.hpp"

namespace {

using namespace msort;

constexpr std::array<Architecture, 6> kAllArchitectures = {
    Architecture::Bitonic,        Architecture::PrunedBitonic, Architecture::Bubble,
    Architecture::SimplifiedBubble, Architecture::Radix,       Architecture::PrunedRadix,
};

Architecture arch_from_flag(const std::string& name) {
    const auto arch = parse_architecture(name);
    if (!arch) throw CLI::ValidationError("--arch", "unknown architecture '" + name + "'");
    return *arch;
}

void check_arch_list_size(Architecture arch, std::uint32_t list_size) {
    const bool pow2 = list_size >= 2 && (list_size & (list_size - 1)) == 0;
    if ((arch == Architecture::Bitonic || arch == Architecture::PrunedBitonic) && !pow2)
        throw std::invalid_argument(std::string(to_string(arch)) +
                                    " requires a power-of-two list size");
    if (list_size < 2) throw std::invalid_argument("list size must be at least 2");
}

SortNetwork build_network(Architecture arch, std::uint32_t list_size) {
    switch (arch) {
        case Architecture::Bitonic: return build_bitonic(list_size);
        case Architecture::PrunedBitonic: return build_pruned_bitonic(list_size);
        case Architecture::Bubble: return build_full_bubble(list_size);
        case Architecture::SimplifiedBubble: return build_simplified_bubble(list_size);
        default: throw std::invalid_argument("not a staged network architecture");
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

// ---- gen ----------------------------------------------------------------

int cmd_gen(const std::string& arch_name, std::uint32_t list_size, const std::string& format,
            const std::string& out_path) {
    const Architecture arch = arch_from_flag(arch_name);
    check_arch_list_size(arch, list_size);

    if (!is_network(arch)) {
        if (format != "json")
            throw std::invalid_argument("comparator plans export as JSON only");
        const RankSelectPlan plan =
            arch == Architecture::Radix ? plan_full(list_size) : plan_pruned(list_size);
        write_output(out_path, export_plan_json(plan));
        std::cerr << to_string(arch) << " L=" << list_size << ": comparators "
                  << plan.comparator_pairs.size() << "\n";
        return 0;
    }

    const SortNetwork net = build_network(arch, list_size);
    const ExportFormat fmt = format == "dot" ? ExportFormat::Dot : ExportFormat::Json;
    write_output(out_path, export_network(net, fmt));
    const CostReport report = cost(net);
    std::cerr << net.arch << " L=" << list_size << ": stages " << report.measured_stages
              << ", cas " << report.measured_cas << "\n";
    return 0;
}

// ---- cost ---------------------------------------------------------------

struct CostRow {
    std::string arch;
    std::uint32_t list_size;
    std::string stages_measured, stages_formula, cas_measured, cas_formula, marker;
};

int cmd_cost(const std::vector<std::uint32_t>& list_sizes, const std::string& format) {
    std::vector<CostRow> rows;
    bool diverged = false;

    for (const std::uint32_t L : list_sizes) {
        const bool pow2 = L >= 2 && (L & (L - 1)) == 0;
        std::size_t sb_stages = 0, pbt_stages = 0;
        for (const Architecture arch : kAllArchitectures) {
            CostRow row;
            row.arch = to_string(arch);
            row.list_size = L;
            if (is_network(arch)) {
                if ((arch == Architecture::Bitonic || arch == Architecture::PrunedBitonic) && !pow2) {
                    row.stages_measured = row.stages_formula = row.cas_measured =
                        row.cas_formula = "n/a";
                    rows.push_back(row);
                    continue;
                }
                const CostReport report = cost(build_network(arch, L));
                row.stages_measured = std::to_string(report.measured_stages);
                row.stages_formula = std::to_string(*report.formula_stages);
                row.cas_measured = std::to_string(report.measured_cas);
                row.cas_formula = std::to_string(*report.formula_cas);
                if (!report.matches_formula()) diverged = true;
                if (arch == Architecture::SimplifiedBubble) sb_stages = report.measured_stages;
                if (arch == Architecture::PrunedBitonic) pbt_stages = report.measured_stages;
            } else {
                const RankSelectPlan plan =
                    arch == Architecture::Radix ? plan_full(L) : plan_pruned(L);
                const std::size_t formula = arch == Architecture::Radix
                                                ? cost_model::radix_comparators(L)
                                                : cost_model::pruned_radix_comparators(L);
                row.stages_measured = row.stages_formula = "-";
                row.cas_measured = std::to_string(plan.comparator_pairs.size());
                row.cas_formula = std::to_string(formula);
                if (plan.comparator_pairs.size() != formula) diverged = true;
            }
            rows.push_back(row);
        }
        if (pow2)
            for (CostRow& row : rows)
                if (row.list_size == L && row.arch == "simplified-bubble")
                    row.marker = sb_stages < pbt_stages ? "SB<PBT" : "SB>=PBT";
    }

    const char* header[] = {"arch",         "L",           "stages",  "stages_formula",
                            "cas",          "cas_formula", "crossover"};
    if (format == "md") {
        std::cout << "| " << header[0];
        for (int i = 1; i < 7; ++i) std::cout << " | " << header[i];
        std::cout << " |\n|";
        for (int i = 0; i < 7; ++i) std::cout << "---|";
        std::cout << "\n";
        for (const CostRow& row : rows)
            std::cout << "| " << row.arch << " | " << row.list_size << " | "
                      << row.stages_measured << " | " << row.stages_formula << " | "
                      << row.cas_measured << " | " << row.cas_formula << " | " << row.marker
                      << " |\n";
    } else {
        std::cout << header[0];
        for (int i = 1; i < 7; ++i) std::cout << "," << header[i];
        std::cout << "\n";
        for (const CostRow& row : rows)
            std::cout << row.arch << "," << row.list_size << "," << row.stages_measured << ","
                      << row.stages_formula << "," << row.cas_measured << "," << row.cas_formula
                      << "," << row.marker << "\n";
    }

    if (diverged) {
        std::cerr << "cost: measured counts diverge from the closed forms\n";
        return 1;
    }
    return 0;
}

// ---- verify ---------------------------------------------------------------

std::uint32_t default_exhaustive_key_max(std::uint32_t list_size) {
    switch (list_size) {
        case 2: return 7;
        case 4: return 3;
        case 8: return 1;
        default:
            throw std::invalid_argument(
                "exhaustive mode supports L in {2, 4, 8}; use --mode random for larger L");
    }
}

int cmd_verify(const std::string& arch_name, std::uint32_t list_size, const std::string& mode,
               std::size_t trials, std::uint64_t seed, const std::string& net_file) {
    const InputGrid grid = mode == "exhaustive"
                               ? InputGrid::exhaustive(list_size,
                                                       default_exhaustive_key_max(list_size))
                               : InputGrid::randomized(list_size, kDefaultKeyBits, trials, seed);

    EquivalenceReport report;
    if (!net_file.empty()) {
        std::ifstream in(net_file);
        if (!in) throw std::runtime_error("cannot open network file: " + net_file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        const SortNetwork net = import_network_json(buffer.str());
        if (net.list_size != list_size)
            throw std::invalid_argument("network file list size does not match --list-size");
        const auto tag = parse_architecture(net.arch);
        if (!tag)
            throw std::invalid_argument("network file carries unknown architecture tag '" +
                                        net.arch + "'");
        std::vector<std::pair<Architecture, FirstLSorter>> sorters;
        sorters.emplace_back(*tag, [net, list_size](const StructuredList& in_list) {
            std::vector<MetricEntry> out = evaluate(net, in_list.entries);
            out.resize(list_size);
            return out;
        });
        report = equivalence_suite(sorters, grid);
    } else {
        std::vector<Architecture> archs;
        if (arch_name == "all") {
            for (const Architecture a : kAllArchitectures) {
                const bool pow2 = (list_size & (list_size - 1)) == 0;
                if (!pow2 && (a == Architecture::Bitonic || a == Architecture::PrunedBitonic))
                    continue;
                archs.push_back(a);
            }
        } else {
            const Architecture arch = arch_from_flag(arch_name);
            check_arch_list_size(arch, list_size);
            archs.push_back(arch);
        }
        report = equivalence_suite(archs, grid);
    }

    std::cout << report_to_json(report);
    return report.ok() ? 0 : 1;
}

// ---- lemma ----------------------------------------------------------------

int cmd_lemma(std::uint32_t list_size, const std::string& mode, std::size_t trials,
              std::uint64_t seed) {
    const InputGrid grid = mode == "exhaustive"
                               ? InputGrid::exhaustive(list_size,
                                                       default_exhaustive_key_max(list_size))
                               : InputGrid::randomized(list_size, kDefaultKeyBits, trials, seed);

    std::size_t inputs = 0, failures = 0, restricted_over_budget = 0;
    std::uint32_t max_rounds_restricted = 0;
    grid.visit([&](const StructuredList& input) {
        ++inputs;
        const BubbleRun full = run_bubble_traced(input, BubbleMode::FullSort);
        if (!check_lemma(full).all_pass()) ++failures;
        const BubbleRun restricted = run_bubble_traced(input, BubbleMode::FirstLOnly);
        const auto rounds = static_cast<std::uint32_t>(restricted.rounds.size());
        max_rounds_restricted = std::max(max_rounds_restricted, rounds);
        if (rounds > list_size - 1) ++restricted_over_budget;
    });

    std::cout << "{\n  \"grid\": \"" << grid.describe() << "\",\n  \"inputs\": " << inputs
              << ",\n  \"lemma_failures\": " << failures
              << ",\n  \"restricted_over_budget\": " << restricted_over_budget
              << ",\n  \"max_rounds_restricted\": " << max_rounds_restricted << "\n}\n";
    return failures == 0 && restricted_over_budget == 0 ? 0 : 1;
}

// ---- stream -----------------------------------------------------------------

IncrementProfile parse_profile(const std::string& text, StreamConfig& config) {
    if (text == "uniform_full") return IncrementProfile::UniformFull;
    if (text.rfind("uniform_small", 0) == 0) {
        if (const auto colon = text.find(':'); colon != std::string::npos)
            config.small_max = static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1)));
        return IncrementProfile::UniformSmall;
    }
    if (text.rfind("half_normal", 0) == 0) {
        if (const auto colon = text.find(':'); colon != std::string::npos)
            config.sigma = std::stod(text.substr(colon + 1));
        return IncrementProfile::QuantizedHalfNormal;
    }
    throw CLI::ValidationError("--profile",
                               "expected uniform_full, uniform_small[:MAX], half_normal[:SIGMA]");
}

int cmd_stream(std::uint32_t list_size, std::size_t steps, const std::string& profile,
               std::uint64_t seed, const std::string& arch_name, bool check,
               const std::string& csv_path) {
    StreamConfig config;
    config.list_size = list_size;
    config.steps = steps;
    config.seed = seed;
    config.profile = parse_profile(profile, config);
    config.sorter = arch_from_flag(arch_name);
    config.check = check;
    check_arch_list_size(config.sorter, list_size);

    if (!csv_path.empty()) write_output(csv_path, run_stream_csv(config));
    const StreamSummary summary = run_stream(config);
    std::cout << summary_to_json(summary);
    return summary.ok() ? 0 : 1;
}

// ---- sort -----------------------------------------------------------------

int cmd_sort(const std::string& arch_name, const std::string& in_path) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open input file: " + in_path);
    const MetricFile file = read_metric_list(in);

    const Architecture arch = arch_from_flag(arch_name);
    check_arch_list_size(arch, file.list_size);
    const FirstLSorter sorter = make_first_l_sorter(arch, file.list_size);
    const std::vector<MetricEntry> out = sorter(StructuredList{file.entries});
    for (const MetricEntry& e : out) std::cout << e.key.value << " " << e.payload << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric sorter architectures: generate, cost, verify, trace, simulate"};
    app.require_subcommand(1);

    std::string arch = "pruned-bitonic";
    std::uint32_t list_size = 4;
    std::string format = "json";
    std::string out_path;
    std::string mode = "random";
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::string net_file;
    std::size_t steps = 1000;
    std::string profile = "uniform_full";
    bool check = false;
    std::string csv_path;
    std::string in_path;
    std::vector<std::uint32_t> list_sizes = {2, 4, 8, 16, 32};

    const std::string arch_help = "bitonic|pruned-bitonic|bubble|simplified-bubble|radix|pruned-radix";

    CLI::App* gen = app.add_subcommand("gen", "emit a network or comparator plan");
    gen->add_option("--arch", arch, arch_help)->required();
    gen->add_option("--list-size", list_size, "list size L")->required();
    gen->add_option("--format", format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
    gen->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* cost_cmd = app.add_subcommand("cost", "stage/unit counts vs the closed forms");
    cost_cmd->add_option("--list-sizes", list_sizes, "list sizes")->delimiter(',');
    cost_cmd->add_option("--format", format, "csv|md")->check(CLI::IsMember({"csv", "md"}));

    CLI::App* verify = app.add_subcommand("verify", "compare architectures against the oracle");
    verify->add_option("--arch", arch, arch_help + "|all")->required();
    verify->add_option("--list-size", list_size, "list size L")->required();
    verify->add_option("--mode", mode, "exhaustive|random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    verify->add_option("--trials", trials, "random trials");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--net-file", net_file, "evaluate a network JSON file instead of building");

    CLI::App* lemma = app.add_subcommand("lemma", "check the bubble-round data dependencies");
    lemma->add_option("--list-size", list_size, "list size L")->required();
    lemma->add_option("--mode", mode, "exhaustive|random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    lemma->add_option("--trials", trials, "random trials");
    lemma->add_option("--seed", seed, "random seed");

    CLI::App* stream = app.add_subcommand("stream", "run the metric-update/sort loop");
    stream->add_option("--list-size", list_size, "list size L")->required();
    stream->add_option("--steps", steps, "iterations");
    stream->add_option("--profile", profile, "uniform_full|uniform_small[:MAX]|half_normal[:SIGMA]");
    stream->add_option("--seed", seed, "random seed");
    stream->add_option("--arch", arch, arch_help);
    stream->add_flag("--check", check, "validate and cross-check every step");
    stream->add_option("--csv", csv_path, "write per-step survivors as CSV");

    CLI::App* sort_cmd = app.add_subcommand("sort", "sort a metric list file, print the L smallest");
    sort_cmd->add_option("--arch", arch, arch_help)->required();
    sort_cmd->add_option("--in", in_path, "metric list file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(arch, list_size, format, out_path);
        if (cost_cmd->parsed()) return cmd_cost(list_sizes, format == "md" ? "md" : "csv");
        if (verify->parsed()) return cmd_verify(arch, list_size, mode, trials, seed, net_file);
        if (lemma->parsed()) return cmd_lemma(list_size, mode, trials, seed);
        if (stream->parsed()) return cmd_stream(list_size, steps, profile, seed, arch, check, csv_path);
        if (sort_cmd->parsed()) return cmd_sort(arch, in_path);
    } catch (const std::exception& e) {
        std::cerr << "msort: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
