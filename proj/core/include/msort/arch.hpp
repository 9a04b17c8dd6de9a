#pragma once

#include <optional>
#include <string_view>

namespace msort {

/// The six sorter architectures. The first four are staged CAS networks,
/// the last two are comparator-matrix rank selectors.
enum class Architecture {
    Bitonic,
    PrunedBitonic,
    Bubble,
    SimplifiedBubble,
    Radix,
    PrunedRadix,
};

constexpr std::string_view to_string(Architecture a) {
    switch (a) {
        case Architecture::Bitonic: return "bitonic";
        case Architecture::PrunedBitonic: return "pruned-bitonic";
        case Architecture::Bubble: return "bubble";
        case Architecture::SimplifiedBubble: return "simplified-bubble";
        case Architecture::Radix: return "radix";
        case Architecture::PrunedRadix: return "pruned-radix";
    }
    return "?";
}

constexpr std::optional<Architecture> parse_architecture(std::string_view name) {
    for (Architecture a : {Architecture::Bitonic, Architecture::PrunedBitonic, Architecture::Bubble,
                           Architecture::SimplifiedBubble, Architecture::Radix,
                           Architecture::PrunedRadix})
        if (name == to_string(a)) return a;
    return std::nullopt;
}

constexpr bool is_network(Architecture a) {
    return a != Architecture::Radix && a != Architecture::PrunedRadix;
}

/// Architectures whose correctness contract covers only structured inputs.
/// The full bitonic sorts anything; everything else leans on the list
/// properties.
constexpr bool requires_structured_input(Architecture a) { return a != Architecture::Bitonic; }

}  // namespace msort
