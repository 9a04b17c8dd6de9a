#include "msort/metric_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace msort {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::invalid_argument("metric list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

MetricFile read_metric_list(std::istream& in) {
    MetricFile file;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) fail(1, "missing header");
    ++line_no;
    {
        std::istringstream header(line);
        std::string l_field, q_field;
        if (!(header >> l_field >> q_field) || l_field.rfind("L=", 0) != 0 ||
            q_field.rfind("Q=", 0) != 0)
            fail(line_no, "expected header 'L=<n> Q=<q>'");
        try {
            file.list_size = static_cast<std::uint32_t>(std::stoul(l_field.substr(2)));
            file.q_bits = static_cast<unsigned>(std::stoul(q_field.substr(2)));
        } catch (const std::exception&) {
            fail(line_no, "header values are not numbers");
        }
        if (file.list_size < 2) fail(line_no, "L must be at least 2");
        if (file.q_bits == 0 || file.q_bits > 31) fail(line_no, "Q must be in 1..31");
    }

    const KeyDomain domain{file.q_bits};
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::uint32_t key = 0, payload = 0;
        if (!(fields >> key >> payload)) fail(line_no, "expected '<key> <payload>'");
        std::string extra;
        if (fields >> extra) fail(line_no, "trailing fields");
        if (!domain.contains(MetricKey{key})) fail(line_no, "key outside the Q-bit domain");
        file.entries.push_back({MetricKey{key}, payload});
    }

    if (file.entries.size() != 2 * std::size_t{file.list_size})
        throw std::invalid_argument("metric list: expected " +
                                    std::to_string(2 * file.list_size) + " entries, found " +
                                    std::to_string(file.entries.size()));
    return file;
}

void write_metric_list(std::ostream& out, const MetricFile& file) {
    out << "L=" << file.list_size << " Q=" << file.q_bits << "\n";
    for (const MetricEntry& e : file.entries) out << e.key.value << " " << e.payload << "\n";
}

}  // namespace msort
