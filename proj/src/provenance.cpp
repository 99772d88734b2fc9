#include "prox/provenance.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prox::provenance {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& text) {
    return fnv1a64(text.data(), text.size());
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("provenance: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    return fnv1a64(bytes.data(), bytes.size());
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

void Block::add_input(const std::string& path) {
    inputs.emplace_back(path, hex64(fnv1a64_file(path)));
}

std::string Block::render(const std::string& p) const {
    std::ostringstream out;
    out << p << "tool: " << tool << "\n";
    if (!config_text.empty())
        out << p << "config-hash: " << hex64(fnv1a64(config_text)) << "\n";
    for (const auto& [path, digest] : inputs)
        out << p << "input: " << path << " fnv1a64=" << digest << "\n";
    if (has_seed)
        out << p << "seed: " << seed << "\n";
    for (const auto& line : notes)
        out << p << line << "\n";
    return out.str();
}

} // namespace prox::provenance
