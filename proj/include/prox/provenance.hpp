#ifndef PROX_PROVENANCE_HPP
#define PROX_PROVENANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

// Every CLI output carries a provenance block (config hash, input file
// digests, seed) so runs can be reproduced exactly.

namespace prox::provenance {

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(const std::string& text);
std::uint64_t fnv1a64_file(const std::string& path); // throws on missing file

std::string hex64(std::uint64_t value);

struct Block {
    std::string tool;                                        // subcommand name
    std::string config_text;                                 // canonical config
    std::vector<std::pair<std::string, std::string>> inputs; // path -> digest
    std::vector<std::string> notes;                          // rule provenance etc.
    std::uint64_t seed = 0;
    bool has_seed = false;

    void add_input(const std::string& path);
    void note(const std::string& line) { notes.push_back(line); }

    // "# "-prefixed header lines.
    std::string render(const std::string& comment_prefix = "# ") const;
};

} // namespace prox::provenance

#endif
