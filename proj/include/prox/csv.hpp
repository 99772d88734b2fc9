#ifndef PROX_CSV_HPP
#define PROX_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

// Minimal comma-splitting for the simple, unquoted CSV layouts this project
// consumes (SSA files, gazetteers, adjacency overrides).

namespace prox::csv {

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_line(std::string_view line, char delim = ',') {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

} // namespace prox::csv

#endif
