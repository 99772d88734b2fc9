#include "prox/adjacency.hpp"

#include "prox/csv.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace prox::adjacency {

const std::vector<std::string>& state_codes() {
    static const std::vector<std::string> codes = {
        "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DC", "DE", "FL", "GA",
        "HI", "IA", "ID", "IL", "IN", "KS", "KY", "LA", "MA", "MD", "ME",
        "MI", "MN", "MO", "MS", "MT", "NC", "ND", "NE", "NH", "NJ", "NM",
        "NV", "NY", "OH", "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX",
        "UT", "VA", "VT", "WA", "WI", "WV", "WY"};
    return codes;
}

bool is_state_code(const std::string& code) {
    const auto& codes = state_codes();
    return std::binary_search(codes.begin(), codes.end(), code);
}

namespace {

// Shared land-boundary segments. Water-only contacts (e.g. MI-MN across Lake
// Superior) are not borders; DC borders MD and VA.
const std::vector<std::pair<const char*, const char*>>& builtin_borders() {
    static const std::vector<std::pair<const char*, const char*>> pairs = {
        {"AL", "FL"}, {"AL", "GA"}, {"AL", "MS"}, {"AL", "TN"},
        {"AR", "LA"}, {"AR", "MO"}, {"AR", "MS"}, {"AR", "OK"}, {"AR", "TN"}, {"AR", "TX"},
        {"AZ", "CA"}, {"AZ", "NM"}, {"AZ", "NV"}, {"AZ", "UT"},
        {"CA", "NV"}, {"CA", "OR"},
        {"CO", "KS"}, {"CO", "NE"}, {"CO", "NM"}, {"CO", "OK"}, {"CO", "UT"}, {"CO", "WY"},
        {"CT", "MA"}, {"CT", "NY"}, {"CT", "RI"},
        {"DC", "MD"}, {"DC", "VA"},
        {"DE", "MD"}, {"DE", "NJ"}, {"DE", "PA"},
        {"FL", "GA"},
        {"GA", "NC"}, {"GA", "SC"}, {"GA", "TN"},
        {"IA", "IL"}, {"IA", "MN"}, {"IA", "MO"}, {"IA", "NE"}, {"IA", "SD"}, {"IA", "WI"},
        {"ID", "MT"}, {"ID", "NV"}, {"ID", "OR"}, {"ID", "UT"}, {"ID", "WA"}, {"ID", "WY"},
        {"IL", "IN"}, {"IL", "KY"}, {"IL", "MO"}, {"IL", "WI"},
        {"IN", "KY"}, {"IN", "MI"}, {"IN", "OH"},
        {"KS", "MO"}, {"KS", "NE"}, {"KS", "OK"},
        {"KY", "MO"}, {"KY", "OH"}, {"KY", "TN"}, {"KY", "VA"}, {"KY", "WV"},
        {"LA", "MS"}, {"LA", "TX"},
        {"MA", "NH"}, {"MA", "NY"}, {"MA", "RI"}, {"MA", "VT"},
        {"MD", "PA"}, {"MD", "VA"}, {"MD", "WV"},
        {"ME", "NH"},
        {"MI", "OH"}, {"MI", "WI"},
        {"MN", "ND"}, {"MN", "SD"}, {"MN", "WI"},
        {"MO", "NE"}, {"MO", "OK"}, {"MO", "TN"},
        {"MS", "TN"},
        {"MT", "ND"}, {"MT", "SD"}, {"MT", "WY"},
        {"NC", "SC"}, {"NC", "TN"}, {"NC", "VA"},
        {"ND", "SD"},
        {"NE", "SD"}, {"NE", "WY"},
        {"NH", "VT"},
        {"NJ", "NY"}, {"NJ", "PA"},
        {"NM", "OK"}, {"NM", "TX"},
        {"NV", "OR"}, {"NV", "UT"},
        {"NY", "PA"}, {"NY", "VT"},
        {"OH", "PA"}, {"OH", "WV"},
        {"OK", "TX"},
        {"OR", "WA"},
        {"PA", "WV"},
        {"SD", "WY"},
        {"TN", "VA"},
        {"UT", "WY"},
        {"VA", "WV"},
    };
    return pairs;
}

// Four Corners point contacts.
const std::vector<std::pair<const char*, const char*>>& corner_pairs() {
    static const std::vector<std::pair<const char*, const char*>> pairs = {
        {"AZ", "CO"}, {"NM", "UT"}};
    return pairs;
}

} // namespace

AdjacencyGraph AdjacencyGraph::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs, bool include_corners) {
    AdjacencyGraph g;
    g.corner_pairs_ = include_corners;
    for (const auto& code : state_codes())
        g.neighbors_[code]; // every unit present, possibly isolated (AK, HI)

    auto add = [&](const std::string& a, const std::string& b) {
        if (!is_state_code(a) || !is_state_code(b))
            throw std::runtime_error("adjacency: unknown state code '" +
                                     (is_state_code(a) ? b : a) + "'");
        if (a == b)
            throw std::runtime_error("adjacency: self-border " + a);
        g.neighbors_[a].insert(b);
        g.neighbors_[b].insert(a);
    };
    for (const auto& [a, b] : pairs)
        add(a, b);
    if (include_corners)
        for (const auto& [a, b] : corner_pairs())
            add(a, b);

    // Structural invariants: symmetric by construction; check irreflexive
    // and that the non-contiguous units stayed isolated in the builtin path.
    for (const auto& [code, nbrs] : g.neighbors_)
        if (nbrs.count(code))
            throw std::runtime_error("adjacency: reflexive entry " + code);
    return g;
}

const std::set<std::string>& AdjacencyGraph::neighbors(const std::string& code) const {
    auto it = neighbors_.find(code);
    if (it == neighbors_.end())
        throw std::invalid_argument("adjacency: unknown state code '" + code + "'");
    return it->second;
}

AdjacencyGraph load_builtin(bool include_corner_pairs) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(builtin_borders().size());
    for (const auto& [a, b] : builtin_borders())
        pairs.emplace_back(a, b);
    return AdjacencyGraph::from_pairs(pairs, include_corner_pairs);
}

AdjacencyGraph load_from_file(const std::string& path, bool include_corner_pairs) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("adjacency: cannot open " + path);

    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::string t = csv::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = csv::split_line(t);
        if (fields.size() != 2)
            throw std::runtime_error("adjacency: bad line '" + t + "' in " + path);
        if (first && !is_state_code(fields[0]) && !is_state_code(fields[1])) {
            first = false; // header row
            continue;
        }
        first = false;
        pairs.emplace_back(fields[0], fields[1]);
    }
    return AdjacencyGraph::from_pairs(pairs, include_corner_pairs);
}

std::set<std::string> expand(const std::set<std::string>& states, const AdjacencyGraph& graph) {
    std::set<std::string> out = states;
    for (const auto& code : states) {
        const auto& nbrs = graph.neighbors(code); // validates the code
        out.insert(nbrs.begin(), nbrs.end());
    }
    return out;
}

} // namespace prox::adjacency
