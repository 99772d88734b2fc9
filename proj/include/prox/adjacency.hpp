#ifndef PROX_ADJACENCY_HPP
#define PROX_ADJACENCY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

// U.S. state bordering relation (50 states + DC). AK and HI have no
// neighbors. Corner-only contacts (AZ-CO, NM-UT at Four Corners) are
// excluded unless requested.

namespace prox::adjacency {

// The 51 valid codes, sorted.
const std::vector<std::string>& state_codes();
bool is_state_code(const std::string& code);

class AdjacencyGraph {
public:
    const std::set<std::string>& neighbors(const std::string& code) const;
    bool corner_pairs_included() const { return corner_pairs_; }

    // Symmetric closure plus structural checks (irreflexive, known codes).
    static AdjacencyGraph from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                                     bool corner_pairs);

private:
    std::map<std::string, std::set<std::string>> neighbors_;
    bool corner_pairs_ = false;
};

// Bundled border table.
AdjacencyGraph load_builtin(bool include_corner_pairs = false);

// Override file: "ST1,ST2" per line, undirected, optional header.
AdjacencyGraph load_from_file(const std::string& path, bool include_corner_pairs = false);

// One-hop closure: states plus all their neighbors. Throws on unknown codes.
std::set<std::string> expand(const std::set<std::string>& states, const AdjacencyGraph& graph);

} // namespace prox::adjacency

#endif
