#ifndef PSPAN_DFSCODE_HPP
#define PSPAN_DFSCODE_HPP

#include <string>
#include <vector>

#include "pspan/netgraph.hpp"

namespace pspan {

// One six-segment code unit.  Renders carry the user-facing grammar,
// keys the comparison encoding ('-' before '+', prefix-smaller).
struct DfsUnit {
    int front_order = 0;
    int rear_order = 0;
    std::string front_render, front_key;
    std::string edge_render, edge_key; // triple list without outer parens
    std::string rear_render, rear_key;

    bool forward() const { return rear_order > front_order; }
    std::string to_string(const std::string& graph_id) const; // gid "" omitted
};

struct DfsCode {
    std::vector<DfsUnit> units;
    std::string graph_id;

    std::string to_string() const;          // with graph id when set
    std::string pattern_string() const;     // always without graph id
    std::string key() const;                // comparison key of the whole code
};

// Segment-by-segment order: front_order, rear_order, front node, edge
// tagging, rear node.  The graph id never participates.
int compare_units(const DfsUnit& a, const DfsUnit& b);

// Unit-wise comparison; a proper prefix sorts before its extensions.
int compare_codes(const DfsCode& a, const DfsCode& b);

// Canonical (direction-normalised) identification of one edge: the
// lexicographically smaller of the two (front, tagging, rear) readings.
// Returned as (key, render) where render is "front,(tagging),rear".
std::pair<std::string, std::string> edge_identification(const NetGraph& g, int edge);

// Minimal DFS code of a connected net graph with >=1 edge.
// Branches on residual ties, so the result is the minimum over every
// admissible traversal.  Throws NoEdges / Disconnected.
DfsCode minimal_dfs_code(const NetGraph& g);

// Every DFS code produced by an admissible traversal (any start node, any
// forward choice; backward edges are forced before forward ones).
// Guarded: throws SizeGuardExceeded above `node_guard` nodes.
std::vector<DfsCode> enumerate_dfs_codes(const NetGraph& g, std::size_t node_guard = 8);

// Rebuild the net graph a code describes.  Throws MalformedCode on
// inconsistent orders or renderings.
NetGraph code_to_netgraph(const DfsCode& code);

// Parsers for the rendering grammar (used by code_to_netgraph and the
// results reader).  Throw MalformedCode on syntax errors.
std::pair<std::string, std::vector<TagEntry>> parse_node_render(const std::string& s);
std::vector<Triple> parse_edge_render(const std::string& s); // without outer parens
DfsUnit parse_unit(const std::string& s, std::string* graph_id_out = nullptr);

} // namespace pspan

#endif
