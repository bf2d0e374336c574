#ifndef PSPAN_NETGRAPH_HPP
#define PSPAN_NETGRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pspan/petri.hpp"

namespace pspan {

// Sign of a condition relative to an event.  Ordering: '--' < '-' < '+'.
enum class Sign : std::uint8_t {
    InhibitIn = 0, // inhibitor arc condition -> event, rendered "--"
    In = 1,        // arc condition -> event, rendered "-"
    Out = 2,       // arc event -> condition, rendered "+"
};

const char* sign_str(Sign s);

// One signed condition in a node tagging.
struct TagEntry {
    Sign sign = Sign::In;
    std::string label;
    Capacity cap;              // annotation; unbounded by default
    std::uint64_t weight = 1;  // annotation; 1 by default

    bool annotated() const { return cap.finite || weight != 1; }
    void append_render(std::string& out) const;
    void append_key(std::string& out) const;
};

// One shared condition on an edge, oriented front -> rear.
struct Triple {
    Sign sign_front = Sign::In;
    Sign sign_rear = Sign::In;
    std::string label;
    Capacity cap;
    std::uint64_t weight_front = 1;
    std::uint64_t weight_rear = 1;

    bool annotated() const {
        return cap.finite || weight_front != 1 || weight_rear != 1;
    }
    Triple flipped() const;
    void append_render(std::string& out) const;
    void append_key(std::string& out) const;
};

struct NgNode {
    std::string id;    // event id in the source net
    std::string label; // event label
    std::vector<TagEntry> tagging; // sorted
    std::string render; // label(entry,entry,...)
    std::string key;    // comparison key (memcmp order == tagging order)

    void finish(); // sorts tagging, fills render/key
};

struct NgEdge {
    int u = -1;
    int v = -1;
    std::vector<Triple> triples; // oriented front=u, sorted
    std::string render_uv, render_vu; // triple,(triple),... without outer parens
    std::string key_uv, key_vu;

    void finish();
    const std::string& render_from(int node) const { return node == u ? render_uv : render_vu; }
    const std::string& key_from(int node) const { return node == u ? key_uv : key_vu; }
    int other(int node) const { return node == u ? v : u; }
};

struct NetGraph {
    std::string id;
    std::vector<NgNode> nodes;
    std::vector<NgEdge> edges;
    std::vector<std::string> condition_universe; // sorted distinct labels
    // node -> list of (edge index, neighbour node index)
    std::vector<std::vector<std::pair<int, int>>> adj;

    void build_adj();
    bool has_edge(int a, int b) const;
};

// Rendering helpers shared with the code layer.
std::string render_tagging(const std::vector<TagEntry>& tagging); // "(-a,+b)"
std::string render_node(const NgNode& n);                         // "v(-a,+b)"

// Sort predicates (extended keys: sign, label, capacity, weight).
bool tag_entry_less(const TagEntry& a, const TagEntry& b);
bool triple_less(const Triple& a, const Triple& b);

// Net -> net graph.  Throws NoEvents / NotPure / MalformedNet, and
// AmbiguousLabels when two same-labelled condition nodes would collapse
// into a single edge or complex (the transform is not invertible then).
NetGraph net_to_netgraph(const Net& net);

// A maximal connected set of edges all carrying `label`; each complex
// stands for exactly one condition node.
std::vector<std::vector<int>> c_complexes(const NetGraph& ng, const std::string& label);

// Net graph -> net (inverse transform, fresh condition ids).
// Throws InvalidTagging when taggings are inconsistent.
Net netgraph_to_net(const NetGraph& ng);

struct Violation {
    std::string rule;  // e.g. "EmptyEdgeTagging"
    std::string where; // human-readable location
};

// Structural + tagging-consistency checks; empty result means valid.
std::vector<Violation> validate_netgraph(const NetGraph& ng);

} // namespace pspan

#endif
