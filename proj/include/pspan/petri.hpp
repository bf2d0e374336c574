#ifndef PSPAN_PETRI_HPP
#define PSPAN_PETRI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pspan/errors.hpp"

namespace pspan {

// Place capacity: either a finite count or unbounded (the default).
struct Capacity {
    bool finite = false;
    std::uint64_t value = 0;

    static Capacity unbounded() { return {}; }
    static Capacity of(std::uint64_t v) { return {true, v}; }

    bool is_default() const { return !finite; }
    std::string render() const { return finite ? std::to_string(value) : "inf"; }

    friend bool operator==(const Capacity& a, const Capacity& b) {
        return a.finite == b.finite && (!a.finite || a.value == b.value);
    }
};

struct Condition {
    std::string id;
    std::string label;
    Capacity capacity; // unbounded unless annotated
};

struct Event {
    std::string id;
    std::string label;
};

// Directed arc between a condition and an event (either way round).
// weight defaults to 1; inhibitor arcs must run condition -> event.
struct Arc {
    std::string from;
    std::string to;
    std::uint64_t weight = 1;
    bool inhibitor = false;
};

struct Net {
    std::string id;
    std::vector<Condition> conditions;
    std::vector<Event> events;
    std::vector<Arc> arcs;
};

// Side classification flags for a net.
struct SubclassReport {
    bool pure = false;
    bool connected = false;
    bool strongly_connected = false; // implies connected
    bool s_graph = false;      // every event has exactly one input and one output
    bool t_graph = false;      // every condition has exactly one input and one output
    bool free_choice = false;  // events sharing an input condition have just that input
    bool occurrence_net = false; // acyclic, conditions unbranched
};

// Quick lookup tables over an (already validated) net.
class NetIndex {
public:
    explicit NetIndex(const Net& net);

    const Net& net() const { return *net_; }
    bool is_condition(const std::string& id) const;
    bool is_event(const std::string& id) const;
    int condition_pos(const std::string& id) const; // -1 when absent
    int event_pos(const std::string& id) const;

    // arc indexes entering / leaving the node
    const std::vector<int>& in_arcs(const std::string& id) const;
    const std::vector<int>& out_arcs(const std::string& id) const;

private:
    const Net* net_;
    std::map<std::string, int> cond_pos_;
    std::map<std::string, int> event_pos_;
    std::map<std::string, std::vector<int>> in_;
    std::map<std::string, std::vector<int>> out_;
    std::vector<int> empty_;
};

// Structural validation: unique ids, arcs reference existing nodes, arcs
// connect a condition with an event, inhibitor arcs run condition->event,
// no duplicate (from,to) pair.  Throws MalformedNet / InvalidInhibitor.
void validate_net(const Net& net);

// validate_net + the SubclassReport flags.
SubclassReport validate_and_classify(const Net& net);

// Preset and postset (ids) of one node.  Throws UnknownNode.
std::pair<std::set<std::string>, std::set<std::string>>
adjacency(const Net& net, const std::string& node_id);

// Induced subnet over the chosen events: keeps every condition adjacent to a
// chosen event and every arc between chosen events and kept conditions.
// Throws UnknownNode for ids that are not events of the net.
Net complete_closure(const Net& net, const std::set<std::string>& event_ids);

// True when the undirected arc graph of the net is connected
// (single node counts as connected).
bool is_connected(const Net& net);

// Label-preserving isomorphism on (conditions + events + arcs), including
// capacities, weights and inhibitor flags.  Guarded: throws
// SizeGuardExceeded when either side has more than `event_guard` events.
bool labeled_isomorphic(const Net& a, const Net& b, std::size_t event_guard = 32);

} // namespace pspan

#endif
