#include "pspan/netgraph.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace pspan {

const char* sign_str(Sign s) {
    switch (s) {
        case Sign::InhibitIn: return "--";
        case Sign::In: return "-";
        default: return "+";
    }
}

namespace {

// key bytes: signs as \x01..\x03 so '--' < '-' < '+' regardless of ASCII
inline char sign_key(Sign s) { return (char)((int)s + 1); }

void append_field(std::string& out, const std::string& s) {
    out += s;
    out += '\0';
}

} // namespace

void TagEntry::append_render(std::string& out) const {
    out += sign_str(sign);
    out += label;
    if (annotated()) {
        out += '(';
        out += cap.render();
        out += ',';
        out += std::to_string(weight);
        out += ')';
    }
}

void TagEntry::append_key(std::string& out) const {
    out += sign_key(sign);
    append_field(out, label);
    append_field(out, cap.render());
    append_field(out, std::to_string(weight));
}

bool tag_entry_less(const TagEntry& a, const TagEntry& b) {
    std::string ka, kb;
    a.append_key(ka);
    b.append_key(kb);
    return ka < kb;
}

Triple Triple::flipped() const {
    Triple t = *this;
    std::swap(t.sign_front, t.sign_rear);
    std::swap(t.weight_front, t.weight_rear);
    return t;
}

void Triple::append_render(std::string& out) const {
    out += '(';
    out += sign_str(sign_front);
    if (annotated()) {
        out += std::to_string(weight_front);
        out += ',';
        out += label;
        out += '(';
        out += cap.render();
        out += ')';
        out += ',';
        out += sign_str(sign_rear);
        out += std::to_string(weight_rear);
    } else {
        out += ',';
        out += label;
        out += ',';
        out += sign_str(sign_rear);
    }
    out += ')';
}

void Triple::append_key(std::string& out) const {
    // order: front sign, label, capacity, rear sign, front weight, rear weight
    out += sign_key(sign_front);
    append_field(out, label);
    append_field(out, cap.render());
    out += sign_key(sign_rear);
    append_field(out, std::to_string(weight_front));
    append_field(out, std::to_string(weight_rear));
}

bool triple_less(const Triple& a, const Triple& b) {
    std::string ka, kb;
    a.append_key(ka);
    b.append_key(kb);
    return ka < kb;
}

std::string render_tagging(const std::vector<TagEntry>& tagging) {
    std::string out = "(";
    for (std::size_t i = 0; i < tagging.size(); ++i) {
        if (i) out += ',';
        tagging[i].append_render(out);
    }
    out += ')';
    return out;
}

std::string render_node(const NgNode& n) { return n.label + render_tagging(n.tagging); }

void NgNode::finish() {
    std::sort(tagging.begin(), tagging.end(), tag_entry_less);
    render = render_node(*this);
    key.clear();
    append_field(key, label);
    for (const auto& t : tagging) t.append_key(key);
}

void NgEdge::finish() {
    std::sort(triples.begin(), triples.end(), triple_less);
    render_uv.clear();
    key_uv.clear();
    for (std::size_t i = 0; i < triples.size(); ++i) {
        if (i) render_uv += ',';
        triples[i].append_render(render_uv);
        triples[i].append_key(key_uv);
    }
    std::vector<Triple> rev;
    rev.reserve(triples.size());
    for (const auto& t : triples) rev.push_back(t.flipped());
    std::sort(rev.begin(), rev.end(), triple_less);
    render_vu.clear();
    key_vu.clear();
    for (std::size_t i = 0; i < rev.size(); ++i) {
        if (i) render_vu += ',';
        rev[i].append_render(render_vu);
        rev[i].append_key(key_vu);
    }
}

void NetGraph::build_adj() {
    adj.assign(nodes.size(), {});
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].u].push_back({(int)e, edges[e].v});
        adj[edges[e].v].push_back({(int)e, edges[e].u});
    }
}

bool NetGraph::has_edge(int a, int b) const {
    for (const auto& [e, w] : adj[a])
        if (w == b) return true;
    return false;
}

NetGraph net_to_netgraph(const Net& net) {
    validate_net(net);
    if (net.events.empty()) throw NoEvents("net " + net.id + " has no events");
    SubclassReport rep = validate_and_classify(net);
    if (!rep.pure) throw NotPure("net " + net.id + " is not pure");

    NetIndex idx(net);
    NetGraph ng;
    ng.id = net.id;
    ng.nodes.resize(net.events.size());

    std::set<std::string> universe;
    for (const auto& c : net.conditions) universe.insert(c.label);
    ng.condition_universe.assign(universe.begin(), universe.end());

    // per-event tagging from its arcs
    for (std::size_t i = 0; i < net.events.size(); ++i) {
        NgNode& n = ng.nodes[i];
        n.id = net.events[i].id;
        n.label = net.events[i].label;
        for (int ai : idx.in_arcs(n.id)) {
            const Arc& a = net.arcs[ai];
            const Condition& c = net.conditions[idx.condition_pos(a.from)];
            n.tagging.push_back({a.inhibitor ? Sign::InhibitIn : Sign::In,
                                 c.label, c.capacity, a.weight});
        }
        for (int ai : idx.out_arcs(n.id)) {
            const Arc& a = net.arcs[ai];
            const Condition& c = net.conditions[idx.condition_pos(a.to)];
            n.tagging.push_back({Sign::Out, c.label, c.capacity, a.weight});
        }
        n.finish();
    }

    // condition node -> adjacent (event pos, sign, weight)
    struct Touch {
        int ev;
        Sign sign;
        std::uint64_t weight;
    };
    std::map<std::pair<int, int>, std::vector<std::pair<const Condition*, std::array<Touch, 2>>>>
        by_pair;
    for (const auto& c : net.conditions) {
        std::vector<Touch> touches;
        for (int ai : idx.out_arcs(c.id)) {
            const Arc& a = net.arcs[ai];
            touches.push_back({idx.event_pos(a.to),
                               a.inhibitor ? Sign::InhibitIn : Sign::In, a.weight});
        }
        for (int ai : idx.in_arcs(c.id)) {
            const Arc& a = net.arcs[ai];
            touches.push_back({idx.event_pos(a.from), Sign::Out, a.weight});
        }
        for (std::size_t x = 0; x < touches.size(); ++x)
            for (std::size_t y = x + 1; y < touches.size(); ++y) {
                Touch s = touches[x], t = touches[y];
                if (s.ev == t.ev)
                    throw NotPure("condition " + c.id + " touches event twice");
                if (s.ev > t.ev) std::swap(s, t);
                by_pair[{s.ev, t.ev}].push_back({&c, {s, t}});
            }
    }

    // track which source condition feeds each (edge,label) for ambiguity checks
    std::map<std::pair<int, std::string>, const Condition*> edge_label_src;
    for (auto& [pr, conds] : by_pair) {
        NgEdge e;
        e.u = pr.first;
        e.v = pr.second;
        std::set<std::string> labels_here;
        for (auto& [cptr, touch] : conds) {
            if (!labels_here.insert(cptr->label).second)
                throw AmbiguousLabels("two conditions labelled '" + cptr->label +
                                      "' shared by the same event pair in net " + net.id);
            Triple t;
            t.sign_front = touch[0].sign;
            t.weight_front = touch[0].weight;
            t.sign_rear = touch[1].sign;
            t.weight_rear = touch[1].weight;
            t.label = cptr->label;
            t.cap = cptr->capacity;
            e.triples.push_back(t);
            edge_label_src[{(int)ng.edges.size(), cptr->label}] = cptr;
        }
        e.finish();
        ng.edges.push_back(std::move(e));
    }
    ng.build_adj();

    // a complex must originate from exactly one condition node, otherwise the
    // transform loses information and cannot be inverted
    for (const auto& label : ng.condition_universe) {
        for (const auto& complex : c_complexes(ng, label)) {
            const Condition* src = nullptr;
            for (int ei : complex) {
                auto it = edge_label_src.find({ei, label});
                if (it == edge_label_src.end()) continue;
                if (src && src != it->second)
                    throw AmbiguousLabels("conditions labelled '" + label +
                                          "' collapse into one complex in net " + net.id);
                src = it->second;
            }
        }
    }
    return ng;
}

std::vector<std::vector<int>> c_complexes(const NetGraph& ng, const std::string& label) {
    std::vector<int> carrying;
    for (std::size_t e = 0; e < ng.edges.size(); ++e)
        for (const auto& t : ng.edges[e].triples)
            if (t.label == label) { carrying.push_back((int)e); break; }
    if (carrying.empty()) return {};

    // union-find over carrying edges, joined through shared endpoints
    std::vector<int> parent(carrying.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, int> node_first; // node -> first carrying edge touching it
    for (std::size_t i = 0; i < carrying.size(); ++i) {
        for (int nd : {ng.edges[carrying[i]].u, ng.edges[carrying[i]].v}) {
            auto [it, fresh] = node_first.insert({nd, (int)i});
            if (!fresh) parent[find((int)i)] = find(it->second);
        }
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < carrying.size(); ++i)
        groups[find((int)i)].push_back(carrying[i]);
    std::vector<std::vector<int>> out;
    for (auto& [root, edges] : groups) {
        std::sort(edges.begin(), edges.end());
        out.push_back(std::move(edges));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

const Triple* triple_for(const NgEdge& e, const std::string& label) {
    for (const auto& t : e.triples)
        if (t.label == label) return &t;
    return nullptr;
}

} // namespace

Net netgraph_to_net(const NetGraph& ng) {
    if (ng.nodes.empty()) throw NoEvents("empty net graph " + ng.id);
    Net net;
    net.id = ng.id;
    for (const auto& n : ng.nodes) net.events.push_back({n.id, n.label});

    // remaining tagging occurrences per node (multiset semantics)
    struct Occ {
        Sign sign;
        Capacity cap;
        std::uint64_t weight;
        int count;
    };
    std::vector<std::map<std::string, std::vector<Occ>>> remaining(ng.nodes.size());
    for (std::size_t i = 0; i < ng.nodes.size(); ++i)
        for (const auto& t : ng.nodes[i].tagging) {
            auto& v = remaining[i][t.label];
            bool merged = false;
            for (auto& o : v)
                if (o.sign == t.sign && o.cap == t.cap && o.weight == t.weight) {
                    ++o.count;
                    merged = true;
                    break;
                }
            if (!merged) v.push_back({t.sign, t.cap, t.weight, 1});
        }

    auto consume = [&](int node, const std::string& label, Sign sign, const Capacity& cap,
                       std::uint64_t weight) {
        for (auto& o : remaining[node][label])
            if (o.count > 0 && o.sign == sign && o.cap == cap && o.weight == weight) {
                --o.count;
                return true;
            }
        return false;
    };

    int counter = 0;
    auto add_condition = [&](const std::string& label, const Capacity& cap) {
        std::string cid = "c" + std::to_string(counter++);
        net.conditions.push_back({cid, label, cap});
        return cid;
    };
    auto add_arc = [&](int node, const std::string& cid, Sign sign, std::uint64_t weight) {
        const std::string& eid = ng.nodes[node].id;
        if (sign == Sign::Out)
            net.arcs.push_back({eid, cid, weight, false});
        else
            net.arcs.push_back({cid, eid, weight, sign == Sign::InhibitIn});
    };

    // gather labels mentioned anywhere (edges may mention labels missing
    // from the declared universe; tolerate that)
    std::set<std::string> labels(ng.condition_universe.begin(), ng.condition_universe.end());
    for (const auto& n : ng.nodes)
        for (const auto& t : n.tagging) labels.insert(t.label);

    // one condition per complex
    for (const auto& label : labels) {
        for (const auto& complex : c_complexes(ng, label)) {
            // collect the per-node view; it must be consistent across edges
            std::map<int, std::pair<Sign, std::uint64_t>> at_node;
            const Capacity* cap = nullptr;
            for (int ei : complex) {
                const NgEdge& e = ng.edges[ei];
                const Triple* t = triple_for(e, label);
                if (cap && !(*cap == t->cap))
                    throw InvalidTagging("capacity conflict for '" + label + "' in graph " +
                                         ng.id);
                cap = &t->cap;
                auto put = [&](int node, Sign s, std::uint64_t w) {
                    auto [it, fresh] = at_node.insert({node, {s, w}});
                    if (!fresh && (it->second.first != s || it->second.second != w))
                        throw InvalidTagging("sign/weight conflict for '" + label +
                                             "' at node " + ng.nodes[node].id + " in graph " +
                                             ng.id);
                };
                put(e.u, t->sign_front, t->weight_front);
                put(e.v, t->sign_rear, t->weight_rear);
            }
            std::string cid = add_condition(label, *cap);
            for (const auto& [node, sw] : at_node) {
                if (!consume(node, label, sw.first, *cap, sw.second))
                    throw InvalidTagging("node " + ng.nodes[node].id +
                                         " tagging misses shared condition '" + label + "'");
                add_arc(node, cid, sw.first, sw.second);
            }
        }
    }

    // leftovers are private conditions of their event
    for (std::size_t i = 0; i < ng.nodes.size(); ++i)
        for (auto& [label, occs] : remaining[i])
            for (auto& o : occs)
                while (o.count-- > 0) {
                    std::string cid = add_condition(label, o.cap);
                    add_arc((int)i, cid, o.sign, o.weight);
                }

    validate_net(net);
    return net;
}

std::vector<Violation> validate_netgraph(const NetGraph& ng) {
    std::vector<Violation> out;
    std::set<std::pair<int, int>> pairs;
    for (std::size_t ei = 0; ei < ng.edges.size(); ++ei) {
        const NgEdge& e = ng.edges[ei];
        std::string where = "edge " + std::to_string(ei);
        if (e.u < 0 || e.v < 0 || e.u >= (int)ng.nodes.size() || e.v >= (int)ng.nodes.size()) {
            out.push_back({"BadEndpoint", where});
            continue;
        }
        if (e.u == e.v) out.push_back({"SelfLoop", where});
        if (!pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
            out.push_back({"DuplicateEdge", where});
        if (e.triples.empty()) out.push_back({"EmptyEdgeTagging", where});
        std::set<std::string> seen;
        for (const auto& t : e.triples)
            if (!seen.insert(t.label).second)
                out.push_back({"DuplicateLabelOnEdge", where + " label " + t.label});
        for (std::size_t i = 1; i < e.triples.size(); ++i)
            if (triple_less(e.triples[i], e.triples[i - 1])) {
                out.push_back({"UnsortedEdgeTagging", where});
                break;
            }
    }
    for (std::size_t ni = 0; ni < ng.nodes.size(); ++ni) {
        const NgNode& n = ng.nodes[ni];
        for (std::size_t i = 1; i < n.tagging.size(); ++i)
            if (tag_entry_less(n.tagging[i], n.tagging[i - 1])) {
                out.push_back({"UnsortedNodeTagging", "node " + n.id});
                break;
            }
    }

    // every edge occurrence of a label must be backed by a node entry, and
    // all edges of one complex must agree per node (sign, weight, capacity)
    std::set<std::string> labels;
    for (const auto& e : ng.edges)
        for (const auto& t : e.triples) labels.insert(t.label);
    for (const auto& label : labels) {
        for (const auto& complex : c_complexes(ng, label)) {
            std::map<int, std::pair<Sign, std::uint64_t>> at_node;
            const Capacity* cap = nullptr;
            for (int ei : complex) {
                const Triple* t = triple_for(ng.edges[ei], label);
                if (cap && !(*cap == t->cap))
                    out.push_back({"CapacityConflict",
                                   "label " + label + " edge " + std::to_string(ei)});
                cap = &t->cap;
                auto chk = [&](int node, Sign s, std::uint64_t w) {
                    auto [it, fresh] = at_node.insert({node, {s, w}});
                    if (!fresh && (it->second.first != s || it->second.second != w))
                        out.push_back({"SignConflict",
                                       "label " + label + " at node " + ng.nodes[node].id});
                };
                chk(ng.edges[ei].u, t->sign_front, t->weight_front);
                chk(ng.edges[ei].v, t->sign_rear, t->weight_rear);
            }
            for (const auto& [node, sw] : at_node) {
                bool backed = false;
                for (const auto& te : ng.nodes[node].tagging)
                    if (te.label == label && te.sign == sw.first && te.weight == sw.second &&
                        (cap == nullptr || te.cap == *cap)) {
                        backed = true;
                        break;
                    }
                if (!backed)
                    out.push_back({"MissingNodeEntry",
                                   "label " + label + " at node " + ng.nodes[node].id});
            }
        }
    }
    return out;
}

} // namespace pspan
