#include "pspan/dfscode.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace pspan {

std::string DfsUnit::to_string(const std::string& graph_id) const {
    std::string s = "(" + std::to_string(front_order) + "," + std::to_string(rear_order) +
                    "," + front_render + ",(" + edge_render + ")," + rear_render;
    if (!graph_id.empty()) s += "," + graph_id;
    s += ")";
    return s;
}

std::string DfsCode::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (i) s += ",";
        s += units[i].to_string(graph_id);
    }
    return s;
}

std::string DfsCode::pattern_string() const {
    std::string s;
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (i) s += ",";
        s += units[i].to_string("");
    }
    return s;
}

std::string DfsCode::key() const { return pattern_string(); }

namespace {

int cmp_str(const std::string& a, const std::string& b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

} // namespace

int compare_units(const DfsUnit& a, const DfsUnit& b) {
    if (a.front_order != b.front_order) return a.front_order < b.front_order ? -1 : 1;
    if (a.rear_order != b.rear_order) return a.rear_order < b.rear_order ? -1 : 1;
    if (int c = cmp_str(a.front_key, b.front_key)) return c;
    if (int c = cmp_str(a.edge_key, b.edge_key)) return c;
    return cmp_str(a.rear_key, b.rear_key);
}

int compare_codes(const DfsCode& a, const DfsCode& b) {
    std::size_t n = std::min(a.units.size(), b.units.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare_units(a.units[i], b.units[i])) return c;
    if (a.units.size() != b.units.size()) return a.units.size() < b.units.size() ? -1 : 1;
    return 0;
}

std::pair<std::string, std::string> edge_identification(const NetGraph& g, int edge) {
    const NgEdge& e = g.edges[edge];
    const NgNode& nu = g.nodes[e.u];
    const NgNode& nv = g.nodes[e.v];
    std::string ka = nu.key + e.key_uv + nv.key;
    std::string kb = nv.key + e.key_vu + nu.key;
    if (kb < ka)
        return {kb, nv.render + ",(" + e.render_vu + ")," + nu.render};
    return {ka, nu.render + ",(" + e.render_uv + ")," + nv.render};
}

// ---------------------------------------------------------------------------
// traversal engine
//
// The walker's current node moves across every traversed edge, backward ones
// included; when the current node runs out of untraversed edges the walker
// falls back through its own walk history.  Backward edges are always taken
// before forward ones, smallest (tagging, far-node) first.
// ---------------------------------------------------------------------------

namespace {

struct LightUnit {
    int f = 0, r = 0;
    int front_node = -1, rear_node = -1, edge = -1;
    const std::string *fk = nullptr, *ek = nullptr, *rk = nullptr;
};

int cmp_light(const LightUnit& a, const LightUnit& b) {
    if (a.f != b.f) return a.f < b.f ? -1 : 1;
    if (a.r != b.r) return a.r < b.r ? -1 : 1;
    if (int c = cmp_str(*a.fk, *b.fk)) return c;
    if (int c = cmp_str(*a.ek, *b.ek)) return c;
    return cmp_str(*a.rk, *b.rk);
}

struct Walker {
    const NetGraph& g;
    std::vector<int> order;    // node -> traversal order, -1 unvisited
    std::vector<int> by_order; // order -> node
    std::vector<char> done;    // per edge
    std::vector<int> history;  // walk path
    int current = -1;
    std::size_t traversed = 0;

    explicit Walker(const NetGraph& graph)
        : g(graph), order(graph.nodes.size(), -1), done(graph.edges.size(), 0) {}

    void start(int s) {
        std::fill(order.begin(), order.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        by_order.clear();
        history.clear();
        traversed = 0;
        order[s] = 0;
        by_order.push_back(s);
        history.push_back(s);
        current = s;
    }

    struct Applied {
        int edge, node, prev_current;
        bool fresh;
    };

    Applied apply(int e, int nb) {
        Applied a{e, nb, current, order[nb] < 0};
        done[e] = 1;
        ++traversed;
        if (a.fresh) {
            order[nb] = (int)by_order.size();
            by_order.push_back(nb);
        }
        history.push_back(nb);
        current = nb;
        return a;
    }

    void undo(const Applied& a) {
        done[a.edge] = 0;
        --traversed;
        if (a.fresh) {
            order[a.node] = -1;
            by_order.pop_back();
        }
        history.pop_back();
        current = a.prev_current;
    }
};

enum class StepKind { Done, Backward, Forward, Stuck };

// Finds the next admissible edges; may move `current` backwards through the
// history when the node is exhausted.  all_forward widens the forward choice
// to every candidate (enumeration mode).
StepKind resolve(Walker& w, bool all_forward, std::vector<std::pair<int, int>>& cands) {
    for (;;) {
        int cur = w.current;
        cands.clear();
        const std::string* min_ek = nullptr;
        const std::string* min_rk = nullptr;
        for (const auto& [e, nb] : w.g.adj[cur]) {
            if (w.done[e] || w.order[nb] < 0) continue;
            const std::string& ek = w.g.edges[e].key_from(cur);
            const std::string& rk = w.g.nodes[nb].key;
            if (!min_ek || std::tie(ek, rk) < std::tie(*min_ek, *min_rk)) {
                cands.assign(1, {e, nb});
                min_ek = &ek;
                min_rk = &rk;
            } else if (ek == *min_ek && rk == *min_rk) {
                cands.push_back({e, nb});
            }
        }
        if (!cands.empty()) return StepKind::Backward;

        min_ek = min_rk = nullptr;
        for (const auto& [e, nb] : w.g.adj[cur]) {
            if (w.done[e] || w.order[nb] >= 0) continue;
            if (all_forward) {
                cands.push_back({e, nb});
                continue;
            }
            const std::string& ek = w.g.edges[e].key_from(cur);
            const std::string& rk = w.g.nodes[nb].key;
            if (!min_ek || std::tie(ek, rk) < std::tie(*min_ek, *min_rk)) {
                cands.assign(1, {e, nb});
                min_ek = &ek;
                min_rk = &rk;
            } else if (ek == *min_ek && rk == *min_rk) {
                cands.push_back({e, nb});
            }
        }
        if (!cands.empty()) return StepKind::Forward;

        bool moved = false;
        for (int i = (int)w.history.size() - 1; i >= 0; --i) {
            int nd = w.history[i];
            bool has = false;
            for (const auto& [e, nb] : w.g.adj[nd])
                if (!w.done[e]) { has = true; break; }
            if (has) {
                w.current = nd;
                moved = true;
                break;
            }
        }
        if (!moved)
            return w.traversed == w.g.edges.size() ? StepKind::Done : StepKind::Stuck;
    }
}

LightUnit make_unit(const Walker& w, int e, int nb) {
    LightUnit u;
    u.front_node = w.current;
    u.rear_node = nb;
    u.edge = e;
    u.f = w.order[w.current];
    u.r = w.order[nb] >= 0 ? w.order[nb] : (int)w.by_order.size();
    u.fk = &w.g.nodes[w.current].key;
    u.ek = &w.g.edges[e].key_from(w.current);
    u.rk = &w.g.nodes[nb].key;
    return u;
}

DfsCode materialize(const NetGraph& g, const std::vector<LightUnit>& units) {
    DfsCode code;
    code.graph_id = g.id;
    for (const auto& lu : units) {
        DfsUnit u;
        u.front_order = lu.f;
        u.rear_order = lu.r;
        u.front_render = g.nodes[lu.front_node].render;
        u.front_key = g.nodes[lu.front_node].key;
        u.edge_render = g.edges[lu.edge].render_from(lu.front_node);
        u.edge_key = g.edges[lu.edge].key_from(lu.front_node);
        u.rear_render = g.nodes[lu.rear_node].render;
        u.rear_key = g.nodes[lu.rear_node].key;
        code.units.push_back(std::move(u));
    }
    return code;
}

void check_searchable(const NetGraph& g) {
    if (g.edges.empty())
        throw NoEdges("graph " + g.id + " has no edges");
    // connectivity over the adjacency
    std::vector<char> seen(g.nodes.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [e, nb] : g.adj[v])
            if (!seen[nb]) {
                seen[nb] = 1;
                ++count;
                stack.push_back(nb);
            }
    }
    if (count != g.nodes.size())
        throw Disconnected("graph " + g.id + " is not connected");
}

struct MinSearch {
    const NetGraph& g;
    Walker w;
    std::vector<LightUnit> cur, best;
    bool have = false;

    explicit MinSearch(const NetGraph& graph) : g(graph), w(graph) {}

    void step(bool tight) {
        std::vector<std::pair<int, int>> cands;
        StepKind k = resolve(w, false, cands);
        if (k == StepKind::Done) {
            if (!have || !tight) {
                best = cur;
                have = true;
            }
            return;
        }
        if (k == StepKind::Stuck)
            throw Disconnected("graph " + g.id + " is not connected");
        std::sort(cands.begin(), cands.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        std::size_t pos = cur.size();
        for (const auto& [e, nb] : cands) {
            LightUnit u = make_unit(w, e, nb);
            bool t2 = tight;
            if (have && t2) {
                int c = cmp_light(u, best[pos]);
                if (c > 0) continue;
                if (c < 0) t2 = false;
            }
            auto ap = w.apply(e, nb);
            cur.push_back(u);
            step(t2);
            cur.pop_back();
            w.undo(ap);
        }
    }

    DfsCode run() {
        // start anywhere the node key is minimal
        const std::string* min_key = nullptr;
        for (const auto& n : g.nodes)
            if (!min_key || n.key < *min_key) min_key = &n.key;
        for (std::size_t s = 0; s < g.nodes.size(); ++s) {
            if (g.nodes[s].key != *min_key) continue;
            w.start((int)s);
            cur.clear();
            step(true);
        }
        return materialize(g, best);
    }
};

struct EnumSearch {
    const NetGraph& g;
    Walker w;
    std::vector<LightUnit> cur;
    std::set<std::string> seen;
    std::vector<DfsCode> out;

    explicit EnumSearch(const NetGraph& graph) : g(graph), w(graph) {}

    void step() {
        std::vector<std::pair<int, int>> cands;
        StepKind k = resolve(w, true, cands);
        if (k == StepKind::Done) {
            DfsCode code = materialize(g, cur);
            if (seen.insert(code.pattern_string()).second) out.push_back(std::move(code));
            return;
        }
        if (k == StepKind::Stuck)
            throw Disconnected("graph " + g.id + " is not connected");
        std::sort(cands.begin(), cands.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        for (const auto& [e, nb] : cands) {
            LightUnit u = make_unit(w, e, nb);
            auto ap = w.apply(e, nb);
            cur.push_back(u);
            step();
            cur.pop_back();
            w.undo(ap);
        }
    }

    std::vector<DfsCode> run() {
        for (std::size_t s = 0; s < g.nodes.size(); ++s) {
            w.start((int)s);
            cur.clear();
            step();
        }
        return out;
    }
};

} // namespace

DfsCode minimal_dfs_code(const NetGraph& g) {
    check_searchable(g);
    MinSearch search(g);
    return search.run();
}

std::vector<DfsCode> enumerate_dfs_codes(const NetGraph& g, std::size_t node_guard) {
    if (g.nodes.size() > node_guard)
        throw SizeGuardExceeded("enumerate_dfs_codes guard is " + std::to_string(node_guard) +
                                " nodes");
    check_searchable(g);
    EnumSearch search(g);
    return search.run();
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) throw MalformedCode("unbalanced parentheses in: " + s);
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (depth != 0) throw MalformedCode("unbalanced parentheses in: " + s);
    parts.push_back(cur);
    return parts;
}

std::uint64_t parse_u64(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw MalformedCode("expected a number, got: " + s);
    return std::stoull(s);
}

Capacity parse_capacity(const std::string& s) {
    if (s == "inf") return Capacity::unbounded();
    return Capacity::of(parse_u64(s));
}

// leading sign of an entry/triple slot; advances pos
Sign parse_sign(const std::string& s, std::size_t& pos) {
    if (pos < s.size() && s[pos] == '+') {
        ++pos;
        return Sign::Out;
    }
    if (pos < s.size() && s[pos] == '-') {
        ++pos;
        if (pos < s.size() && s[pos] == '-') {
            ++pos;
            return Sign::InhibitIn;
        }
        return Sign::In;
    }
    throw MalformedCode("expected a sign in: " + s);
}

} // namespace

std::pair<std::string, std::vector<TagEntry>> parse_node_render(const std::string& s) {
    std::size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw MalformedCode("bad node rendering: " + s);
    std::string label = s.substr(0, open);
    if (label.empty()) throw MalformedCode("node rendering without a name: " + s);
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::vector<TagEntry> entries;
    if (inner.empty()) return {label, entries};
    for (const auto& part : split_top(inner)) {
        TagEntry t;
        std::size_t pos = 0;
        t.sign = parse_sign(part, pos);
        std::size_t paren = part.find('(', pos);
        if (paren == std::string::npos) {
            t.label = part.substr(pos);
        } else {
            if (part.back() != ')') throw MalformedCode("bad tagging entry: " + part);
            t.label = part.substr(pos, paren - pos);
            auto ann = split_top(part.substr(paren + 1, part.size() - paren - 2));
            if (ann.size() != 2) throw MalformedCode("bad tagging annotation: " + part);
            t.cap = parse_capacity(ann[0]);
            t.weight = parse_u64(ann[1]);
        }
        if (t.label.empty()) throw MalformedCode("tagging entry without a label: " + part);
        entries.push_back(std::move(t));
    }
    return {label, entries};
}

std::vector<Triple> parse_edge_render(const std::string& s) {
    std::vector<Triple> triples;
    for (const auto& part : split_top(s)) {
        if (part.size() < 2 || part.front() != '(' || part.back() != ')')
            throw MalformedCode("bad edge triple: " + part);
        auto fields = split_top(part.substr(1, part.size() - 2));
        if (fields.size() != 3) throw MalformedCode("bad edge triple: " + part);
        Triple t;
        std::size_t pos = 0;
        t.sign_front = parse_sign(fields[0], pos);
        if (pos < fields[0].size()) t.weight_front = parse_u64(fields[0].substr(pos));
        std::size_t paren = fields[1].find('(');
        if (paren == std::string::npos) {
            t.label = fields[1];
        } else {
            if (fields[1].back() != ')') throw MalformedCode("bad edge triple: " + part);
            t.label = fields[1].substr(0, paren);
            t.cap = parse_capacity(fields[1].substr(paren + 1, fields[1].size() - paren - 2));
        }
        if (t.label.empty()) throw MalformedCode("edge triple without a label: " + part);
        pos = 0;
        t.sign_rear = parse_sign(fields[2], pos);
        if (pos < fields[2].size()) t.weight_rear = parse_u64(fields[2].substr(pos));
        triples.push_back(std::move(t));
    }
    if (triples.empty()) throw MalformedCode("empty edge tagging: " + s);
    return triples;
}

DfsUnit parse_unit(const std::string& s, std::string* graph_id_out) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw MalformedCode("bad code unit: " + s);
    auto parts = split_top(s.substr(1, s.size() - 2));
    if (parts.size() != 5 && parts.size() != 6)
        throw MalformedCode("code unit needs 5 or 6 segments: " + s);
    DfsUnit u;
    u.front_order = (int)parse_u64(parts[0]);
    u.rear_order = (int)parse_u64(parts[1]);
    u.front_render = parts[2];
    if (parts[3].size() < 2 || parts[3].front() != '(' || parts[3].back() != ')')
        throw MalformedCode("bad edge segment: " + s);
    u.edge_render = parts[3].substr(1, parts[3].size() - 2);
    u.rear_render = parts[4];
    if (graph_id_out) *graph_id_out = parts.size() == 6 ? parts[5] : "";

    // keys recomputed from the parsed structures
    auto [flabel, ftag] = parse_node_render(u.front_render);
    auto [rlabel, rtag] = parse_node_render(u.rear_render);
    NgNode fn, rn;
    fn.label = flabel;
    fn.tagging = ftag;
    fn.finish();
    rn.label = rlabel;
    rn.tagging = rtag;
    rn.finish();
    u.front_key = fn.key;
    u.rear_key = rn.key;
    for (const auto& t : parse_edge_render(u.edge_render)) t.append_key(u.edge_key);
    return u;
}

NetGraph code_to_netgraph(const DfsCode& code) {
    if (code.units.empty()) throw MalformedCode("empty code");
    NetGraph ng;
    ng.id = code.graph_id;

    auto ensure_node = [&](int order, const std::string& render) -> int {
        if (order < 0) throw MalformedCode("negative traversal order");
        if (order < (int)ng.nodes.size()) {
            if (ng.nodes[order].render != render)
                throw MalformedCode("node rendering mismatch at order " +
                                    std::to_string(order));
            return order;
        }
        if (order != (int)ng.nodes.size())
            throw MalformedCode("traversal orders must be contiguous");
        auto [label, tagging] = parse_node_render(render);
        NgNode n;
        n.id = "n" + std::to_string(order);
        n.label = label;
        n.tagging = std::move(tagging);
        n.finish();
        if (n.render != render)
            throw MalformedCode("node rendering is not canonical: " + render);
        ng.nodes.push_back(std::move(n));
        return order;
    };

    const DfsUnit& first = code.units.front();
    if (first.front_order != 0 || first.rear_order != 1)
        throw MalformedCode("first unit must read (0,1,...)");

    std::set<std::pair<int, int>> edges_seen;
    for (const auto& u : code.units) {
        if (u.front_order == u.rear_order)
            throw MalformedCode("unit connects a node to itself");
        if (ng.nodes.empty()) ensure_node(0, u.front_render);
        if (u.front_order >= (int)ng.nodes.size())
            throw MalformedCode("front order not visited yet: " +
                                std::to_string(u.front_order));
        int f = ensure_node(u.front_order, u.front_render);
        if (u.rear_order > (int)ng.nodes.size())
            throw MalformedCode("rear order out of range: " + std::to_string(u.rear_order));
        int r = ensure_node(u.rear_order, u.rear_render);
        auto key = std::minmax(f, r);
        if (!edges_seen.insert({key.first, key.second}).second)
            throw MalformedCode("duplicate edge between orders " + std::to_string(f) + " and " +
                                std::to_string(r));
        NgEdge e;
        e.u = f;
        e.v = r;
        e.triples = parse_edge_render(u.edge_render);
        e.finish();
        if (e.render_uv != u.edge_render)
            throw MalformedCode("edge tagging is not canonical: " + u.edge_render);
        ng.edges.push_back(std::move(e));
    }

    std::set<std::string> universe;
    for (const auto& n : ng.nodes)
        for (const auto& t : n.tagging) universe.insert(t.label);
    ng.condition_universe.assign(universe.begin(), universe.end());
    ng.build_adj();
    return ng;
}

} // namespace pspan
