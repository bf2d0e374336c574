#include "pspan/petri.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

namespace pspan {

NetIndex::NetIndex(const Net& net) : net_(&net) {
    for (std::size_t i = 0; i < net.conditions.size(); ++i)
        cond_pos_[net.conditions[i].id] = (int)i;
    for (std::size_t i = 0; i < net.events.size(); ++i)
        event_pos_[net.events[i].id] = (int)i;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        out_[net.arcs[i].from].push_back((int)i);
        in_[net.arcs[i].to].push_back((int)i);
    }
}

bool NetIndex::is_condition(const std::string& id) const { return cond_pos_.count(id) > 0; }
bool NetIndex::is_event(const std::string& id) const { return event_pos_.count(id) > 0; }

int NetIndex::condition_pos(const std::string& id) const {
    auto it = cond_pos_.find(id);
    return it == cond_pos_.end() ? -1 : it->second;
}

int NetIndex::event_pos(const std::string& id) const {
    auto it = event_pos_.find(id);
    return it == event_pos_.end() ? -1 : it->second;
}

const std::vector<int>& NetIndex::in_arcs(const std::string& id) const {
    auto it = in_.find(id);
    return it == in_.end() ? empty_ : it->second;
}

const std::vector<int>& NetIndex::out_arcs(const std::string& id) const {
    auto it = out_.find(id);
    return it == out_.end() ? empty_ : it->second;
}

void validate_net(const Net& net) {
    std::set<std::string> ids;
    for (const auto& c : net.conditions) {
        if (c.id.empty()) throw MalformedNet("condition with empty id in net " + net.id);
        if (!ids.insert(c.id).second) throw MalformedNet("duplicate node id " + c.id);
        if (c.label.empty()) throw MalformedNet("condition " + c.id + " has empty label");
        if (c.label.find_first_of("(),+-") != std::string::npos)
            throw MalformedNet("condition label contains reserved character: " + c.label);
    }
    for (const auto& e : net.events) {
        if (e.id.empty()) throw MalformedNet("event with empty id in net " + net.id);
        if (!ids.insert(e.id).second) throw MalformedNet("duplicate node id " + e.id);
        if (e.label.empty()) throw MalformedNet("event " + e.id + " has empty label");
        if (e.label.find_first_of("(),+-") != std::string::npos)
            throw MalformedNet("event label contains reserved character: " + e.label);
    }
    NetIndex idx(net);
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& a : net.arcs) {
        bool from_c = idx.is_condition(a.from);
        bool from_e = idx.is_event(a.from);
        bool to_c = idx.is_condition(a.to);
        bool to_e = idx.is_event(a.to);
        if (!(from_c || from_e)) throw MalformedNet("arc from unknown node " + a.from);
        if (!(to_c || to_e)) throw MalformedNet("arc to unknown node " + a.to);
        if (!((from_c && to_e) || (from_e && to_c)))
            throw MalformedNet("arc must connect a condition and an event: " +
                               a.from + " -> " + a.to);
        if (a.weight == 0) throw MalformedNet("arc with zero weight: " + a.from + " -> " + a.to);
        if (a.inhibitor && !(from_c && to_e))
            throw InvalidInhibitor("inhibitor arc must run condition -> event: " +
                                   a.from + " -> " + a.to);
        if (!seen.insert({a.from, a.to}).second)
            throw MalformedNet("duplicate arc " + a.from + " -> " + a.to);
    }
}

bool is_connected(const Net& net) {
    std::size_t n = net.conditions.size() + net.events.size();
    if (n <= 1) return true;
    std::map<std::string, std::vector<std::string>> nbr;
    for (const auto& a : net.arcs) {
        nbr[a.from].push_back(a.to);
        nbr[a.to].push_back(a.from);
    }
    std::set<std::string> visited;
    std::vector<std::string> stack;
    stack.push_back(net.conditions.empty() ? net.events[0].id : net.conditions[0].id);
    visited.insert(stack.back());
    while (!stack.empty()) {
        std::string cur = stack.back();
        stack.pop_back();
        for (const auto& w : nbr[cur])
            if (visited.insert(w).second) stack.push_back(w);
    }
    return visited.size() == n;
}

SubclassReport validate_and_classify(const Net& net) {
    validate_net(net);
    NetIndex idx(net);
    SubclassReport r;

    // purity: no condition/event pair connected in both directions
    r.pure = true;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& a : net.arcs) pairs.insert({a.from, a.to});
    for (const auto& a : net.arcs)
        if (pairs.count({a.to, a.from})) { r.pure = false; break; }

    r.s_graph = true;
    for (const auto& e : net.events)
        if (idx.in_arcs(e.id).size() != 1 || idx.out_arcs(e.id).size() != 1) {
            r.s_graph = false;
            break;
        }

    r.t_graph = true;
    for (const auto& c : net.conditions)
        if (idx.in_arcs(c.id).size() != 1 || idx.out_arcs(c.id).size() != 1) {
            r.t_graph = false;
            break;
        }

    // free choice: whenever events share an input condition, that condition
    // is the only input of each of them
    r.free_choice = true;
    for (const auto& c : net.conditions) {
        if (idx.out_arcs(c.id).size() < 2) continue;
        for (int ai : idx.out_arcs(c.id))
            if (idx.in_arcs(net.arcs[ai].to).size() != 1) {
                r.free_choice = false;
                break;
            }
        if (!r.free_choice) break;
    }

    // occurrence net: conditions unbranched and no directed cycle
    r.occurrence_net = true;
    for (const auto& c : net.conditions)
        if (idx.in_arcs(c.id).size() > 1 || idx.out_arcs(c.id).size() > 1) {
            r.occurrence_net = false;
            break;
        }
    if (r.occurrence_net) {
        // colors: 0 unseen, 1 on stack, 2 done
        std::map<std::string, int> color;
        std::function<bool(const std::string&)> has_cycle = [&](const std::string& v) {
            color[v] = 1;
            for (int ai : idx.out_arcs(v)) {
                const std::string& w = net.arcs[ai].to;
                int c = color.count(w) ? color[w] : 0;
                if (c == 1) return true;
                if (c == 0 && has_cycle(w)) return true;
            }
            color[v] = 2;
            return false;
        };
        for (const auto& c : net.conditions)
            if (!color.count(c.id) && has_cycle(c.id)) { r.occurrence_net = false; break; }
        for (const auto& e : net.events)
            if (r.occurrence_net && !color.count(e.id) && has_cycle(e.id)) {
                r.occurrence_net = false;
                break;
            }
    }

    r.connected = is_connected(net);

    // strong connectivity: one forward and one backward reachability sweep
    std::size_t n = net.conditions.size() + net.events.size();
    if (n <= 1) {
        r.strongly_connected = true;
    } else if (!r.connected) {
        r.strongly_connected = false;
    } else {
        auto sweep = [&](bool forward) {
            std::map<std::string, std::vector<std::string>> nbr;
            for (const auto& a : net.arcs)
                forward ? nbr[a.from].push_back(a.to) : nbr[a.to].push_back(a.from);
            std::set<std::string> visited;
            std::vector<std::string> stack;
            stack.push_back(net.conditions.empty() ? net.events[0].id
                                                   : net.conditions[0].id);
            visited.insert(stack.back());
            while (!stack.empty()) {
                std::string cur = stack.back();
                stack.pop_back();
                for (const auto& w : nbr[cur])
                    if (visited.insert(w).second) stack.push_back(w);
            }
            return visited.size() == n;
        };
        r.strongly_connected = sweep(true) && sweep(false);
    }
    return r;
}

std::pair<std::set<std::string>, std::set<std::string>>
adjacency(const Net& net, const std::string& node_id) {
    NetIndex idx(net);
    if (!idx.is_condition(node_id) && !idx.is_event(node_id))
        throw UnknownNode(node_id + " in net " + net.id);
    std::set<std::string> pre, post;
    for (int ai : idx.in_arcs(node_id)) pre.insert(net.arcs[ai].from);
    for (int ai : idx.out_arcs(node_id)) post.insert(net.arcs[ai].to);
    return {pre, post};
}

Net complete_closure(const Net& net, const std::set<std::string>& event_ids) {
    NetIndex idx(net);
    for (const auto& id : event_ids)
        if (!idx.is_event(id)) throw UnknownNode(id + " is not an event of net " + net.id);

    std::set<std::string> kept_conditions;
    for (const auto& id : event_ids) {
        for (int ai : idx.in_arcs(id)) kept_conditions.insert(net.arcs[ai].from);
        for (int ai : idx.out_arcs(id)) kept_conditions.insert(net.arcs[ai].to);
    }

    Net out;
    out.id = net.id + "#closure";
    for (const auto& c : net.conditions)
        if (kept_conditions.count(c.id)) out.conditions.push_back(c);
    for (const auto& e : net.events)
        if (event_ids.count(e.id)) out.events.push_back(e);
    for (const auto& a : net.arcs) {
        bool keep = (event_ids.count(a.from) && kept_conditions.count(a.to)) ||
                    (event_ids.count(a.to) && kept_conditions.count(a.from));
        if (keep) out.arcs.push_back(a);
    }
    return out;
}

namespace {

// What an event looks like locally: label + multiset of signed neighbours.
std::string event_signature(const Net& net, const NetIndex& idx, const Event& e) {
    std::vector<std::string> parts;
    for (int ai : idx.in_arcs(e.id)) {
        const Arc& a = net.arcs[ai];
        int cp = idx.condition_pos(a.from);
        const Condition& c = net.conditions[cp];
        parts.push_back((a.inhibitor ? "--" : "-") + c.label + "\x01" + c.capacity.render() +
                        "\x01" + std::to_string(a.weight));
    }
    for (int ai : idx.out_arcs(e.id)) {
        const Arc& a = net.arcs[ai];
        int cp = idx.condition_pos(a.to);
        const Condition& c = net.conditions[cp];
        parts.push_back("+" + c.label + "\x01" + c.capacity.render() + "\x01" +
                        std::to_string(a.weight));
    }
    std::sort(parts.begin(), parts.end());
    std::string sig = e.label;
    for (const auto& p : parts) sig += "\x02" + p;
    return sig;
}

// Shared-condition fingerprint of an ordered event pair.
std::string pair_signature(const Net& net, const NetIndex& idx,
                           const std::string& e1, const std::string& e2) {
    // condition id -> (label, cap, arcref@e1, arcref@e2)
    std::map<std::string, std::array<std::string, 3>> shared;
    auto note = [&](const std::string& ev, int slot) {
        for (int ai : idx.in_arcs(ev)) {
            const Arc& a = net.arcs[ai];
            shared[a.from][slot] = std::string(a.inhibitor ? "--" : "-") +
                                   std::to_string(a.weight);
        }
        for (int ai : idx.out_arcs(ev)) {
            const Arc& a = net.arcs[ai];
            shared[a.to][slot] = "+" + std::to_string(a.weight);
        }
    };
    note(e1, 0);
    note(e2, 1);
    std::vector<std::string> parts;
    for (auto& [cid, v] : shared) {
        if (v[0].empty() || v[1].empty()) continue;
        int cp = idx.condition_pos(cid);
        parts.push_back(net.conditions[cp].label + "\x01" +
                        net.conditions[cp].capacity.render() + "\x01" + v[0] + "\x01" + v[1]);
    }
    std::sort(parts.begin(), parts.end());
    std::string sig;
    for (const auto& p : parts) sig += "\x02" + p;
    return sig;
}

// Condition fingerprint once every event is mapped (events referenced by
// their position on the *a* side).
std::string cond_signature(const Net& net, const NetIndex& idx, const Condition& c,
                           const std::map<std::string, int>& event_slot) {
    std::vector<std::string> parts;
    for (int ai : idx.in_arcs(c.id)) {
        const Arc& a = net.arcs[ai];
        parts.push_back(std::to_string(event_slot.at(a.from)) + "<" + std::to_string(a.weight));
    }
    for (int ai : idx.out_arcs(c.id)) {
        const Arc& a = net.arcs[ai];
        parts.push_back(std::to_string(event_slot.at(a.to)) +
                        (a.inhibitor ? "!" : ">") + std::to_string(a.weight));
    }
    std::sort(parts.begin(), parts.end());
    std::string sig = c.label + "\x01" + c.capacity.render();
    for (const auto& p : parts) sig += "\x02" + p;
    return sig;
}

} // namespace

bool labeled_isomorphic(const Net& a, const Net& b, std::size_t event_guard) {
    if (a.events.size() > event_guard || b.events.size() > event_guard)
        throw SizeGuardExceeded("labeled_isomorphic guard is " + std::to_string(event_guard) +
                                " events");
    if (a.events.size() != b.events.size() || a.conditions.size() != b.conditions.size() ||
        a.arcs.size() != b.arcs.size())
        return false;

    NetIndex ia(a), ib(b);

    // candidate events in b for each event of a, by local signature
    std::vector<std::vector<int>> cands(a.events.size());
    {
        std::map<std::string, std::vector<int>> by_sig;
        for (std::size_t j = 0; j < b.events.size(); ++j)
            by_sig[event_signature(b, ib, b.events[j])].push_back((int)j);
        for (std::size_t i = 0; i < a.events.size(); ++i) {
            auto it = by_sig.find(event_signature(a, ia, a.events[i]));
            if (it == by_sig.end()) return false;
            cands[i] = it->second;
        }
    }

    std::vector<int> map_ab(a.events.size(), -1);
    std::vector<char> used(b.events.size(), 0);

    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == a.events.size()) {
            // full condition multiset check under this event bijection
            std::map<std::string, int> slot_a, slot_b;
            for (std::size_t k = 0; k < a.events.size(); ++k) {
                slot_a[a.events[k].id] = (int)k;
                slot_b[b.events[map_ab[k]].id] = (int)k;
            }
            std::multiset<std::string> sa, sb;
            for (const auto& c : a.conditions) sa.insert(cond_signature(a, ia, c, slot_a));
            for (const auto& c : b.conditions) sb.insert(cond_signature(b, ib, c, slot_b));
            return sa == sb;
        }
        for (int j : cands[i]) {
            if (used[j]) continue;
            // pairwise shared-structure check against earlier assignments
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) {
                if (pair_signature(a, ia, a.events[i].id, a.events[k].id) !=
                    pair_signature(b, ib, b.events[j].id, b.events[map_ab[k]].id))
                    ok = false;
            }
            if (!ok) continue;
            used[j] = 1;
            map_ab[i] = j;
            if (assign(i + 1)) return true;
            used[j] = 0;
            map_ab[i] = -1;
        }
        return false;
    };

    return assign(0);
}

} // namespace pspan
