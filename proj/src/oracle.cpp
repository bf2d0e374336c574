#include "pspan/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pspan {

namespace {

bool subset_connected(const Net& net, const NetIndex& idx, std::uint32_t mask) {
    // events adjacent when they share a condition
    std::vector<int> evs;
    for (std::size_t i = 0; i < net.events.size(); ++i)
        if (mask & (1u << i)) evs.push_back((int)i);
    if (evs.empty()) return false;
    if (evs.size() == 1) return true;

    std::vector<std::set<std::string>> touching(evs.size());
    for (std::size_t k = 0; k < evs.size(); ++k) {
        const std::string& eid = net.events[evs[k]].id;
        for (int a : idx.in_arcs(eid)) touching[k].insert(net.arcs[a].from);
        for (int a : idx.out_arcs(eid)) touching[k].insert(net.arcs[a].to);
    }
    std::vector<char> seen(evs.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        int k = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < evs.size(); ++j) {
            if (seen[j]) continue;
            bool share = false;
            for (const auto& c : touching[k])
                if (touching[j].count(c)) { share = true; break; }
            if (!share) continue;
            seen[j] = 1;
            ++visited;
            stack.push_back((int)j);
        }
    }
    return visited == evs.size();
}

} // namespace

std::vector<Net> enumerate_complete_subnets(const Net& net,
                                            std::size_t max_events,
                                            std::size_t event_guard) {
    validate_net(net);
    if (net.events.size() > event_guard)
        throw SizeGuardExceeded("net has " + std::to_string(net.events.size()) +
                                " events; the exhaustive enumerator handles at most " +
                                std::to_string(event_guard));

    NetIndex idx(net);
    std::vector<Net> out;
    std::size_t n = net.events.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::size_t bits = (std::size_t)__builtin_popcount(mask);
        if (bits > max_events) continue;
        if (!subset_connected(net, idx, mask)) continue;
        std::set<std::string> chosen;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) chosen.insert(net.events[i].id);
        Net sub = complete_closure(net, chosen);
        bool dup = false;
        for (const auto& prev : out)
            if (prev.events.size() == sub.events.size() &&
                labeled_isomorphic(prev, sub)) {
                dup = true;
                break;
            }
        if (!dup) {
            sub.id = net.id + "#" + std::to_string(out.size());
            out.push_back(std::move(sub));
        }
    }
    return out;
}

std::vector<OracleClass> brute_force_mine(const std::vector<Net>& nets,
                                          std::uint64_t minsup,
                                          std::size_t max_events,
                                          std::size_t event_guard) {
    if (nets.empty()) throw EmptyInput("no nets to mine");
    if (minsup == 0) throw ConfigInvalid("minsup must be positive");

    std::vector<OracleClass> classes;
    for (const auto& net : nets) {
        for (auto& sub : enumerate_complete_subnets(net, max_events, event_guard)) {
            bool matched = false;
            for (auto& cls : classes) {
                if (cls.representative.events.size() != sub.events.size()) continue;
                if (!labeled_isomorphic(cls.representative, sub)) continue;
                if (cls.supporters.empty() || cls.supporters.back() != net.id)
                    cls.supporters.push_back(net.id);
                matched = true;
                break;
            }
            if (!matched) {
                OracleClass cls;
                cls.representative = std::move(sub);
                cls.supporters.push_back(net.id);
                classes.push_back(std::move(cls));
            }
        }
    }

    std::vector<OracleClass> kept;
    for (auto& cls : classes) {
        std::sort(cls.supporters.begin(), cls.supporters.end());
        cls.supporters.erase(std::unique(cls.supporters.begin(), cls.supporters.end()),
                             cls.supporters.end());
        cls.support = cls.supporters.size();
        if (cls.support >= minsup) kept.push_back(std::move(cls));
    }
    return kept;
}

std::vector<DiffEntry> diff_results(const std::vector<OracleClass>& oracle,
                                    const std::vector<std::pair<Net, std::uint64_t>>& mined) {
    std::vector<DiffEntry> diffs;
    std::vector<char> used(mined.size(), 0);
    for (const auto& cls : oracle) {
        bool found = false;
        for (std::size_t m = 0; m < mined.size(); ++m) {
            if (used[m]) continue;
            if (mined[m].first.events.size() != cls.representative.events.size()) continue;
            if (!labeled_isomorphic(mined[m].first, cls.representative)) continue;
            used[m] = 1;
            found = true;
            if (mined[m].second != cls.support)
                diffs.push_back({"support",
                                 cls.representative.id + ": oracle " +
                                     std::to_string(cls.support) + ", mined " +
                                     std::to_string(mined[m].second)});
            break;
        }
        if (!found) diffs.push_back({"missing", cls.representative.id});
    }
    for (std::size_t m = 0; m < mined.size(); ++m)
        if (!used[m]) diffs.push_back({"extra", mined[m].first.id});
    return diffs;
}

} // namespace pspan
