#include "pspan/miner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace pspan {

std::vector<const Pattern*> MiningResult::all() const {
    std::vector<const Pattern*> out;
    for (const auto& bucket : fd)
        for (const auto& p : bucket) out.push_back(&p);
    return out;
}

FilterResult build_and_filter(const std::vector<NetGraph>& graphs, std::uint64_t minsup) {
    FilterResult res;
    res.fdfs.resize(graphs.size());

    // identification key -> graphs containing the edge
    std::map<std::string, std::set<int>> edge_support;
    std::map<std::string, std::set<int>> node_support;
    std::vector<DfsCode> codes(graphs.size());

    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const NetGraph& g = graphs[gi];
        for (const auto& n : g.nodes) node_support[n.key].insert((int)gi);
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            edge_support[edge_identification(g, (int)e).first].insert((int)gi);
        if (!g.edges.empty()) codes[gi] = minimal_dfs_code(g);
    }

    for (const auto& [key, sup] : node_support)
        if (sup.size() >= minsup) {
            // recover one rendering for the key
            for (const auto& g : graphs) {
                bool found = false;
                for (const auto& n : g.nodes)
                    if (n.key == key) {
                        res.snng[n.render] = sup.size();
                        found = true;
                        break;
                    }
                if (found) break;
            }
        }

    std::set<std::string> kept_ids; // dedupe for min_fdfs
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const NetGraph& g = graphs[gi];
        if (g.edges.empty()) continue;
        // map the code's units back to edges via identification
        for (const auto& u : codes[gi].units) {
            // canonical identification of the unit's edge
            std::string a = u.front_key + u.edge_key + u.rear_key;
            // rebuild the flipped key
            std::string flipped_key;
            for (auto t : parse_edge_render(u.edge_render)) t.flipped().append_key(flipped_key);
            std::string b = u.rear_key + flipped_key + u.front_key;
            const std::string& id_key = std::min(a, b);
            auto it = edge_support.find(id_key);
            if (it == edge_support.end() || it->second.size() < minsup) continue;
            res.fdfs[gi].push_back(u);
            if (u.forward() && kept_ids.insert(id_key).second) res.min_fdfs.push_back(u);
        }
    }
    std::sort(res.min_fdfs.begin(), res.min_fdfs.end(),
              [](const DfsUnit& a, const DfsUnit& b) { return compare_units(a, b) < 0; });
    return res;
}

namespace {

struct Embedding {
    int graph;
    std::vector<int> map; // pattern node -> host node
};

struct GrowContext {
    const std::vector<NetGraph>& graphs;
    std::uint64_t minsup;
    std::uint64_t max_embeddings;
    // per graph, per edge: does the edge identification clear minsup?
    std::vector<std::vector<char>> edge_frequent;
    std::set<std::string> emitted; // canonical pattern codes
    std::map<std::size_t, std::vector<Pattern>> buckets;
};

// embeddings with the same image set differ only by a pattern automorphism
// and grow into the same children; one survivor per (graph, image set) keeps
// the work linear in occurrences instead of automorphism orbits
void dedup_embeddings(std::vector<Embedding>& embs) {
    std::vector<std::pair<std::vector<int>, std::size_t>> keys;
    keys.reserve(embs.size());
    for (std::size_t i = 0; i < embs.size(); ++i) {
        std::vector<int> k;
        k.reserve(embs[i].map.size() + 1);
        k.push_back(embs[i].graph);
        k.insert(k.end(), embs[i].map.begin(), embs[i].map.end());
        std::sort(k.begin() + 1, k.end());
        keys.push_back({std::move(k), i});
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Embedding> kept;
    kept.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i && keys[i].first == keys[i - 1].first) continue;
        kept.push_back(std::move(embs[keys[i].second]));
    }
    embs = std::move(kept);
}

std::vector<std::string> supporter_ids(const GrowContext& ctx,
                                       const std::vector<Embedding>& embs) {
    std::set<std::string> ids;
    for (const auto& e : embs) ids.insert(ctx.graphs[e.graph].id);
    return {ids.begin(), ids.end()};
}

// grow by attaching one more node (with every edge it shares with the image)
// so occurrences stay induced, i.e. patterns stay complete subnets
void grow(GrowContext& ctx, const NetGraph& pattern, const std::vector<Embedding>& embs) {
    struct Candidate {
        NetGraph child;
        std::vector<Embedding> embs;
        std::set<int> graphs;
    };
    // fingerprint -> candidate
    std::map<std::string, Candidate> children;

    std::vector<int> image_pos;   // host node -> pattern index + 1, 0 = unmapped
    std::vector<char> tried_flag; // host node -> probed already in this embedding
    std::vector<int> touched;
    std::string fp;

    for (const auto& emb : embs) {
        const NetGraph& host = ctx.graphs[emb.graph];
        if (image_pos.size() < host.nodes.size()) {
            image_pos.resize(host.nodes.size(), 0);
            tried_flag.resize(host.nodes.size(), 0);
        }
        for (std::size_t pi = 0; pi < emb.map.size(); ++pi)
            image_pos[emb.map[pi]] = (int)pi + 1;
        touched.clear();
        for (std::size_t pi = 0; pi < emb.map.size(); ++pi) {
            int u = emb.map[pi];
            for (const auto& [e, w] : host.adj[u]) {
                if (image_pos[w] || tried_flag[w]) continue;
                tried_flag[w] = 1;
                touched.push_back(w);
                // all edges between w and the image come along
                std::vector<std::pair<int, int>> links; // (pattern node, host edge)
                bool edges_ok = true;
                for (const auto& [e2, w2] : host.adj[w]) {
                    if (!image_pos[w2]) continue;
                    if (!ctx.edge_frequent[emb.graph][e2]) {
                        edges_ok = false;
                        break;
                    }
                    links.push_back({image_pos[w2] - 1, e2});
                }
                if (!edges_ok) continue;
                std::sort(links.begin(), links.end());

                fp.assign(host.nodes[w].key);
                for (const auto& [pj, e2] : links) {
                    fp += '\x01';
                    fp += std::to_string(pj);
                    fp += '\x01';
                    fp += host.edges[e2].key_from(emb.map[pj]);
                }

                auto it = children.find(fp);
                if (it == children.end()) {
                    Candidate cand;
                    cand.child = pattern;
                    NgNode nn = host.nodes[w];
                    nn.id = "n" + std::to_string(pattern.nodes.size());
                    cand.child.nodes.push_back(std::move(nn));
                    for (const auto& [pj, e2] : links) {
                        NgEdge ne;
                        ne.u = pj;
                        ne.v = (int)pattern.nodes.size();
                        const NgEdge& he = host.edges[e2];
                        ne.triples = he.u == emb.map[pj]
                                         ? he.triples
                                         : [&] {
                                               std::vector<Triple> ts;
                                               for (const auto& t : he.triples)
                                                   ts.push_back(t.flipped());
                                               return ts;
                                           }();
                        ne.finish();
                        cand.child.edges.push_back(std::move(ne));
                    }
                    std::set<std::string> universe(
                        cand.child.condition_universe.begin(),
                        cand.child.condition_universe.end());
                    for (const auto& t : cand.child.nodes.back().tagging)
                        universe.insert(t.label);
                    cand.child.condition_universe.assign(universe.begin(), universe.end());
                    cand.child.build_adj();
                    it = children.emplace(fp, std::move(cand)).first;
                }
                Embedding child_emb = emb;
                child_emb.map.push_back(w);
                it->second.embs.push_back(std::move(child_emb));
                it->second.graphs.insert(emb.graph);
                if (it->second.embs.size() > ctx.max_embeddings)
                    throw SizeGuardExceeded("embedding guard hit while growing a pattern");
            }
        }
        for (std::size_t pi = 0; pi < emb.map.size(); ++pi) image_pos[emb.map[pi]] = 0;
        for (int w : touched) tried_flag[w] = 0;
    }

    // cheap isomorphism invariant: isomorphic children always agree on the
    // sorted multisets of node keys and orientation-free edge keys, so any
    // group that cannot reach minsup is dropped before the costly canonical
    // encoding
    std::map<std::string, std::pair<std::vector<Candidate*>, std::set<int>>> groups;
    for (auto& [fp, cand] : children) {
        std::vector<std::string> parts;
        for (const auto& n : cand.child.nodes) parts.push_back(n.key);
        std::sort(parts.begin(), parts.end());
        std::vector<std::string> eparts;
        for (const auto& e : cand.child.edges) {
            std::string ka = cand.child.nodes[e.u].key + '\x02' + e.key_uv + '\x02' +
                             cand.child.nodes[e.v].key;
            std::string kb = cand.child.nodes[e.v].key + '\x02' + e.key_vu + '\x02' +
                             cand.child.nodes[e.u].key;
            eparts.push_back(std::min(ka, kb));
        }
        std::sort(eparts.begin(), eparts.end());
        std::string inv;
        for (const auto& s : parts) { inv += s; inv += '\x01'; }
        inv += '\x03';
        for (const auto& s : eparts) { inv += s; inv += '\x01'; }
        auto& grp = groups[inv];
        grp.first.push_back(&cand);
        grp.second.insert(cand.graphs.begin(), cand.graphs.end());
    }

    // automorphisms of the parent can split one child over several
    // fingerprints; merge isomorphic children so support is counted once
    struct Merged {
        Candidate cand;
        DfsCode canon;
    };
    std::map<std::string, Merged> merged;
    for (auto& [inv, grp] : groups) {
        if (grp.second.size() < ctx.minsup) continue;
        for (Candidate* pc : grp.first) {
        Candidate& cand = *pc;
        DfsCode canon = minimal_dfs_code(cand.child);
        std::string key = canon.pattern_string();
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, Merged{std::move(cand), std::move(canon)});
            continue;
        }
        Candidate& rep = it->second.cand;
        std::vector<int> iso = find_induced_embedding(rep.child, cand.child);
        for (const auto& emb : cand.embs) {
            Embedding e2;
            e2.graph = emb.graph;
            e2.map.resize(emb.map.size());
            for (std::size_t i = 0; i < iso.size(); ++i) e2.map[i] = emb.map[iso[i]];
            rep.embs.push_back(std::move(e2));
        }
        rep.graphs.insert(cand.graphs.begin(), cand.graphs.end());
        }
    }

    for (auto& [key, m] : merged) {
        Candidate& cand = m.cand;
        if (cand.graphs.size() < ctx.minsup) continue;
        if (!ctx.emitted.insert(key).second) continue;
        dedup_embeddings(cand.embs);
        Pattern p;
        p.edge_count = cand.child.edges.size();
        p.code = m.canon;
        p.code.graph_id.clear();
        p.graph = cand.child;
        p.support = cand.graphs.size();
        p.supporters = supporter_ids(ctx, cand.embs);
        ctx.buckets[p.edge_count].push_back(std::move(p));
        grow(ctx, cand.child, cand.embs);
    }
}

} // namespace

MiningResult mine(const std::vector<NetGraph>& graphs, const MineOptions& opt) {
    if (graphs.empty()) throw EmptyInput("no graphs to mine");
    if (opt.minsup == 0) throw ConfigInvalid("minsup must be positive");

    GrowContext ctx{graphs, opt.minsup, opt.max_embeddings, {}, {}, {}};

    // frequent single nodes: FD[0]
    std::map<std::string, std::pair<std::set<int>, int>> node_occ; // key -> (graphs, sample)
    for (std::size_t gi = 0; gi < graphs.size(); ++gi)
        for (std::size_t ni = 0; ni < graphs[gi].nodes.size(); ++ni) {
            auto& slot = node_occ[graphs[gi].nodes[ni].key];
            slot.first.insert((int)gi);
            if (slot.second == 0) slot.second = (int)(gi << 16 | ni) + 1;
        }
    for (const auto& [key, occ] : node_occ) {
        if (occ.first.size() < opt.minsup) continue;
        int packed = occ.second - 1;
        const NgNode& sample = graphs[packed >> 16].nodes[packed & 0xffff];
        Pattern p;
        p.edge_count = 0;
        p.node_render = sample.render;
        NgNode nn = sample;
        nn.id = "n0";
        p.graph.id.clear();
        p.graph.nodes.push_back(std::move(nn));
        std::set<std::string> universe;
        for (const auto& t : p.graph.nodes[0].tagging) universe.insert(t.label);
        p.graph.condition_universe.assign(universe.begin(), universe.end());
        p.graph.build_adj();
        p.support = occ.first.size();
        for (int g : occ.first) p.supporters.push_back(graphs[g].id);
        std::sort(p.supporters.begin(), p.supporters.end());
        ctx.buckets[0].push_back(std::move(p));
    }

    // frequent single edges seed the growth
    std::set<std::string> frequent_edges;
    std::map<std::string, std::set<int>> seed_graphs;
    std::map<std::string, std::pair<int, int>> seed_sample;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const NetGraph& g = graphs[gi];
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            std::string key = edge_identification(g, (int)e).first;
            seed_graphs[key].insert((int)gi);
            seed_sample.emplace(key, std::make_pair((int)gi, (int)e));
        }
    }
    for (const auto& [key, sup] : seed_graphs)
        if (sup.size() >= opt.minsup) frequent_edges.insert(key);

    ctx.edge_frequent.resize(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const NetGraph& g = graphs[gi];
        ctx.edge_frequent[gi].resize(g.edges.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            ctx.edge_frequent[gi][e] =
                frequent_edges.count(edge_identification(g, (int)e).first) ? 1 : 0;
    }

    for (const auto& key : frequent_edges) {
        auto [sgi, sei] = seed_sample[key];
        const NetGraph& sg = graphs[sgi];
        const NgEdge& se = sg.edges[sei];
        // canonical orientation: smaller (node, edge, node) reading in front
        std::string ka = sg.nodes[se.u].key + se.key_uv + sg.nodes[se.v].key;
        std::string kb = sg.nodes[se.v].key + se.key_vu + sg.nodes[se.u].key;
        int front = kb < ka ? se.v : se.u;
        int rear = kb < ka ? se.u : se.v;

        NetGraph pat;
        NgNode n0 = sg.nodes[front];
        n0.id = "n0";
        NgNode n1 = sg.nodes[rear];
        n1.id = "n1";
        pat.nodes.push_back(std::move(n0));
        pat.nodes.push_back(std::move(n1));
        NgEdge pe;
        pe.u = 0;
        pe.v = 1;
        if (front == se.u) {
            pe.triples = se.triples;
        } else {
            for (const auto& t : se.triples) pe.triples.push_back(t.flipped());
        }
        pe.finish();
        pat.edges.push_back(std::move(pe));
        std::set<std::string> universe;
        for (const auto& n : pat.nodes)
            for (const auto& t : n.tagging) universe.insert(t.label);
        pat.condition_universe.assign(universe.begin(), universe.end());
        pat.build_adj();

        // embeddings across every graph
        std::vector<Embedding> embs;
        for (int gi : seed_graphs[key]) {
            const NetGraph& g = graphs[gi];
            for (std::size_t e = 0; e < g.edges.size(); ++e) {
                if (edge_identification(g, (int)e).first != key) continue;
                const NgEdge& ge = g.edges[e];
                // try both orientations; keep the ones matching the pattern
                for (auto [a, b] : {std::pair{ge.u, ge.v}, std::pair{ge.v, ge.u}}) {
                    if (g.nodes[a].key != pat.nodes[0].key) continue;
                    if (g.nodes[b].key != pat.nodes[1].key) continue;
                    if (ge.key_from(a) != pat.edges[0].key_uv) continue;
                    embs.push_back({gi, {a, b}});
                }
            }
        }

        dedup_embeddings(embs);

        DfsCode canon = minimal_dfs_code(pat);
        std::string pkey = canon.pattern_string();
        if (!ctx.emitted.insert(pkey).second) continue;
        Pattern p;
        p.edge_count = 1;
        p.code = canon;
        p.code.graph_id.clear();
        p.graph = pat;
        p.support = seed_graphs[key].size();
        p.supporters = supporter_ids(ctx, embs);
        ctx.buckets[1].push_back(std::move(p));
        grow(ctx, pat, embs);
    }

    MiningResult result;
    result.minsup = opt.minsup;
    result.inputs = graphs.size();
    std::size_t max_bucket = ctx.buckets.empty() ? 0 : ctx.buckets.rbegin()->first;
    result.fd.resize(max_bucket + 1);
    for (auto& [edges, bucket] : ctx.buckets) {
        std::sort(bucket.begin(), bucket.end(), [](const Pattern& a, const Pattern& b) {
            if (a.edge_count == 0 || b.edge_count == 0) return a.node_render < b.node_render;
            return compare_codes(a.code, b.code) < 0;
        });
        result.fd[edges] = std::move(bucket);
    }
    return result;
}

std::vector<Net> patterns_to_subnets(const MiningResult& result) {
    std::vector<Net> out;
    for (std::size_t j = 0; j < result.fd.size(); ++j) {
        std::size_t k = 0;
        for (const auto& p : result.fd[j]) {
            NetGraph g = p.graph;
            g.id = "fd" + std::to_string(j) + "-" + std::to_string(k++);
            out.push_back(netgraph_to_net(g));
        }
    }
    return out;
}

std::vector<int> find_induced_embedding(const NetGraph& pattern, const NetGraph& host) {
    std::vector<int> map(pattern.nodes.size(), -1);
    std::vector<char> used(host.nodes.size(), 0);

    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == pattern.nodes.size()) return true;
        for (std::size_t h = 0; h < host.nodes.size(); ++h) {
            if (used[h] || host.nodes[h].key != pattern.nodes[i].key) continue;
            bool ok = true;
            // edges to already-mapped nodes must match exactly; non-edges
            // must stay non-edges (induced match)
            for (std::size_t k = 0; k < i && ok; ++k) {
                int pe = -1;
                for (const auto& [e, w] : pattern.adj[i])
                    if (w == (int)k) { pe = e; break; }
                int he = -1;
                for (const auto& [e, w] : host.adj[h])
                    if (w == map[k]) { he = e; break; }
                if ((pe < 0) != (he < 0)) {
                    ok = false;
                } else if (pe >= 0) {
                    if (pattern.edges[pe].key_from((int)i) !=
                        host.edges[he].key_from((int)h))
                        ok = false;
                }
            }
            if (!ok) continue;
            used[h] = 1;
            map[i] = (int)h;
            if (assign(i + 1)) return true;
            used[h] = 0;
            map[i] = -1;
        }
        return false;
    };

    if (assign(0)) return map;
    return {};
}

PlantingReport planting_report(const MiningResult& result, const PlantingLedger& ledger) {
    PlantingReport report;
    report.all_recovered = true;

    for (std::size_t p = 0; p < ledger.planting_nets.size(); ++p) {
        const Net& x = ledger.planting_nets[p];
        PlantingRow row;
        row.planting_id = x.id;
        row.planted = ledger.placements[p].planted_count;
        // equal canonical codes <=> labeled isomorphism, so one string
        // lookup replaces a sweep of exhaustive isomorphism tests
        NetGraph xg = net_to_netgraph(x);
        if (xg.edges.empty()) {
            if (!result.fd.empty())
                for (const auto& pat : result.fd[0])
                    if (pat.node_render == xg.nodes[0].render) {
                        row.found = true;
                        row.mined = pat.support;
                        break;
                    }
        } else if (xg.edges.size() < result.fd.size()) {
            std::string key = minimal_dfs_code(xg).pattern_string();
            for (const auto& pat : result.fd[xg.edges.size()])
                if (pat.code.pattern_string() == key) {
                    row.found = true;
                    row.mined = pat.support;
                    break;
                }
        }
        row.ratio = row.planted ? (double)row.mined / (double)row.planted : 0.0;
        if (!row.found || row.mined < row.planted) report.all_recovered = false;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace pspan
