// End-to-end acceptance checks.  Each criterion prints one [PASS]/[FAIL]
// line; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <tuple>
#include <vector>

#include "pspan/extensions.hpp"
#include "pspan/json_io.hpp"
#include "pspan/miner.hpp"
#include "pspan/oracle.hpp"

using namespace pspan;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<NetGraph> transform(const std::vector<Net>& nets) {
    std::vector<NetGraph> out;
    out.reserve(nets.size());
    for (const auto& n : nets) out.push_back(net_to_netgraph(n));
    return out;
}

// ---- criterion 1: transform round trip at scale ---------------------------

bool round_trip_10k(std::string& detail) {
    GenConfig cfg;
    cfg.amount = 10000;
    cfg.max_events = 10;
    cfg.max_conditions = 8;
    cfg.seed = 20260826;
    auto nets = generate_reservoir(cfg);
    std::size_t ok = 0;
    for (const auto& n : nets) {
        Net back = netgraph_to_net(net_to_netgraph(n));
        if (labeled_isomorphic(n, back)) ++ok;
    }
    detail = std::to_string(ok) + "/" + std::to_string(nets.size()) + " nets round-trip";
    return ok == nets.size();
}

// ---- criterion 2: canonical code equals the enumeration minimum -----------

bool canonical_minimality(std::string& detail) {
    GenConfig cfg;
    cfg.amount = 1200; // over-generate; single-event nets have no code
    cfg.max_events = 6;
    cfg.max_conditions = 5;
    cfg.seed = 424242;
    auto nets = generate_reservoir(cfg);

    std::size_t checked = 0, ok = 0;
    for (const auto& n : nets) {
        if (checked == 500) break;
        if (n.events.size() < 2) continue;
        NetGraph g = net_to_netgraph(n);
        ++checked;
        DfsCode fast = minimal_dfs_code(g);
        auto all = enumerate_dfs_codes(g, 6);
        const DfsCode* best = &all.front();
        for (const auto& c : all)
            if (compare_codes(c, *best) < 0) best = &c;
        if (compare_codes(fast, *best) == 0) ++ok;
    }
    detail = std::to_string(ok) + "/" + std::to_string(checked) + " graphs canonical";
    return checked == 500 && ok == checked;
}

// ---- criterion 3: the six-event reference fixture -------------------------

NetGraph build_graph(const std::vector<std::string>& node_renders,
                     const std::vector<std::tuple<int, int, std::string>>& edge_specs) {
    NetGraph g;
    g.id = "1";
    for (std::size_t i = 0; i < node_renders.size(); ++i) {
        auto [label, tagging] = parse_node_render(node_renders[i]);
        NgNode n;
        n.id = "v" + std::to_string(i + 1);
        n.label = label;
        n.tagging = tagging;
        n.finish();
        g.nodes.push_back(std::move(n));
    }
    for (const auto& [u, v, render] : edge_specs) {
        NgEdge e;
        e.u = u;
        e.v = v;
        e.triples = parse_edge_render(render);
        e.finish();
        g.edges.push_back(std::move(e));
    }
    g.build_adj();
    return g;
}

bool reference_encoding(std::string& detail) {
    NetGraph k = build_graph(
        {
            "e1(-s,+q)",
            "e2(-e,-n,-o,-r,+c,+d,+q)",
            "e3(-a,-l,-n,+b,+t)",
            "e4(-m,+k,+n,+p,+q,+u)",
            "e5(-q,-s,+f,+g,+h,+i,+r)",
            "e6(-m,-n,-o,-p,+l,+t)",
        },
        {
            {0, 4, "(-,s,-),(+,q,-)"},
            {4, 1, "(-,q,+),(+,r,-)"},
            {1, 0, "(+,q,+)"},
            {0, 3, "(+,q,+)"},
            {3, 1, "(+,n,-)"},
            {1, 2, "(-,n,-)"},
            {2, 5, "(-,l,+),(+,t,+)"},
            {5, 3, "(-,m,-),(-,p,+)"},
            {5, 1, "(-,n,-),(-,o,-)"},
        });

    const std::vector<std::string> expected = {
        "(0,1,e1(-s,+q),((-,s,-),(+,q,-)),e5(-q,-s,+f,+g,+h,+i,+r),1)",
        "(1,2,e5(-q,-s,+f,+g,+h,+i,+r),((-,q,+),(+,r,-)),e2(-e,-n,-o,-r,+c,+d,+q),1)",
        "(2,0,e2(-e,-n,-o,-r,+c,+d,+q),((+,q,+)),e1(-s,+q),1)",
        "(0,3,e1(-s,+q),((+,q,+)),e4(-m,+k,+n,+p,+q,+u),1)",
        "(3,2,e4(-m,+k,+n,+p,+q,+u),((+,n,-)),e2(-e,-n,-o,-r,+c,+d,+q),1)",
        "(2,4,e2(-e,-n,-o,-r,+c,+d,+q),((-,n,-)),e3(-a,-l,-n,+b,+t),1)",
        "(4,5,e3(-a,-l,-n,+b,+t),((-,l,+),(+,t,+)),e6(-m,-n,-o,-p,+l,+t),1)",
        "(5,3,e6(-m,-n,-o,-p,+l,+t),((-,m,-),(-,p,+)),e4(-m,+k,+n,+p,+q,+u),1)",
        "(5,2,e6(-m,-n,-o,-p,+l,+t),((-,n,-),(-,o,-)),e2(-e,-n,-o,-r,+c,+d,+q),1)",
    };

    DfsCode code = minimal_dfs_code(k);
    if (code.units.size() != expected.size()) {
        detail = "unit count " + std::to_string(code.units.size());
        return false;
    }
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (code.units[i].to_string("1") != expected[i]) {
            detail = "unit " + std::to_string(i) + " is " + code.units[i].to_string("1");
            return false;
        }

    // the same graph walked from the two rival start nodes loses immediately
    DfsUnit alt_a = parse_unit(
        "(0,1,e3(-a,-l,-n,+b,+t),((-,n,-)),e2(-e,-n,-o,-r,+c,+d,+q),1)");
    DfsUnit alt_c = parse_unit(
        "(0,1,e2(-e,-n,-o,-r,+c,+d,+q),((-,r,+),(+,q,-)),e5(-q,-s,+f,+g,+h,+i,+r),1)");
    if (compare_units(code.units[0], alt_a) >= 0 ||
        compare_units(code.units[0], alt_c) >= 0) {
        detail = "minimal code does not beat the rival traversals";
        return false;
    }
    detail = "9 units exact, rival traversals ranked above";
    return true;
}

// ---- criterion 4: miner agrees with the exhaustive oracle -----------------

bool oracle_equivalence(std::string& detail) {
    const std::size_t runs = 20;
    const std::uint64_t minsup = 5;
    const std::size_t max_events = 4;
    std::size_t clean = 0;
    for (std::size_t r = 0; r < runs; ++r) {
        GenConfig cfg;
        cfg.amount = 30;
        cfg.max_events = 6;
        cfg.max_conditions = 5;
        cfg.event_pool = 3;
        cfg.condition_pool = 6;
        cfg.seed = 9000 + r;
        auto nets = generate_reservoir(cfg);

        MineOptions opt;
        opt.minsup = minsup;
        MiningResult mres = mine(transform(nets), opt);
        auto subnets = patterns_to_subnets(mres);
        auto patterns = mres.all();
        std::vector<std::pair<Net, std::uint64_t>> mined;
        for (std::size_t i = 0; i < subnets.size(); ++i) {
            if (subnets[i].events.size() > max_events) continue;
            mined.push_back({subnets[i], patterns[i]->support});
        }

        auto oracle = brute_force_mine(nets, minsup, max_events);
        if (diff_results(oracle, mined).empty()) ++clean;
    }
    detail = std::to_string(clean) + "/" + std::to_string(runs) + " runs agree";
    return clean == runs;
}

// ---- criterion 5: planted patterns are recovered at paper scale -----------

bool planting_recall(std::string& detail) {
    GenConfig host_cfg;
    host_cfg.amount = 1000;
    host_cfg.max_events = 6;
    host_cfg.random_events = false;
    host_cfg.max_conditions = 8;
    host_cfg.seed = 777001;
    auto reservoir = generate_reservoir(host_cfg);

    PlantConfig pc;
    pc.count = 10;
    pc.max_events = 15;
    pc.min_events = 9;
    pc.max_conditions = 2;
    pc.min_arcs = 10;
    pc.max_arcs = 19;
    pc.minsup = 500;
    pc.seed = 777002;
    PlantingLedger ledger = plant(reservoir, pc);

    for (const auto& x : ledger.planting_nets)
        if (x.events.size() < 9 || x.events.size() > 15 || x.arcs.size() < 10 ||
            x.arcs.size() > 19) {
            detail = x.id + " violates the size window";
            return false;
        }

    MineOptions opt;
    opt.minsup = 500;
    MiningResult mres = mine(transform(reservoir), opt);
    PlantingReport report = planting_report(mres, ledger);

    std::size_t recovered = 0;
    for (const auto& row : report.rows)
        if (row.found && row.mined >= row.planted && row.ratio >= 1.0) ++recovered;
    detail = std::to_string(recovered) + "/" + std::to_string(report.rows.size()) +
             " planting nets recovered with ratio >= 1.00";
    return report.all_recovered && recovered == report.rows.size();
}

// ---- criterion 6: arc-to-edge compression improves with density -----------

bool compression_trend(std::string& detail) {
    const std::vector<std::pair<double, std::uint64_t>> targets = {
        {50, 14}, {100, 31}, {200, 64}, {500, 164}, {1000, 330}};
    std::vector<double> ratios;
    char buf[64];
    std::string seen;
    for (const auto& [target, bound] : targets) {
        GenConfig cfg;
        cfg.amount = 30;
        cfg.max_events = 12;
        cfg.random_events = false;
        cfg.max_conditions = bound;
        cfg.condition_pool = std::max<std::uint64_t>(26, bound);
        cfg.seed = 60007;
        auto nets = generate_reservoir(cfg);

        double arcs = 0, edges = 0;
        for (const auto& n : nets) {
            arcs += (double)n.arcs.size();
            edges += (double)net_to_netgraph(n).edges.size();
        }
        double arn = arcs / (double)nets.size();
        double aen = edges / (double)nets.size();
        if (std::fabs(arn - target) / target > 0.15) {
            detail = "average arc count " + std::to_string(arn) + " misses target " +
                     std::to_string(target);
            return false;
        }
        ratios.push_back(aen / arn);
        std::snprintf(buf, sizeof buf, "%.0f:%.3f ", arn, ratios.back());
        seen += buf;
    }
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] >= ratios[i - 1]) {
            detail = "ratio sequence not strictly decreasing: " + seen;
            return false;
        }
    detail = "edge/arc ratios " + seen + "(final <= 0.25)";
    return ratios.back() <= 0.25;
}

// ---- criterion 7: mining scales where the oracle cannot -------------------

bool scalability_budget(std::string& detail) {
    GenConfig cfg;
    cfg.amount = 1000;
    cfg.max_events = 100;
    cfg.random_events = false;
    cfg.max_conditions = 2;
    cfg.random_conditions = false;
    cfg.event_pool = 5;
    cfg.condition_pool = 10;
    cfg.seed = 321321;
    auto nets = generate_reservoir(cfg);

    double arcs = 0;
    for (const auto& n : nets) arcs += (double)n.arcs.size();
    double arn = arcs / (double)nets.size();
    if (arn < 130 || arn > 170) {
        detail = "average arc count " + std::to_string(arn) + " off the 150 mark";
        return false;
    }

    auto t0 = std::chrono::steady_clock::now();
    MineOptions opt;
    opt.minsup = 100;
    MiningResult mres = mine(transform(nets), opt);
    double elapsed = seconds_since(t0);

    bool guarded = false;
    try {
        enumerate_complete_subnets(nets.front(), 4);
    } catch (const SizeGuardExceeded&) {
        guarded = true;
    }

    std::size_t total = mres.all().size();
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%zu patterns in %.1f s (budget 600 s); oracle size guard fired: %s",
                  total, elapsed, guarded ? "yes" : "no");
    detail = buf;
    return elapsed <= 600.0 && guarded;
}

// ---- criterion 8: annotated nets round-trip; defaults change nothing ------

bool extension_round_trips(std::string& detail) {
    GenConfig cfg;
    cfg.amount = 1000;
    cfg.max_events = 6;
    cfg.max_conditions = 5;
    cfg.seed = 888001;
    auto base = generate_reservoir(cfg);

    std::mt19937_64 rng(515151);
    std::size_t ok_pt = 0;
    for (Net n : base) {
        for (auto& c : n.conditions)
            if (uniform_below(rng, 2) == 0) c.capacity = Capacity::of(uniform_range(rng, 1, 10));
        for (auto& a : n.arcs) a.weight = uniform_range(rng, 1, 5);
        Net back = netgraph_to_net(pt_net_to_netgraph(n));
        if (labeled_isomorphic(n, back)) ++ok_pt;
    }

    cfg.seed = 888002;
    auto base2 = generate_reservoir(cfg);
    std::size_t ok_inh = 0;
    for (Net n : base2) {
        for (auto& a : n.arcs) {
            // only condition -> event arcs may inhibit
            bool into_event = false;
            for (const auto& e : n.events)
                if (e.id == a.to) { into_event = true; break; }
            if (into_event && uniform_below(rng, 10) == 0) a.inhibitor = true;
            else a.weight = uniform_range(rng, 1, 5);
        }
        for (auto& c : n.conditions)
            if (uniform_below(rng, 2) == 0) c.capacity = Capacity::of(uniform_range(rng, 1, 10));
        Net back = netgraph_to_net(inhibitor_net_to_netgraph(n));
        if (labeled_isomorphic(n, back)) ++ok_inh;
    }

    // all-default annotations: the annotated pipeline must emit bytes
    // identical to the plain one
    GenConfig mcfg;
    mcfg.amount = 200;
    mcfg.max_events = 5;
    mcfg.max_conditions = 4;
    mcfg.event_pool = 4;
    mcfg.condition_pool = 6;
    mcfg.seed = 888003;
    auto plain_nets = generate_reservoir(mcfg);
    MineOptions opt;
    opt.minsup = 10;

    std::vector<NetGraph> plain_graphs, annotated_graphs;
    for (const auto& n : plain_nets) {
        plain_graphs.push_back(net_to_netgraph(n));
        annotated_graphs.push_back(inhibitor_net_to_netgraph(n));
    }
    std::string plain_out = result_to_json(mine(plain_graphs, opt)).dump();
    std::string annotated_out = result_to_json(mine(annotated_graphs, opt)).dump();

    detail = std::to_string(ok_pt) + "/1000 weighted and " + std::to_string(ok_inh) +
             "/1000 inhibitor nets round-trip; default-annotation mining " +
             (plain_out == annotated_out ? "byte-identical" : "DIFFERS");
    return ok_pt == 1000 && ok_inh == 1000 && plain_out == annotated_out;
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "transform round trip on 10000 generated nets", round_trip_10k},
        {2, "canonical code equals the enumeration minimum on 500 graphs",
         canonical_minimality},
        {3, "reference six-event fixture encodes exactly", reference_encoding},
        {4, "miner matches the exhaustive oracle on 20 reservoirs", oracle_equivalence},
        {5, "planted nets recovered from 1000 hosts at minsup 500", planting_recall},
        {6, "arc-to-edge compression strengthens with net density", compression_trend},
        {7, "large-scale mining fits the time budget where the oracle cannot run",
         scalability_budget},
        {8, "annotated round trips and default-annotation equivalence",
         extension_round_trips},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool pass = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double dt = seconds_since(t0);
        char buf[512];
        std::snprintf(buf, sizeof buf, "[%s] criterion %d: %s — %s (%.1f s)",
                      pass ? "PASS" : "FAIL", c.number, c.title, detail.c_str(), dt);
        std::cout << buf << std::endl;
        if (!pass) ++failures;
    }
    return failures;
}
