#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "pspan/miner.hpp"
#include "pspan/oracle.hpp"

using namespace pspan;

namespace {

Arc arc(const std::string& from, const std::string& to) { return {from, to, 1, false}; }

// a -> e1 -> b -> e2 -> c  (chain of two events sharing condition b)
Net chain_net(const std::string& id) {
    Net n;
    n.id = id;
    n.conditions.push_back({"a", "a", Capacity::unbounded()});
    n.conditions.push_back({"b", "b", Capacity::unbounded()});
    n.conditions.push_back({"c", "c", Capacity::unbounded()});
    n.events.push_back({"e1", "t1"});
    n.events.push_back({"e2", "t2"});
    n.arcs = {arc("a", "e1"), arc("e1", "b"), arc("b", "e2"), arc("e2", "c")};
    return n;
}

std::vector<NetGraph> transform(const std::vector<Net>& nets) {
    std::vector<NetGraph> out;
    for (const auto& n : nets) out.push_back(net_to_netgraph(n));
    return out;
}

GenConfig mining_config(std::uint64_t seed) {
    GenConfig cfg;
    cfg.amount = 30;
    cfg.max_events = 5;
    cfg.max_conditions = 4;
    cfg.event_pool = 4;
    cfg.condition_pool = 6;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("identical nets support every pattern everywhere") {
    std::vector<Net> nets;
    for (int i = 0; i < 4; ++i) nets.push_back(chain_net("n" + std::to_string(i)));
    MineOptions opt;
    opt.minsup = 4;
    MiningResult r = mine(transform(nets), opt);

    REQUIRE(r.fd.size() == 2);
    CHECK(r.fd[0].size() == 2); // t1(-a,+b), t2(-b,+c)
    CHECK(r.fd[1].size() == 1); // the full chain
    for (const auto* p : r.all()) {
        CHECK(p->support == 4);
        CHECK(p->supporters.size() == 4);
    }
    std::set<std::string> nodes;
    for (const auto& p : r.fd[0]) nodes.insert(p.node_render);
    CHECK(nodes == std::set<std::string>{"t1(-a,+b)", "t2(-b,+c)"});
}

TEST_CASE("support counts distinct nets, not occurrences") {
    // one net holding the chain twice (disjoint), one holding it once
    Net twice;
    twice.id = "twice";
    for (const auto& s : {"1", "2"}) {
        std::string p = s;
        twice.conditions.push_back({"a" + p, "a", Capacity::unbounded()});
        twice.conditions.push_back({"b" + p, "b", Capacity::unbounded()});
        twice.conditions.push_back({"c" + p, "c", Capacity::unbounded()});
        twice.events.push_back({"e1" + p, "t1"});
        twice.events.push_back({"e2" + p, "t2"});
        twice.arcs.push_back(arc("a" + p, "e1" + p));
        twice.arcs.push_back(arc("e1" + p, "b" + p));
        twice.arcs.push_back(arc("b" + p, "e2" + p));
        twice.arcs.push_back(arc("e2" + p, "c" + p));
    }
    std::vector<Net> nets{twice, chain_net("once")};
    MineOptions opt;
    opt.minsup = 2;
    MiningResult r = mine(transform(nets), opt);
    REQUIRE(r.fd.size() >= 2);
    REQUIRE(r.fd[1].size() == 1);
    CHECK(r.fd[1][0].support == 2);
}

TEST_CASE("minsup filters rare patterns") {
    std::vector<Net> nets{chain_net("n0"), chain_net("n1")};
    // a third net with different labels
    Net other = chain_net("n2");
    other.conditions[0].label = "z";
    other.events[0].label = "t9";
    nets.push_back(other);

    MineOptions opt;
    opt.minsup = 3;
    MiningResult r = mine(transform(nets), opt);
    // only t2(-b,+c) is in all three
    REQUIRE(r.fd.size() >= 1);
    CHECK(r.fd[0].size() == 1);
    CHECK(r.fd[0][0].node_render == "t2(-b,+c)");
    for (std::size_t j = 1; j < r.fd.size(); ++j) CHECK(r.fd[j].empty());

    opt.minsup = 4;
    MiningResult none = mine(transform(nets), opt);
    CHECK(none.all().empty());
}

TEST_CASE("patterns convert back to complete subnets of their supporters") {
    auto nets = generate_reservoir(mining_config(21));
    MineOptions opt;
    opt.minsup = 6;
    MiningResult r = mine(transform(nets), opt);
    auto subnets = patterns_to_subnets(r);
    auto patterns = r.all();
    REQUIRE(subnets.size() == patterns.size());

    for (std::size_t i = 0; i < subnets.size(); ++i) {
        validate_net(subnets[i]);
        CHECK(validate_and_classify(subnets[i]).pure);
        // the pattern occurs in each supporter as an induced match
        NetGraph pat = net_to_netgraph(subnets[i]);
        std::size_t checked = 0;
        for (const auto& n : nets) {
            if (std::find(patterns[i]->supporters.begin(), patterns[i]->supporters.end(),
                          n.id) == patterns[i]->supporters.end())
                continue;
            CHECK(!find_induced_embedding(pat, net_to_netgraph(n)).empty());
            if (++checked == 3) break; // spot check
        }
    }
}

TEST_CASE("mined support agrees with the brute force reference") {
    auto nets = generate_reservoir(mining_config(77));
    MineOptions opt;
    opt.minsup = 5;
    MiningResult r = mine(transform(nets), opt);

    auto oracle = brute_force_mine(nets, 5, 5);
    std::vector<std::pair<Net, std::uint64_t>> mined;
    auto subnets = patterns_to_subnets(r);
    auto patterns = r.all();
    for (std::size_t i = 0; i < subnets.size(); ++i)
        mined.push_back({subnets[i], patterns[i]->support});
    auto diffs = diff_results(oracle, mined);
    for (const auto& d : diffs) MESSAGE(d.kind, ": ", d.detail);
    CHECK(diffs.empty());
}

TEST_CASE("code unit filtering keeps only frequent edges") {
    std::vector<Net> nets;
    for (int i = 0; i < 3; ++i) nets.push_back(chain_net("n" + std::to_string(i)));
    Net lone = chain_net("n3");
    lone.conditions[1].label = "q"; // breaks the shared edge
    nets.push_back(lone);

    auto graphs = transform(nets);
    FilterResult f = build_and_filter(graphs, 3);
    // the common chain edge is frequent in the three identical nets
    CHECK(f.min_fdfs.size() == 1);
    for (int i = 0; i < 3; ++i) CHECK(f.fdfs[i].size() == 1); // the single chain unit survives
    CHECK(f.fdfs[3].empty());
    // node renderings reaching minsup
    CHECK(f.snng.count("t1(-a,+b)"));
    CHECK(f.snng.at("t1(-a,+b)") == 3);
    CHECK(!f.snng.count("t1(-a,+q)"));
}

TEST_CASE("embeddings are induced, not just subgraphs") {
    // pattern: two events sharing exactly one condition.  host: same two
    // events sharing two conditions -> not an induced match
    Net host;
    host.id = "host";
    host.conditions.push_back({"x", "x", Capacity::unbounded()});
    host.conditions.push_back({"y", "y", Capacity::unbounded()});
    host.events.push_back({"e1", "t1"});
    host.events.push_back({"e2", "t2"});
    host.arcs = {arc("e1", "x"), arc("x", "e2"), arc("e1", "y"), arc("y", "e2")};

    Net pat;
    pat.id = "pat";
    pat.conditions.push_back({"x", "x", Capacity::unbounded()});
    pat.events.push_back({"e1", "t1"});
    pat.events.push_back({"e2", "t2"});
    pat.arcs = {arc("e1", "x"), arc("x", "e2")};

    CHECK(find_induced_embedding(net_to_netgraph(pat), net_to_netgraph(host)).empty());
    CHECK(!find_induced_embedding(net_to_netgraph(host), net_to_netgraph(host)).empty());
}

TEST_CASE("planting report finds every planted net") {
    GenConfig host_cfg = mining_config(5);
    host_cfg.amount = 50;
    host_cfg.random_events = false;
    host_cfg.max_conditions = 6;
    host_cfg.condition_pool = 8;
    auto reservoir = generate_reservoir(host_cfg);

    PlantConfig pc;
    pc.count = 2;
    pc.max_events = 3;
    pc.max_conditions = 3;
    pc.minsup = 15;
    pc.seed = 12;
    pc.event_pool = 4;
    pc.condition_pool = 8;
    pc.min_events = 2;
    PlantingLedger ledger = plant(reservoir, pc);

    MineOptions opt;
    opt.minsup = 15;
    MiningResult r = mine(transform(reservoir), opt);
    PlantingReport report = planting_report(r, ledger);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.found);
        CHECK(row.mined >= row.planted);
        CHECK(row.ratio >= 1.0);
    }
    CHECK(report.all_recovered);
}

TEST_CASE("mining input validation") {
    MineOptions opt;
    opt.minsup = 0;
    std::vector<NetGraph> one{net_to_netgraph(chain_net("n"))};
    CHECK_THROWS_AS(mine(one, opt), ConfigInvalid);
    opt.minsup = 1;
    CHECK_THROWS_AS(mine({}, opt), EmptyInput);
}
