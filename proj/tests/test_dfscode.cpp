#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pspan/dfscode.hpp"

using namespace pspan;

namespace {

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

// six-event fixture with nine edges; its minimal code exercises backward
// traversal, history backtracking and tie branching all at once
NetGraph graph_k() {
    return build_graph(
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
}

const std::vector<std::string> kExpectedMinimal = {
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

} // namespace

TEST_CASE("minimal code of the six-event fixture, unit by unit") {
    NetGraph k = graph_k();
    DfsCode code = minimal_dfs_code(k);
    REQUIRE(code.units.size() == kExpectedMinimal.size());
    for (std::size_t i = 0; i < code.units.size(); ++i)
        CHECK(code.units[i].to_string("1") == kExpectedMinimal[i]);
}

TEST_CASE("the minimal code beats the two alternative traversals") {
    NetGraph k = graph_k();
    DfsCode minimal = minimal_dfs_code(k);

    // same graph walked from e3 and from e2 instead of e1
    DfsCode from_e3, from_e2;
    from_e3.units.push_back(parse_unit(
        "(0,1,e3(-a,-l,-n,+b,+t),((-,n,-)),e2(-e,-n,-o,-r,+c,+d,+q),1)"));
    from_e2.units.push_back(parse_unit(
        "(0,1,e2(-e,-n,-o,-r,+c,+d,+q),((-,r,+),(+,q,-)),e5(-q,-s,+f,+g,+h,+i,+r),1)"));

    CHECK(compare_units(minimal.units[0], from_e3.units[0]) < 0);
    CHECK(compare_units(minimal.units[0], from_e2.units[0]) < 0);
    CHECK(compare_codes(minimal, from_e3) < 0);
    CHECK(compare_codes(minimal, from_e2) < 0);
}

TEST_CASE("minimal code is the minimum over every admissible traversal") {
    NetGraph k = graph_k();
    auto all = enumerate_dfs_codes(k, 8);
    REQUIRE(!all.empty());
    DfsCode minimal = minimal_dfs_code(k);
    for (const auto& c : all) CHECK(compare_codes(minimal, c) <= 0);
    bool hit = false;
    for (const auto& c : all)
        if (compare_codes(minimal, c) == 0) hit = true;
    CHECK(hit);
}

TEST_CASE("code round-trips through its graph") {
    NetGraph k = graph_k();
    DfsCode code = minimal_dfs_code(k);
    NetGraph rebuilt = code_to_netgraph(code);
    REQUIRE(rebuilt.nodes.size() == k.nodes.size());
    REQUIRE(rebuilt.edges.size() == k.edges.size());
    DfsCode again = minimal_dfs_code(rebuilt);
    CHECK(again.pattern_string() == code.pattern_string());
}

TEST_CASE("tagging order decides the first step") {
    // two parallel conditions between three events; the smaller triple
    // sequence must come first
    NetGraph g = build_graph(
        {
            "t1(-c6,-c9)",
            "t2(+c6,+c9)",
            "t3(-c6,+c9)",
        },
        {
            {0, 1, "(-,c6,+),(-,c9,+)"},
            {1, 2, "(+,c6,-),(+,c9,+)"},
            {2, 0, "(-,c6,-),(+,c9,-)"},
        });
    DfsCode code = minimal_dfs_code(g);
    REQUIRE(code.units.size() == 3);
    // the globally smallest (front, tagging, rear) reading starts the code
    std::string best;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [key, render] = edge_identification(g, (int)e);
        if (best.empty() || key < best) best = key;
    }
    std::string got = code.units[0].front_key + code.units[0].edge_key +
                      code.units[0].rear_key;
    CHECK(got == best);
}

TEST_CASE("unit comparison is segment by segment") {
    DfsUnit a = parse_unit("(0,1,a(-x),((-,x,-)),b(-x,+y))");
    DfsUnit b = parse_unit("(0,1,a(-x),((-,x,+)),b(-x,+y))");
    DfsUnit c = parse_unit("(0,2,a(-x),((-,x,-)),b(-x,+y))");
    DfsUnit d = parse_unit("(0,1,a(-x),((+,x,-)),b(-x,+y))");
    CHECK(compare_units(a, b) < 0);  // '-' before '+' in the rear sign
    CHECK(compare_units(a, c) < 0);  // orders beat taggings
    CHECK(compare_units(a, d) < 0);  // front sign likewise
    CHECK(compare_units(a, a) == 0);
}

TEST_CASE("a proper prefix sorts before its extensions") {
    DfsCode shorter, longer;
    shorter.units.push_back(parse_unit("(0,1,a(-x),((-,x,-)),b(-x))"));
    longer.units = shorter.units;
    longer.units.push_back(parse_unit("(1,2,b(-x),((-,x,-)),c(-x))"));
    CHECK(compare_codes(shorter, longer) < 0);
    CHECK(compare_codes(longer, shorter) > 0);
}

TEST_CASE("edge identification ignores orientation") {
    NetGraph g = build_graph({"a(-x,+y)", "b(-y,+x)"}, {{0, 1, "(-,x,+),(+,y,-)"}});
    NetGraph h = build_graph({"b(-y,+x)", "a(-x,+y)"}, {{0, 1, "(-,y,+),(+,x,-)"}});
    CHECK(edge_identification(g, 0).first == edge_identification(h, 0).first);
    CHECK(edge_identification(g, 0).second == edge_identification(h, 0).second);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_unit("(0,1,a(-x)"), MalformedCode);
    CHECK_THROWS_AS(parse_unit("(x,1,a(-x),((-,x,-)),b(-x))"), MalformedCode);
    CHECK_THROWS_AS(parse_node_render("a(-x"), MalformedCode);
    CHECK_THROWS_AS(parse_edge_render("(-,x)"), MalformedCode);
}

TEST_CASE("degenerate graphs are rejected") {
    NetGraph lonely = build_graph({"a(-x)"}, {});
    CHECK_THROWS_AS(minimal_dfs_code(lonely), NoEdges);

    NetGraph split = build_graph({"a(-x)", "b(-y)", "c(-x)", "d(-y)"},
                                 {{0, 2, "(-,x,-)"}, {1, 3, "(-,y,-)"}});
    CHECK_THROWS_AS(minimal_dfs_code(split), Disconnected);
}

TEST_CASE("enumeration guard") {
    NetGraph k = graph_k();
    CHECK_THROWS_AS(enumerate_dfs_codes(k, 3), SizeGuardExceeded);
}
