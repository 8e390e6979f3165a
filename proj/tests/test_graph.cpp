#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homlab/graph.hpp>

#include "testutil.hpp"

using namespace homlab;
using namespace homlab::testutil;

TEST_CASE("duplicate edges are rejected at construction") {
    Graph g({"a", "b"});
    g.add_edge("a", "b");
    CHECK_THROWS_AS(g.add_edge("b", "a"), duplicate_edge);
    Graph lp({"v"});
    lp.add_edge(0, 0);
    CHECK_THROWS_AS(lp.add_edge(0, 0), duplicate_edge);
}

TEST_CASE("bipartition validation") {
    Graph g({"a", "b", "c"});
    g.add_edge("a", "b");
    g.add_edge("b", "c");
    CHECK_THROWS_AS(g.set_bipartition({"a", "b"}, {"c"}), bipartition_violation);
    g.set_bipartition({"a", "c"}, {"b"});
    CHECK(g.side(g.index_of("a")) == Side::L);
    CHECK_THROWS_AS(g.add_edge("a", "c"), bipartition_violation);

    Graph lp({"v"});
    lp.add_edge(0, 0);
    CHECK_THROWS_AS(lp.set_bipartition({"v"}, {}), bipartition_violation);
}

TEST_CASE("disjoint union") {
    Graph k1({"v"});
    Graph u = disjoint_union(k1, k1);
    CHECK(u.n() == 2);
    CHECK(u.edge_count() == 0);

    Graph k2 = path_graph(2);
    Graph uu = disjoint_union(k2, k2);
    CHECK(uu.n() == 4);
    CHECK(uu.edge_count() == 2);
    CHECK(uu.connected_components().size() == 2);
}

TEST_CASE("tensor product small cases") {
    Graph k2 = path_graph(2);

    // a single looped vertex times an edge gives back the edge
    Graph t1 = tensor_product(single_loop(), k2);
    CHECK(t1.n() == 2);
    CHECK(t1.edge_count() == 1);
    CHECK(t1.loop_count() == 0);

    // edge with one loop times K2 is the path with 4 vertices
    Graph t2 = tensor_product(loop_edge(), k2);
    CHECK(t2.n() == 4);
    CHECK(t2.edge_count() == 3);
    int deg1 = 0, deg2 = 0;
    for (int v = 0; v < 4; ++v) {
        if (t2.degree(v) == 1) ++deg1;
        if (t2.degree(v) == 2) ++deg2;
    }
    CHECK(deg1 == 2);
    CHECK(deg2 == 2);
    CHECK(t2.connected_components().size() == 1);

    // K3 x K2 is the 6-cycle
    Graph t3 = tensor_product(complete_graph(3), k2);
    CHECK(t3.n() == 6);
    CHECK(t3.edge_count() == 6);
    for (int v = 0; v < 6; ++v) CHECK(t3.degree(v) == 2);
    CHECK(t3.connected_components().size() == 1);
}

TEST_CASE("identify") {
    Graph k2a({"a1", "a2"});
    k2a.add_edge(0, 1);
    Graph k2b({"b1", "b2"});
    k2b.add_edge(0, 1);
    Graph p3 = identify(k2a, "a2", k2b, "b1", "m");
    CHECK(p3.n() == 3);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.degree(p3.index_of("m")) == 2);

    // identifying two P3 centres gives the 4-leaf star
    Graph p3a = path_graph(3).renamed("a");
    Graph p3b = path_graph(3).renamed("b");
    Graph st = identify(p3a, "x2a", p3b, "x2b", "c");
    CHECK(st.n() == 5);
    CHECK(st.degree(st.index_of("c")) == 4);
    for (const auto& leaf : {"x1a", "x3a", "x1b", "x3b"}) CHECK(st.degree(st.index_of(leaf)) == 1);
}

TEST_CASE("induced subgraph") {
    Graph c4 = cycle_graph(4);
    Graph p3 = induced_subgraph(c4, {"c1", "c2", "c3"});
    CHECK(p3.n() == 3);
    CHECK(p3.edge_count() == 2);

    Graph k33 = complete_bipartite(3, 3);
    Graph k22 = induced_subgraph(k33, {"a1", "a2", "b1", "b2"});
    CHECK(k22.edge_count() == 4);

    Graph same = induced_subgraph(c4, c4.names());
    CHECK(same.edge_count() == c4.edge_count());

    CHECK_THROWS_AS(induced_subgraph(c4, {"nope"}), unknown_vertex);
}

TEST_CASE("induced composes: G[A][B] = G[B] for B inside A") {
    Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        Graph g = random_graph(rng, 7, 0.5, true);
        uint64_t a_mask = rng() & g.all_mask();
        uint64_t b_mask = rng() & a_mask;
        Graph ga = g.induced(a_mask);
        std::vector<std::string> b_names;
        for (int v = 0; v < g.n(); ++v)
            if ((b_mask >> v) & 1u) b_names.push_back(g.name(v));
        Graph gab = ga.induced(b_names);
        Graph gb = g.induced(b_mask);
        REQUIRE(gab.n() == gb.n());
        for (auto [x, y] : gb.edges())
            CHECK(gab.has_edge(gab.index_of(gb.name(x)), gab.index_of(gb.name(y))));
        CHECK(gab.edge_count() == gb.edge_count());
    }
}

TEST_CASE("two_ball") {
    Graph p5 = path_graph(5);
    Graph b = two_ball(p5, "x1");
    CHECK(b.n() == 3); // x1 x2 x3
    CHECK(b.edge_count() == 2);

    Graph st = star(4);
    CHECK(two_ball(st, "c").n() == st.n());

    Graph iso({"v", "w"});
    CHECK(two_ball(iso, "v").n() == 0); // isolated vertex: empty graph
}

TEST_CASE("blocks") {
    Graph p4 = path_graph(4);
    auto bs = blocks(p4);
    CHECK(bs.size() == 3);
    for (const auto& b : bs) CHECK(b.edge_count() == 1);

    CHECK(blocks(complete_bipartite(2, 3)).size() == 1);

    // bowtie: two triangles sharing a vertex
    Graph bow({"a", "b", "c", "d", "e"});
    bow.add_edge("a", "b");
    bow.add_edge("b", "c");
    bow.add_edge("c", "a");
    bow.add_edge("c", "d");
    bow.add_edge("d", "e");
    bow.add_edge("e", "c");
    CHECK(blocks(bow).size() == 2);
}

TEST_CASE("blocks partition the edge set") {
    Rng rng(11);
    for (int rep = 0; rep < 40; ++rep) {
        Graph g = random_graph(rng, 8, 0.35, true);
        auto bs = blocks(g);
        int total = 0;
        for (const auto& b : bs) total += b.edge_count();
        CHECK(total == g.edge_count());
    }
}

TEST_CASE("structural predicates") {
    CHECK(is_complete_bipartite(complete_bipartite(2, 3)));
    CHECK(is_complete_bipartite(Graph{}));
    CHECK(is_complete_bipartite(single_vertex()));
    CHECK(!is_complete_bipartite(path_graph(4)));

    CHECK(is_reflexive_complete(reflexive_complete(3)));
    Graph almost = reflexive_complete(3);
    Graph broken(almost.names());
    for (auto [a, b] : almost.edges())
        if (!(a == 0 && b == 0)) broken.add_edge(a, b);
    CHECK(!is_reflexive_complete(broken));

    Graph c6 = cycle_graph(6);
    CHECK(c6.distance(0, 3) == 3);
}

TEST_CASE("tensor with K2 is always bipartite with the block bipartition") {
    Rng rng(23);
    Graph k2 = path_graph(2);
    for (int rep = 0; rep < 30; ++rep) {
        Graph g = random_graph(rng, 6, 0.5, true);
        Graph t = tensor_product(g, k2);
        auto sides = bipartition_of(t);
        REQUIRE(sides.has_value());
    }
}
