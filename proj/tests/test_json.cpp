#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homlab/canon.hpp>
#include <homlab/json_io.hpp>

#include "testutil.hpp"

using namespace homlab;
using namespace homlab::testutil;

TEST_CASE("graph round trip") {
    Rng rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        Graph g = rep % 2 == 0 ? random_graph(rng, 6, 0.5, true) : random_bip_graph(rng, 3, 3, 0.5);
        Graph back = graph_from_json(graph_to_json(g));
        REQUIRE(back.n() == g.n());
        CHECK(back.names() == g.names());
        CHECK(back.edges() == g.edges());
        CHECK(back.has_bipartition() == g.has_bipartition());
        if (g.has_bipartition())
            for (int v = 0; v < g.n(); ++v) CHECK(back.side(v) == g.side(v));
    }
}

TEST_CASE("parser diagnostics name the offending edge") {
    json dup = json::parse(R"({"vertices": ["a","b"], "edges": [["a","b"],["b","a"]]})");
    try {
        graph_from_json(dup);
        FAIL("duplicate edge accepted");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("(b,a)") != std::string::npos);
    }

    json bad_side = json::parse(
        R"({"vertices": ["a","b"], "edges": [["a","b"]], "bipartition": {"L": ["a","b"], "R": []}})");
    try {
        graph_from_json(bad_side);
        FAIL("bipartition violation accepted");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("(a,b)") != std::string::npos);
    }

    json loopy_bip =
        json::parse(R"({"vertices": ["a"], "edges": [["a","a"]], "bipartition": {"L": ["a"], "R": []}})");
    CHECK_THROWS_AS(graph_from_json(loopy_bip), parse_error);

    json missing = json::parse(R"({"vertices": ["a"], "edges": [["a","zz"]]})");
    CHECK_THROWS_AS(graph_from_json(missing), parse_error);
}

TEST_CASE("distinguished graphs force edge endpoints") {
    json j = json::parse(
        R"({"vertices": ["a","b","c"], "edges": [["a","b"],["b","c"]], "dist_edges": [["a","b"]]})");
    DistinguishedGraph d = distinguished_from_json(j);
    CHECK(d.dist_vertices.size() == 2);
    CHECK(d.is_dist_edge(d.graph.index_of("a"), d.graph.index_of("b")));
    json back = distinguished_to_json(d);
    DistinguishedGraph d2 = distinguished_from_json(back);
    CHECK(is_isomorphic(d, d2));
}

TEST_CASE("labelled and quantum round trips") {
    LabelledGraph j(path_graph(3), {{"x1", "t"}}, {"x3"});
    LabelledGraph j2 = labelled_from_json(labelled_to_json(j));
    CHECK(j2.pins == j.pins);
    CHECK(j2.distinguished == j.distinguished);

    QuantumGraph q({{path_graph(2), 2}, {single_loop(), -1}}, 5);
    QuantumGraph q2 = quantum_from_json(quantum_to_json(q));
    REQUIRE(q2.constituents.size() == q.constituents.size());
    CHECK(q2.prime == q.prime);
}

TEST_CASE("gadget and verdict serialization") {
    auto [p4, gadget] = gadget_4vertex_path(1, 1, 1, 1, 2);
    HardnessGadget g2 = hardness_gadget_from_json(hardness_gadget_to_json(gadget));
    CHECK(verify_hardness_gadget(p4, 2, g2).valid);

    Verdict v = classify_homs(loop_edge(), 2);
    json vj = verdict_to_json(v);
    CHECK(vj.at("label") == "Hard");
    CHECK(vj.contains("evidence"));

    // byte-identical repeated serialization
    CHECK(vj.dump() == verdict_to_json(classify_homs(loop_edge(), 2)).dump());
}
