#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homlab/canon.hpp>
#include <homlab/hom.hpp>
#include <homlab/reduction.hpp>

#include "testutil.hpp"

using namespace homlab;
using namespace homlab::testutil;

namespace {

Graph p4_fixed() {
    Graph p4 = path_graph(4);
    p4.set_bipartition({"x1", "x3"}, {"x2", "x4"});
    return p4;
}

// plant an order-p symmetry: either p twins of one vertex or p disjoint copies
Graph plant_symmetry(Rng& rng, unsigned p) {
    if (rng() % 2 == 0) {
        // p-1 fresh twins of a loop-free pivot
        Graph base = random_graph(rng, 3 + rng() % 2, 0.5, false);
        int pivot = static_cast<int>(rng() % base.n());
        std::vector<std::string> names = base.names();
        for (unsigned i = 1; i < p; ++i) names.push_back("tw" + std::to_string(i));
        Graph g(names);
        for (auto [a, b] : base.edges()) g.add_edge(a, b);
        uint64_t nb = base.adj(pivot) & ~(1ull << pivot);
        for (unsigned i = 1; i < p; ++i) {
            uint64_t m = nb;
            while (m) {
                int x = __builtin_ctzll(m);
                m &= m - 1;
                g.add_edge(g.index_of("tw" + std::to_string(i)), x);
            }
        }
        return g;
    }
    Graph unit = random_graph(rng, 1 + rng() % 3, 0.6, true);
    Graph acc = unit;
    for (unsigned i = 1; i < p; ++i) acc = disjoint_union(acc, unit);
    return disjoint_union(acc, random_graph(rng, 2, 0.5, true));
}

} // namespace

TEST_CASE("automorphism groups of named graphs") {
    CHECK(automorphism_group(star(3)).order() == 6);
    CHECK(automorphism_group(p4_fixed(), AutFlavor::Bip).order() == 1);
    DistinguishedGraph k2(path_graph(2), {"x1", "x2"}, {});
    CHECK(automorphism_group(k2).order() == 2);
    CHECK(automorphism_group(cycle_graph(4)).order() == 8);
}

TEST_CASE("find_order_p_automorphism") {
    auto rho = find_order_p_automorphism(star(3), 3);
    REQUIRE(rho.has_value());
    CHECK(permutation_order(*rho) == 3);

    CHECK(!find_order_p_automorphism(p4_fixed(), 2, AutFlavor::Bip).has_value());
    CHECK(!find_order_p_automorphism(single_vertex(), 2).has_value());
    CHECK(!find_order_p_automorphism(single_vertex(), 5).has_value());

    // Cauchy: an order-p element exists iff p divides the group order
    Rng rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        Graph g = random_graph(rng, 6, 0.4, true);
        size_t order = automorphism_group(g).order();
        for (unsigned p : {2u, 3u, 5u})
            CHECK((order % p == 0) == find_order_p_automorphism(g, p).has_value());
    }
}

TEST_CASE("reduce on named graphs") {
    auto t1 = reduce(star(3), 3);
    CHECK(t1.result.n() == 1);
    CHECK(t1.result.loop_count() == 0);

    auto t2 = reduce(path_graph(4), 2);
    CHECK(t2.result.empty());

    auto t3 = reduce(p4_fixed(), 2, AutFlavor::Bip);
    CHECK(t3.result.n() == 4);
    CHECK(t3.steps.empty());
}

TEST_CASE("reduction steps fix only fixed points") {
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        unsigned p = rep % 2 == 0 ? 2 : 3;
        Graph h = plant_symmetry(rng, p);
        auto trace = reduce(h, p);
        const Graph* cur = &h;
        for (const auto& step : trace.steps) {
            CHECK(permutation_order(step.automorphism) == static_cast<int>(p));
            int fixed = 0;
            for (size_t v = 0; v < step.automorphism.size(); ++v)
                if (step.automorphism[v] == static_cast<int>(v)) ++fixed;
            CHECK(fixed == step.result.n());
            cur = &step.result;
        }
        CHECK(!find_order_p_automorphism(*cur, p).has_value());
    }
}

TEST_CASE("cancellation: hom(G,H) = hom(G,H^rho) mod p") {
    Rng rng(47);
    for (int rep = 0; rep < 30; ++rep) {
        unsigned p = (rep % 3 == 0) ? 2 : (rep % 3 == 1 ? 3 : 5);
        Graph h = plant_symmetry(rng, p);
        auto rho = find_order_p_automorphism(h, p);
        REQUIRE(rho.has_value());
        uint64_t fixed = 0;
        for (size_t v = 0; v < rho->size(); ++v)
            if ((*rho)[v] == static_cast<int>(v)) fixed |= 1ull << v;
        Graph hr = h.induced(fixed);
        Graph g = random_graph(rng, 4, 0.5, false);
        CHECK(count_homs(g, h).value % p == count_homs(g, hr).value % p);
    }
}

TEST_CASE("confluence: two enumeration orders yield isomorphic terminals") {
    Rng rng(53);
    for (int rep = 0; rep < 25; ++rep) {
        unsigned p = rep % 2 == 0 ? 2 : 3;
        Graph h = plant_symmetry(rng, p);
        Graph first = reduce(h, p, AutFlavor::Plain, Chooser::First).result;
        Graph last = reduce(h, p, AutFlavor::Plain, Chooser::Last).result;
        CHECK(is_isomorphic(first, last));
    }
}

TEST_CASE("orbit and stabilizer on the 3-star") {
    Graph st = star(3);
    auto leaf_orbit = orbit(st, AutFlavor::Plain, {st.index_of("l1")});
    CHECK(leaf_orbit.size() == 3);
    CHECK(stabilizer(st, AutFlavor::Plain, {st.index_of("c")}).order() == 6);
    auto pair_orbit = orbit(st, AutFlavor::Plain, {st.index_of("l1"), st.index_of("l2")});
    CHECK(pair_orbit.size() == 6);
}

TEST_CASE("orbit-stabilizer identity and aut divisibility") {
    Rng rng(61);
    for (int rep = 0; rep < 25; ++rep) {
        Graph g = random_graph(rng, 5, 0.5, true);
        size_t aut = automorphism_group(g).order();
        int v = static_cast<int>(rng() % g.n());
        size_t orb = orbit(g, AutFlavor::Plain, {v}).size();
        size_t stab = stabilizer(g, AutFlavor::Plain, {v}).order();
        CHECK(aut == orb * stab);
        CHECK(aut % orb == 0);
        CHECK(count_aut(g).value == aut);
    }
}

TEST_CASE("tuple-orbit: an orbit of size divisible by p forces an order-p element") {
    Rng rng(71);
    for (int rep = 0; rep < 30; ++rep) {
        unsigned p = rep % 2 == 0 ? 2 : 3;
        Graph g = random_graph(rng, 6, 0.5, false);
        int a = static_cast<int>(rng() % g.n());
        int b = static_cast<int>(rng() % g.n());
        size_t orb = orbit(g, AutFlavor::Plain, {a, b}).size();
        if (orb % p == 0) CHECK(find_order_p_automorphism(g, p).has_value());
    }
}

TEST_CASE("no p vertices share a neighbourhood in a partition-wise reduced graph") {
    Rng rng(83);
    for (int rep = 0; rep < 25; ++rep) {
        unsigned p = rep % 2 == 0 ? 2 : 3;
        Graph g = random_bip_graph(rng, 3, 4, 0.5);
        Graph red = reduce(g, p, AutFlavor::Bip).result;
        for (int v = 0; v < red.n(); ++v) {
            unsigned same = 0;
            for (int u = 0; u < red.n(); ++u)
                if (red.adj(u) == red.adj(v) && !red.has_edge(u, v) && red.side(u) == red.side(v)) ++same;
            CHECK(same < p);
        }
    }
}

TEST_CASE("dist reduction on the 3-star") {
    // a single distinguished leaf excludes the rotation from Aut^dist, so the
    // graph stays put (and the partially surjective counts are genuinely
    // nonzero mod 3: G = K1 hits the leaf exactly once)
    DistinguishedGraph one_leaf(star(3), {"l1"}, {});
    auto t = reduce(one_leaf, 3);
    CHECK(t.steps.empty());
    CHECK(!t.lost_distinguished);

    // with every vertex distinguished the rotation is back in Aut^dist and
    // drops distinguished leaves
    DistinguishedGraph all(star(3), star(3).names(), {});
    auto t2 = reduce(all, 3);
    CHECK(t2.lost_distinguished);

    DistinguishedGraph none(star(3), {}, {});
    auto t3 = reduce(none, 3);
    CHECK(t3.result.graph.n() == reduce(star(3), 3).result.n());
}
