#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homlab/hom.hpp>
#include <homlab/canon.hpp>
#include <homlab/reduction.hpp>

#include "testutil.hpp"

using namespace homlab;
using namespace homlab::testutil;

namespace {

// independent oracle: walk counts by repeated matrix squaring
unsigned long long walk_oracle(const Graph& h, int u, int v, int len) {
    int n = h.n();
    using Mat = std::vector<std::vector<unsigned long long>>;
    Mat base(n, std::vector<unsigned long long>(n, 0)), acc(n, std::vector<unsigned long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        acc[i][i] = 1;
        for (int j = 0; j < n; ++j) base[i][j] = h.has_edge(i, j) ? 1 : 0;
    }
    auto mul = [&](const Mat& a, const Mat& b) {
        Mat c(n, std::vector<unsigned long long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    int e = len;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc[u][v];
}

} // namespace

TEST_CASE("basic hom counts") {
    CHECK(count_homs(single_vertex(), complete_bipartite(2, 3)).value == 5);
    CHECK(count_homs(path_graph(2), cycle_graph(4)).value == 8);
    CHECK(count_homs(complete_graph(3), path_graph(2)).value == 0);
    CHECK(count_homs(path_graph(2), single_loop()).value == 1);
    CHECK(count_homs(Graph{}, complete_graph(3)).value == 1); // empty source
    CHECK(count_homs(path_graph(3), Graph{}).value == 0);     // empty target
}

TEST_CASE("bip hom counts") {
    Graph k2 = complete_bipartite_fixed(1, 1);
    Graph p4 = path_graph(4);
    p4.set_bipartition({"x1", "x3"}, {"x2", "x4"});
    CHECK(count_bip_homs(k2, p4).value == 3);
    CHECK(count_homs(k2, p4).value == 6); // 2 x the partition-preserving count

    Graph k1l({"u"});
    k1l.set_bipartition({"u"}, {});
    CHECK(count_bip_homs(k1l, complete_bipartite_fixed(3, 4)).value == 3);

    CHECK_THROWS_AS(count_bip_homs(path_graph(2), p4), missing_bipartition);
}

TEST_CASE("labelled counts with pins and distinguished vertices") {
    Graph p4 = path_graph(4);
    LabelledGraph j(path_graph(2), {{"x1", "x2"}}, {});
    CHECK(count_homs(j, p4).value == 2); // x1 pinned to the second path vertex

    LabelledGraph jd(path_graph(2), {}, {"x1"});
    CHECK(count_homs(jd, p4, {"x1"}).value == 1);
    CHECK(count_homs(jd, p4, {"x2"}).value == 2);

    CHECK_THROWS_AS(LabelledGraph(path_graph(2), {{"x1", "t"}}, {"x1"}), pin_conflict);
}

TEST_CASE("inj, surj, aut counts") {
    CHECK(count_aut(cycle_graph(4)).value == 8);
    CHECK(count_surj(path_graph(3), path_graph(2)).value == 2);
    CHECK(count_inj(path_graph(2), single_vertex()).value == 0);
    CHECK(count_inj(path_graph(2), complete_graph(3)).value == 6);
    CHECK(count_aut(star(3)).value == 6);
    CHECK(count_aut(single_loop()).value == 1);
}

TEST_CASE("walk counts") {
    Graph c6 = cycle_graph(6);
    CHECK(count_walks(c6, "c1", "c1", 0).value == 1);
    CHECK(count_walks(c6, "c1", "c2", 0).value == 0);
    CHECK(count_walks(c6, "c1", "c1", 6).value == 22);

    Graph k23 = complete_bipartite(2, 3);
    CHECK(count_walks(k23, "a1", "a2", 2).value == 3);

    Rng rng(99);
    for (int rep = 0; rep < 25; ++rep) {
        Graph g = random_graph(rng, 6, 0.5, true);
        int u = static_cast<int>(rng() % 6), v = static_cast<int>(rng() % 6);
        int len = static_cast<int>(rng() % 7);
        CHECK(count_walks(g, g.name(u), g.name(v), len).value == walk_oracle(g, u, v, len));
    }
}

TEST_CASE("restricted walks respect the interior masks") {
    Graph p5 = path_graph(5);
    // walks x1 -> x5 of length 4 through the spine only
    std::vector<uint64_t> interior{1ull << 1, 1ull << 2, 1ull << 3};
    CHECK(count_walks(p5, "x1", "x5", 4, interior).value == 1);
    std::vector<uint64_t> blocked{1ull << 1, 0, 1ull << 3};
    CHECK(count_walks(p5, "x1", "x5", 4, blocked).value == 0);
}

TEST_CASE("hom identity (1): disjoint union in the source multiplies") {
    Rng rng(1);
    for (int rep = 0; rep < 25; ++rep) {
        Graph g = random_graph(rng, 4, 0.5, true);
        Graph f = random_graph(rng, 4, 0.5, true);
        Graph a = random_graph(rng, 4, 0.5, true);
        CHECK(count_homs(disjoint_union(g, f), a).value ==
              count_homs(g, a).value * count_homs(f, a).value);
    }
}

TEST_CASE("hom identity (2): tensor product in the target multiplies") {
    Rng rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = random_graph(rng, 4, 0.5, false);
        Graph a = random_graph(rng, 4, 0.5, true);
        Graph b = random_graph(rng, 3, 0.5, true);
        CHECK(count_homs(g, tensor_product(a, b)).value ==
              count_homs(g, a).value * count_homs(g, b).value);
    }
}

TEST_CASE("hom identity (3): disjoint union in the target adds for connected sources") {
    Rng rng(3);
    for (int rep = 0; rep < 25; ++rep) {
        Graph g = random_connected_graph(rng, 4);
        Graph a = random_graph(rng, 4, 0.5, true);
        Graph b = random_graph(rng, 3, 0.5, true);
        CHECK(count_homs(g, disjoint_union(a, b)).value ==
              count_homs(g, a).value + count_homs(g, b).value);
    }
}

TEST_CASE("bip variant of identity (1)") {
    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = random_bip_graph(rng, 2, 2);
        Graph f = random_bip_graph(rng, 2, 1);
        Graph a = random_bip_graph(rng, 3, 3);
        CHECK(count_bip_homs(disjoint_union(g, f), a).value ==
              count_bip_homs(g, a).value * count_bip_homs(f, a).value);
    }
}

TEST_CASE("hom = sum surj * inj / aut over the closure family (exact)") {
    // all subgraphs of K2 with loops, up to isomorphism: closed under
    // surjective homomorphic image
    std::vector<Graph> family;
    family.push_back(Graph{});
    family.push_back(single_vertex());
    family.push_back(single_loop());
    {
        Graph g({"u", "v"});
        family.push_back(g);
        Graph g1 = g;
        g1.add_edge(0, 0);
        family.push_back(g1);
        Graph g2 = g1;
        g2.add_edge(1, 1);
        family.push_back(g2);
        Graph e = g;
        e.add_edge(0, 1);
        family.push_back(e);
        Graph e1 = e;
        e1.add_edge(0, 0);
        family.push_back(e1);
        Graph e2 = e1;
        e2.add_edge(1, 1);
        family.push_back(e2);
    }
    for (const auto& fi : family)
        for (const auto& fj : family) {
            unsigned long long lhs = count_homs(fi, fj).value;
            unsigned long long rhs = 0;
            for (const auto& j : family) {
                unsigned long long s = count_surj(fi, j).value;
                unsigned long long i = count_inj(j, fj).value;
                unsigned long long a = count_aut(j).value;
                REQUIRE(a > 0);
                REQUIRE((s * i) % a == 0);
                rhs += s * i / a;
            }
            CHECK(lhs == rhs);
        }
}

TEST_CASE("budget guard") {
    HomOptions opts;
    opts.budget = 200;
    // star(3) has 4 vertices: 5^4 assignments break the budget
    CHECK_THROWS_AS(count_homs(star(3), complete_graph(5), opts), instance_too_large);
    // pinning the centre shrinks the space to 5^3
    LabelledGraph pinned(star(3), {{"c", "k1"}}, {});
    CHECK_NOTHROW(count_homs(pinned, complete_graph(5), {}, opts));
}

TEST_CASE("enumeration is deterministic") {
    Graph g = path_graph(3);
    Graph h = cycle_graph(4);
    auto a = enumerate_homs(LabelledGraph(g), h);
    auto b = enumerate_homs(LabelledGraph(g), h);
    CHECK(a == b);
    CHECK(a.size() == count_homs(g, h).value);
}
