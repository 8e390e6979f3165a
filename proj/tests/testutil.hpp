#ifndef HOMLAB_TESTUTIL_HPP
#define HOMLAB_TESTUTIL_HPP

#include <homlab/graph.hpp>

#include <random>
#include <string>
#include <vector>

namespace homlab::testutil {

inline Graph path_graph(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    Graph g(names);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("c" + std::to_string(i));
    Graph g(names);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph complete_graph(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("k" + std::to_string(i));
    Graph g(names);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph complete_bipartite(int a, int b) {
    std::vector<std::string> names, l, r;
    for (int i = 1; i <= a; ++i) {
        names.push_back("a" + std::to_string(i));
        l.push_back(names.back());
    }
    for (int i = 1; i <= b; ++i) {
        names.push_back("b" + std::to_string(i));
        r.push_back(names.back());
    }
    Graph g(names);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

inline Graph complete_bipartite_fixed(int a, int b) {
    Graph g = complete_bipartite(a, b);
    std::vector<std::string> l, r;
    for (int i = 0; i < a; ++i) l.push_back(g.name(i));
    for (int j = 0; j < b; ++j) r.push_back(g.name(a + j));
    g.set_bipartition(l, r);
    return g;
}

inline Graph reflexive_complete(int q) {
    Graph g = complete_graph(q);
    for (int i = 0; i < q; ++i) g.add_edge(i, i);
    return g;
}

inline Graph single_vertex() {
    return Graph({"v"});
}

inline Graph single_loop() {
    Graph g({"v"});
    g.add_edge(0, 0);
    return g;
}

inline Graph loop_edge() {
    // edge with one loop: hom counting equals independent-set counting
    Graph g({"a", "b"});
    g.add_edge(0, 1);
    g.add_edge(0, 0);
    return g;
}

inline Graph star(int leaves) {
    std::vector<std::string> names{"c"};
    for (int i = 1; i <= leaves; ++i) names.push_back("l" + std::to_string(i));
    Graph g(names);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

using Rng = std::mt19937_64;

inline Graph random_graph(Rng& rng, int n, double edge_prob = 0.4, bool loops = false) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    Graph g(names);
    std::bernoulli_distribution coin(edge_prob);
    for (int i = 0; i < n; ++i)
        for (int j = i + (loops ? 0 : 1); j < n; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

inline Graph random_connected_graph(Rng& rng, int n, double edge_prob = 0.5, bool loops = false) {
    for (int tries = 0; tries < 1000; ++tries) {
        Graph g = random_graph(rng, n, edge_prob, loops);
        if (g.connected_components().size() == 1) return g;
    }
    // fall back to a path to keep the generator total
    return path_graph(n);
}

inline Graph random_bip_graph(Rng& rng, int nl, int nr, double edge_prob = 0.5) {
    std::vector<std::string> names, l, r;
    for (int i = 0; i < nl; ++i) {
        names.push_back("l" + std::to_string(i));
        l.push_back(names.back());
    }
    for (int i = 0; i < nr; ++i) {
        names.push_back("r" + std::to_string(i));
        r.push_back(names.back());
    }
    Graph g(names);
    g.set_bipartition(l, r);
    std::bernoulli_distribution coin(edge_prob);
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nr; ++j)
            if (coin(rng)) g.add_edge(i, nl + j);
    return g;
}

} // namespace homlab::testutil

#endif
