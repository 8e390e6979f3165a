#include <homlab/canon.hpp>

#include <algorithm>
#include <numeric>

namespace homlab {

namespace {

struct VertexClass {
    int degree;
    bool loop;
    int side;  // -1 none
    int dist;  // -1 when not applicable, else 0/1
};

bool operator==(const VertexClass& a, const VertexClass& b) {
    return a.degree == b.degree && a.loop == b.loop && a.side == b.side && a.dist == b.dist;
}

struct IsoSearch {
    const Graph& g1;
    const Graph& g2;
    std::vector<VertexClass> c1, c2;
    const DistinguishedGraph* d1 = nullptr;
    const DistinguishedGraph* d2 = nullptr;
    std::vector<int> map;     // g1 -> g2
    uint64_t used = 0;

    bool run() {
        map.assign(g1.n(), -1);
        return place(0);
    }

    bool compatible(int v, int w) const {
        if (!(c1[v] == c2[w])) return false;
        for (int u = 0; u < v; ++u) {
            if (map[u] < 0) continue;
            if (g1.has_edge(u, v) != g2.has_edge(map[u], w)) return false;
        }
        if (d1) {
            for (int u = 0; u <= v; ++u) {
                if (map[u] < 0 && u != v) continue;
                int mu = (u == v) ? w : map[u];
                if (d1->is_dist_edge(u, v) != d2->is_dist_edge(mu, w)) return false;
            }
        }
        return true;
    }

    bool place(int v) {
        if (v == g1.n()) return true;
        if (map[v] >= 0) { // anchored
            int w = map[v];
            if ((used >> w) & 1u) return false;
            if (!compatible(v, w)) return false;
            used |= 1ull << w;
            if (place(v + 1)) return true;
            used &= ~(1ull << w);
            return false;
        }
        for (int w = 0; w < g2.n(); ++w) {
            if ((used >> w) & 1u) continue;
            if (!compatible(v, w)) continue;
            map[v] = w;
            used |= 1ull << w;
            if (place(v + 1)) return true;
            used &= ~(1ull << w);
            map[v] = -1;
        }
        return false;
    }
};

std::vector<VertexClass> classes_of(const Graph& g, IsoFlavor flavor, const DistinguishedGraph* d) {
    std::vector<VertexClass> cs(g.n());
    for (int v = 0; v < g.n(); ++v) {
        cs[v].degree = g.degree(v);
        cs[v].loop = g.has_loop(v);
        cs[v].side = flavor == IsoFlavor::Bip ? static_cast<int>(g.side(v)) : -1;
        cs[v].dist = d ? (d->is_dist_vertex(v) ? 1 : 0) : -1;
    }
    return cs;
}

bool multiset_mismatch(std::vector<VertexClass> a, std::vector<VertexClass> b) {
    auto key = [](const VertexClass& c) {
        return std::tuple(c.degree, c.loop, c.side, c.dist);
    };
    auto lt = [&](const VertexClass& x, const VertexClass& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return true;
    return false;
}

} // namespace

bool is_isomorphic(const Graph& g1, const Graph& g2, IsoFlavor flavor,
                   const std::vector<std::string>& anchors1, const std::vector<std::string>& anchors2) {
    if (g1.n() != g2.n() || g1.edge_count() != g2.edge_count() || g1.loop_count() != g2.loop_count())
        return false;
    if (flavor == IsoFlavor::Bip &&
        (__builtin_popcountll(g1.side_mask(Side::L)) != __builtin_popcountll(g2.side_mask(Side::L))))
        return false;
    IsoSearch s{g1, g2, classes_of(g1, flavor, nullptr), classes_of(g2, flavor, nullptr)};
    if (multiset_mismatch(s.c1, s.c2)) return false;
    s.map.assign(g1.n(), -1);
    if (anchors1.size() != anchors2.size()) throw error("anchor tuples differ in length");
    for (size_t i = 0; i < anchors1.size(); ++i) {
        int a = g1.index_of(anchors1[i]);
        int b = g2.index_of(anchors2[i]);
        if (s.map[a] >= 0 && s.map[a] != b) return false;
        s.map[a] = b;
    }
    return s.place(0);
}

bool is_isomorphic(const DistinguishedGraph& g1, const DistinguishedGraph& g2) {
    if (g1.graph.n() != g2.graph.n() || g1.graph.edge_count() != g2.graph.edge_count() ||
        g1.dist_vertices.size() != g2.dist_vertices.size() || g1.dist_edges.size() != g2.dist_edges.size())
        return false;
    IsoSearch s{g1.graph, g2.graph, classes_of(g1.graph, IsoFlavor::Dist, &g1),
                classes_of(g2.graph, IsoFlavor::Dist, &g2), &g1, &g2};
    if (multiset_mismatch(s.c1, s.c2)) return false;
    s.map.assign(g1.graph.n(), -1);
    return s.place(0);
}

namespace {

std::optional<std::string> canonical_impl(const Graph& g, bool bip) {
    if (g.n() > 8) return std::nullopt;
    int n = g.n();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // degree prefilter: only permutations sorted by (class) can be minimal,
    // so iterate permutations within the sorted-class order
    auto cls = [&](int v) {
        long s = bip ? static_cast<long>(g.side(v)) : 0;
        return s * 1000 + g.degree(v) * 2 + (g.has_loop(v) ? 1 : 0);
    };
    std::string best;
    do {
        bool ordered = true;
        for (int i = 0; i + 1 < n && ordered; ++i)
            if (cls(perm[i]) > cls(perm[i + 1])) ordered = false;
        if (!ordered) continue;
        std::string s;
        s.reserve(n * n + n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) s.push_back(g.has_edge(perm[i], perm[j]) ? '1' : '0');
            if (bip) s.push_back(g.side(perm[i]) == Side::L ? 'L' : 'R');
        }
        if (best.empty() || s < best) best = std::move(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n == 0) best = "()";
    return std::to_string(n) + ":" + best;
}

} // namespace

std::optional<std::string> canonical_string(const Graph& g) {
    return canonical_impl(g, false);
}

std::optional<std::string> canonical_string_bip(const Graph& g) {
    return canonical_impl(g, true);
}

} // namespace homlab
