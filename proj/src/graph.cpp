#include <homlab/graph.hpp>

#include <algorithm>
#include <queue>

namespace homlab {

Graph::Graph(std::vector<std::string> vertex_names) {
    if (static_cast<int>(vertex_names.size()) > max_vertices)
        throw instance_too_large("graph exceeds " + std::to_string(max_vertices) + " vertices");
    names_ = std::move(vertex_names);
    adj_.assign(names_.size(), 0);
    for (int i = 0; i < n(); ++i) {
        auto [it, fresh] = index_.emplace(names_[i], i);
        if (!fresh) throw parse_error("duplicate vertex name: " + names_[i]);
    }
}

int Graph::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw unknown_vertex(name);
    return it->second;
}

std::optional<int> Graph::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void Graph::check_bipartition_edge(int a, int b) const {
    if (!sides_) return;
    if (a == b)
        throw bipartition_violation("loop (" + names_[a] + "," + names_[a] + ") in bipartite graph");
    if ((*sides_)[a] == (*sides_)[b])
        throw bipartition_violation("edge (" + names_[a] + "," + names_[b] + ") joins two " +
                                    ((*sides_)[a] == Side::L ? "L" : "R") + "-vertices");
}

void Graph::add_edge(int a, int b) {
    if (a < 0 || a >= n() || b < 0 || b >= n()) throw unknown_vertex("#" + std::to_string(std::max(a, b)));
    if (has_edge(a, b)) throw duplicate_edge(names_[a], names_[b]);
    check_bipartition_edge(a, b);
    adj_[a] |= 1ull << b;
    adj_[b] |= 1ull << a;
}

void Graph::add_edge(const std::string& a, const std::string& b) {
    add_edge(index_of(a), index_of(b));
}

void Graph::set_bipartition(const std::vector<std::string>& left, const std::vector<std::string>& right) {
    std::vector<Side> sides(n(), Side::L);
    std::vector<bool> seen(n(), false);
    for (const auto& v : left) {
        int i = index_of(v);
        if (seen[i]) throw bipartition_violation("vertex " + v + " assigned twice");
        seen[i] = true;
        sides[i] = Side::L;
    }
    for (const auto& v : right) {
        int i = index_of(v);
        if (seen[i]) throw bipartition_violation("vertex " + v + " assigned twice");
        seen[i] = true;
        sides[i] = Side::R;
    }
    for (int i = 0; i < n(); ++i)
        if (!seen[i]) throw bipartition_violation("vertex " + names_[i] + " missing from bipartition");
    sides_ = std::move(sides);
    for (auto [a, b] : edges()) check_bipartition_edge(a, b);
}

int Graph::degree(int v) const {
    return __builtin_popcountll(adj_[v]);
}

uint64_t Graph::loop_mask() const {
    uint64_t m = 0;
    for (int v = 0; v < n(); ++v)
        if (has_loop(v)) m |= 1ull << v;
    return m;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> es;
    for (int a = 0; a < n(); ++a)
        for (int b = a; b < n(); ++b)
            if (has_edge(a, b)) es.emplace_back(a, b);
    return es;
}

int Graph::edge_count() const {
    return static_cast<int>(edges().size());
}

int Graph::loop_count() const {
    return __builtin_popcountll(loop_mask());
}

Side Graph::side(int v) const {
    if (!sides_) throw missing_bipartition("graph carries no bipartition");
    return (*sides_)[v];
}

uint64_t Graph::side_mask(Side s) const {
    if (!sides_) throw missing_bipartition("graph carries no bipartition");
    uint64_t m = 0;
    for (int v = 0; v < n(); ++v)
        if ((*sides_)[v] == s) m |= 1ull << v;
    return m;
}

Graph Graph::induced(uint64_t keep) const {
    std::vector<std::string> kept_names;
    std::vector<int> old_of;
    for (int v = 0; v < n(); ++v)
        if ((keep >> v) & 1u) {
            kept_names.push_back(names_[v]);
            old_of.push_back(v);
        }
    Graph out(kept_names);
    for (int i = 0; i < out.n(); ++i)
        for (int j = i; j < out.n(); ++j)
            if (has_edge(old_of[i], old_of[j])) {
                out.adj_[i] |= 1ull << j;
                out.adj_[j] |= 1ull << i;
            }
    if (sides_) {
        std::vector<Side> s;
        s.reserve(out.n());
        for (int old : old_of) s.push_back((*sides_)[old]);
        out.sides_ = std::move(s);
    }
    return out;
}

Graph Graph::induced(const std::vector<std::string>& keep) const {
    uint64_t mask = 0;
    for (const auto& v : keep) mask |= 1ull << index_of(v);
    return induced(mask);
}

Graph Graph::renamed(const std::string& suffix) const {
    std::vector<std::string> nn;
    nn.reserve(names_.size());
    for (const auto& s : names_) nn.push_back(s + suffix);
    Graph out(nn);
    out.adj_ = adj_;
    out.sides_ = sides_;
    return out;
}

std::vector<std::vector<int>> Graph::connected_components() const {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(n(), false);
    for (int s = 0; s < n(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            uint64_t nb = adj_[v];
            while (nb) {
                int u = __builtin_ctzll(nb);
                nb &= nb - 1;
                if (!seen[u]) {
                    seen[u] = true;
                    q.push(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

int Graph::distance(int u, int v) const {
    std::vector<int> d(n(), -1);
    std::queue<int> q;
    d[u] = 0;
    q.push(u);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        if (x == v) return d[x];
        uint64_t nb = adj_[x];
        while (nb) {
            int y = __builtin_ctzll(nb);
            nb &= nb - 1;
            if (d[y] < 0) {
                d[y] = d[x] + 1;
                q.push(y);
            }
        }
    }
    return d[v];
}

DistinguishedGraph::DistinguishedGraph(Graph g, std::vector<std::string> dvs,
                                       std::vector<std::pair<std::string, std::string>> des)
    : graph(std::move(g)) {
    uint64_t dv = 0;
    for (const auto& v : dvs) dv |= 1ull << graph.index_of(v);
    for (const auto& [a, b] : des) {
        int i = graph.index_of(a), j = graph.index_of(b);
        if (!graph.has_edge(i, j))
            throw parse_error("distinguished edge (" + a + "," + b + ") is not an edge");
        dist_edges.emplace_back(std::min(i, j), std::max(i, j));
        dv |= (1ull << i) | (1ull << j);
    }
    std::sort(dist_edges.begin(), dist_edges.end());
    dist_edges.erase(std::unique(dist_edges.begin(), dist_edges.end()), dist_edges.end());
    for (int v = 0; v < graph.n(); ++v)
        if ((dv >> v) & 1u) dist_vertices.push_back(v);
}

bool DistinguishedGraph::is_dist_vertex(int v) const {
    return std::binary_search(dist_vertices.begin(), dist_vertices.end(), v);
}

bool DistinguishedGraph::is_dist_edge(int a, int b) const {
    auto e = std::make_pair(std::min(a, b), std::max(a, b));
    return std::binary_search(dist_edges.begin(), dist_edges.end(), e);
}

Graph disjoint_union(const Graph& g1, const Graph& g2) {
    std::vector<std::string> names;
    for (const auto& s : g1.names()) names.push_back(s + "#1");
    for (const auto& s : g2.names()) names.push_back(s + "#2");
    Graph out(names);
    for (auto [a, b] : g1.edges()) out.add_edge(a, b);
    int off = g1.n();
    for (auto [a, b] : g2.edges()) out.add_edge(a + off, b + off);
    if (g1.has_bipartition() && g2.has_bipartition()) {
        std::vector<std::string> left, right;
        for (int v = 0; v < g1.n(); ++v)
            (g1.side(v) == Side::L ? left : right).push_back(out.name(v));
        for (int v = 0; v < g2.n(); ++v)
            (g2.side(v) == Side::L ? left : right).push_back(out.name(v + off));
        out.set_bipartition(left, right);
    }
    return out;
}

Graph tensor_product(const Graph& g1, const Graph& g2) {
    std::vector<std::string> names;
    for (const auto& a : g1.names())
        for (const auto& b : g2.names()) names.push_back(a + "|" + b);
    Graph out(names);
    int n2 = g2.n();
    for (int u = 0; u < g1.n(); ++u)
        for (int v = 0; v < n2; ++v)
            for (int x = u; x < g1.n(); ++x)
                for (int y = 0; y < n2; ++y) {
                    int p = u * n2 + v, q = x * n2 + y;
                    if (q < p) continue;
                    if (g1.has_edge(u, x) && g2.has_edge(v, y) && !out.has_edge(p, q))
                        out.add_edge(p, q);
                }
    return out;
}

Graph identify(const Graph& g1, const std::string& v1, const Graph& g2, const std::string& v2,
               const std::string& new_name) {
    int i1 = g1.index_of(v1);
    int i2 = g2.index_of(v2);
    std::vector<std::string> names;
    for (const auto& s : g1.names())
        if (s != v1) names.push_back(s);
    names.push_back(new_name);
    for (const auto& s : g2.names())
        if (s != v2) names.push_back(s);
    Graph out(names);
    auto translate1 = [&](int v) { return v == i1 ? out.index_of(new_name) : out.index_of(g1.name(v)); };
    auto translate2 = [&](int v) { return v == i2 ? out.index_of(new_name) : out.index_of(g2.name(v)); };
    for (auto [a, b] : g1.edges()) {
        int x = translate1(a), y = translate1(b);
        if (!out.has_edge(x, y)) out.add_edge(x, y);
    }
    for (auto [a, b] : g2.edges()) {
        int x = translate2(a), y = translate2(b);
        if (!out.has_edge(x, y)) out.add_edge(x, y);
    }
    return out;
}

Graph merge_vertices(const Graph& g, const std::string& v1, const std::string& v2,
                     const std::string& new_name) {
    int i1 = g.index_of(v1), i2 = g.index_of(v2);
    if (i1 == i2) throw error("merge_vertices: same vertex " + v1);
    std::vector<std::string> names;
    for (int v = 0; v < g.n(); ++v) {
        if (v == i2) continue;
        names.push_back(v == i1 ? new_name : g.name(v));
    }
    Graph out(names);
    auto translate = [&](int v) {
        if (v == i1 || v == i2) return out.index_of(new_name);
        return out.index_of(g.name(v));
    };
    for (auto [a, b] : g.edges()) {
        int x = translate(a), y = translate(b);
        if (!out.has_edge(x, y)) out.add_edge(x, y);
    }
    if (g.has_bipartition() && g.side(i1) == g.side(i2)) {
        std::vector<std::string> left, right;
        for (int v = 0; v < out.n(); ++v) {
            Side s = out.name(v) == new_name ? g.side(i1) : g.side(g.index_of(out.name(v)));
            (s == Side::L ? left : right).push_back(out.name(v));
        }
        out.set_bipartition(left, right);
    }
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<std::string>& keep) {
    return g.induced(keep);
}

Graph two_ball(const Graph& g, int v) {
    uint64_t nb = g.adj(v);
    uint64_t keep = nb;
    uint64_t m = nb;
    while (m) {
        int u = __builtin_ctzll(m);
        m &= m - 1;
        keep |= g.adj(u);
    }
    return g.induced(keep);
}

Graph two_ball(const Graph& g, const std::string& v) {
    return two_ball(g, g.index_of(v));
}

namespace {

struct BlockFinder {
    const Graph& g;
    std::vector<int> num, low;
    int counter = 0;
    std::vector<std::pair<int, int>> stack;
    std::vector<std::vector<std::pair<int, int>>> found;

    explicit BlockFinder(const Graph& gr) : g(gr), num(gr.n(), -1), low(gr.n(), 0) {}

    void pop_block(std::pair<int, int> top_edge) {
        std::vector<std::pair<int, int>> es;
        while (true) {
            auto e = stack.back();
            stack.pop_back();
            es.push_back(e);
            if (e == top_edge) break;
        }
        found.push_back(std::move(es));
    }

    void dfs(int v, int parent) {
        num[v] = low[v] = counter++;
        uint64_t nb = g.adj(v);
        bool skipped_parent = false;
        while (nb) {
            int u = __builtin_ctzll(nb);
            nb &= nb - 1;
            if (u == v) continue; // loops become their own blocks
            if (u == parent && !skipped_parent) {
                skipped_parent = true;
                continue;
            }
            if (num[u] < 0) {
                stack.emplace_back(v, u);
                dfs(u, v);
                low[v] = std::min(low[v], low[u]);
                if (low[u] >= num[v]) pop_block({v, u});
            } else if (num[u] < num[v]) {
                stack.emplace_back(v, u);
                low[v] = std::min(low[v], num[u]);
            }
        }
    }
};

} // namespace

std::vector<Graph> blocks(const Graph& g) {
    BlockFinder bf(g);
    for (int v = 0; v < g.n(); ++v)
        if (bf.num[v] < 0) bf.dfs(v, -1);

    std::vector<Graph> out;
    for (const auto& es : bf.found) {
        uint64_t keep = 0;
        for (auto [a, b] : es) keep |= (1ull << a) | (1ull << b);
        Graph blk = g.induced(keep);
        // restrict to the block's own edges (the induced graph may pick up
        // loops or chords from other blocks)
        Graph clean(blk.names());
        for (auto [a, b] : es) {
            int x = clean.index_of(g.name(a));
            int y = clean.index_of(g.name(b));
            if (!clean.has_edge(x, y)) clean.add_edge(x, y);
        }
        out.push_back(std::move(clean));
    }
    for (int v = 0; v < g.n(); ++v) {
        if (g.has_loop(v)) {
            Graph lp({g.name(v)});
            lp.add_edge(0, 0);
            out.push_back(std::move(lp));
        }
        if ((g.adj(v) & ~(1ull << v)) == 0 && !g.has_loop(v)) // isolated vertex
            out.push_back(g.induced(1ull << v));
    }
    return out;
}

std::optional<std::vector<Side>> bipartition_of(const Graph& g) {
    std::vector<int> color(g.n(), -1);
    for (int s = 0; s < g.n(); ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            uint64_t nb = g.adj(v);
            while (nb) {
                int u = __builtin_ctzll(nb);
                nb &= nb - 1;
                if (u == v) return std::nullopt; // loop
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    q.push(u);
                } else if (color[u] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<Side> sides(g.n());
    for (int v = 0; v < g.n(); ++v) sides[v] = color[v] == 0 ? Side::L : Side::R;
    return sides;
}

std::optional<std::pair<int, int>> complete_bipartite_shape(const Graph& g) {
    if (g.loop_count() > 0) return std::nullopt;
    if (g.edge_count() == 0) return std::make_pair(0, g.n());
    auto comps = g.connected_components();
    const std::vector<int>* edged = nullptr;
    for (const auto& c : comps) {
        bool has_edge = c.size() > 1;
        if (has_edge) {
            if (edged) return std::nullopt; // two components with edges
            edged = &c;
        } else {
            return std::nullopt; // isolated vertex next to an edged part
        }
    }
    auto sides = bipartition_of(g);
    if (!sides) return std::nullopt;
    int a = 0, b = 0;
    for (int v = 0; v < g.n(); ++v) ((*sides)[v] == Side::L ? a : b)++;
    if (g.edge_count() != a * b) return std::nullopt;
    return std::make_pair(a, b);
}

bool is_complete_bipartite(const Graph& g) {
    return complete_bipartite_shape(g).has_value();
}

bool is_reflexive_complete(const Graph& g) {
    if (g.empty()) return false;
    for (int v = 0; v < g.n(); ++v)
        if (g.adj(v) != g.all_mask()) return false;
    return true;
}

bool is_dyer_greenhill(const Graph& g) {
    for (const auto& c : g.connected_components()) {
        uint64_t m = 0;
        for (int v : c) m |= 1ull << v;
        Graph comp = g.induced(m);
        if (!is_complete_bipartite(comp) && !is_reflexive_complete(comp)) return false;
    }
    return true;
}

} // namespace homlab
