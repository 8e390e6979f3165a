#include <homlab/reduction.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace homlab {

int permutation_order(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    long long ord = 1;
    for (int v = 0; v < n; ++v) {
        if (seen[v]) continue;
        int len = 0, x = v;
        while (!seen[x]) {
            seen[x] = true;
            x = perm[x];
            ++len;
        }
        ord = std::lcm(ord, static_cast<long long>(len));
    }
    return static_cast<int>(ord);
}

namespace {

struct AutSearch {
    const Graph& g;
    AutFlavor flavor;
    const DistinguishedGraph* dg;
    size_t cap;

    std::vector<int> map;
    uint64_t used = 0;
    size_t emitted = 0;
    bool stopped = false;

    template <typename F>
    void run(F&& emit) {
        map.assign(g.n(), -1);
        place(0, emit);
    }

    bool compatible(int v, int w) const {
        if (g.degree(v) != g.degree(w) || g.has_loop(v) != g.has_loop(w)) return false;
        if (flavor == AutFlavor::Bip && g.side(v) != g.side(w)) return false;
        if (dg && dg->is_dist_vertex(v) != dg->is_dist_vertex(w)) return false;
        for (int u = 0; u < v; ++u) {
            if (g.has_edge(u, v) != g.has_edge(map[u], w)) return false;
            if (dg && dg->is_dist_edge(u, v) != dg->is_dist_edge(map[u], w)) return false;
        }
        if (dg && dg->is_dist_edge(v, v) != dg->is_dist_edge(w, w)) return false;
        return true;
    }

    template <typename F>
    void place(int v, F&& emit) {
        if (stopped) return;
        if (v == g.n()) {
            if (++emitted > cap) throw instance_too_large("automorphism group enumeration cap exceeded");
            if (!emit(map)) stopped = true;
            return;
        }
        for (int w = 0; w < g.n() && !stopped; ++w) {
            if ((used >> w) & 1u) continue;
            if (!compatible(v, w)) continue;
            map[v] = w;
            used |= 1ull << w;
            place(v + 1, emit);
            used &= ~(1ull << w);
            map[v] = -1;
        }
    }
};

/// Classes of >= p mutually twin vertices (identical neighbourhoods, and for
/// Bip the same side) admit the cyclic shift as an order-p automorphism.
std::optional<std::vector<int>> twin_shift(const Graph& g, unsigned p, AutFlavor flavor,
                                           const DistinguishedGraph* dg) {
    for (int v = 0; v < g.n(); ++v) {
        std::vector<int> cls{v};
        for (int u = v + 1; u < g.n(); ++u) {
            if (g.adj(u) != g.adj(v)) continue;
            if (g.has_loop(u) != g.has_loop(v)) continue;
            if ((g.adj(v) >> u) & 1u) continue; // adjacent vertices are not plain twins
            if (flavor == AutFlavor::Bip && g.side(u) != g.side(v)) continue;
            if (dg) {
                if (dg->is_dist_vertex(u) != dg->is_dist_vertex(v)) continue;
                bool same_dist_edges = true;
                uint64_t nb = g.adj(v);
                while (nb) {
                    int x = __builtin_ctzll(nb);
                    nb &= nb - 1;
                    if (dg->is_dist_edge(u, x) != dg->is_dist_edge(v, x)) same_dist_edges = false;
                }
                if (!same_dist_edges) continue;
            }
            cls.push_back(u);
        }
        if (cls.size() >= p) {
            std::vector<int> perm(g.n());
            std::iota(perm.begin(), perm.end(), 0);
            for (unsigned i = 0; i < p; ++i) perm[cls[i]] = cls[(i + 1) % p];
            return perm;
        }
    }
    return std::nullopt;
}

AutGroup group_impl(const Graph& g, AutFlavor flavor, const DistinguishedGraph* dg, size_t cap) {
    AutGroup out;
    out.flavor = flavor;
    AutSearch s{g, flavor, dg, cap};
    s.run([&](const std::vector<int>& perm) {
        out.elements.push_back(perm);
        return true;
    });
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

std::optional<std::vector<int>> find_impl(const Graph& g, unsigned p, AutFlavor flavor,
                                          const DistinguishedGraph* dg, Chooser chooser) {
    if (auto tw = twin_shift(g, p, flavor, dg); tw && chooser == Chooser::First) return tw;
    std::optional<std::vector<int>> found;
    AutSearch s{g, flavor, dg, 2'000'000};
    s.run([&](const std::vector<int>& perm) {
        if (permutation_order(perm) == static_cast<int>(p)) {
            found = perm;
            return chooser == Chooser::Last; // keep walking for Last
        }
        return true;
    });
    if (!found && chooser == Chooser::Last)
        if (auto tw = twin_shift(g, p, flavor, dg)) return tw;
    return found;
}

uint64_t fixed_points(const std::vector<int>& perm) {
    uint64_t m = 0;
    for (size_t v = 0; v < perm.size(); ++v)
        if (perm[v] == static_cast<int>(v)) m |= 1ull << v;
    return m;
}

} // namespace

AutGroup automorphism_group(const Graph& h, AutFlavor flavor, size_t cap) {
    if (flavor == AutFlavor::Bip && !h.has_bipartition())
        throw missing_bipartition("bip automorphism group needs a fixed bipartition");
    if (flavor == AutFlavor::Dist) throw error("dist flavor requires a DistinguishedGraph");
    return group_impl(h, flavor, nullptr, cap);
}

AutGroup automorphism_group(const DistinguishedGraph& h, size_t cap) {
    return group_impl(h.graph, AutFlavor::Dist, &h, cap);
}

std::optional<std::vector<int>> find_order_p_automorphism(const Graph& h, unsigned p, AutFlavor flavor) {
    if (flavor == AutFlavor::Bip && !h.has_bipartition())
        throw missing_bipartition("bip reduction needs a fixed bipartition");
    if (flavor == AutFlavor::Dist) throw error("dist flavor requires a DistinguishedGraph");
    return find_impl(h, p, flavor, nullptr, Chooser::First);
}

std::optional<std::vector<int>> find_order_p_automorphism(const DistinguishedGraph& h, unsigned p) {
    return find_impl(h.graph, p, AutFlavor::Dist, &h, Chooser::First);
}

ReductionTrace reduce(const Graph& h, unsigned p, AutFlavor flavor, Chooser chooser) {
    ReductionTrace trace;
    trace.result = h;
    while (true) {
        auto rho = find_impl(trace.result, p, flavor, nullptr, chooser);
        if (!rho) break;
        Graph next = trace.result.induced(fixed_points(*rho));
        trace.steps.push_back({*rho, next});
        trace.result = std::move(next);
    }
    return trace;
}

DistReductionTrace reduce(const DistinguishedGraph& h, unsigned p, Chooser chooser) {
    DistReductionTrace trace;
    trace.result = h;
    while (true) {
        auto rho = find_impl(trace.result.graph, p, AutFlavor::Dist, &trace.result, chooser);
        if (!rho) break;
        uint64_t fixed = fixed_points(*rho);
        for (int v : trace.result.dist_vertices)
            if (!((fixed >> v) & 1u)) trace.lost_distinguished = true;
        Graph next_graph = trace.result.graph.induced(fixed);
        std::vector<std::string> dvs;
        for (int v : trace.result.dist_vertices)
            if ((fixed >> v) & 1u) dvs.push_back(trace.result.graph.name(v));
        std::vector<std::pair<std::string, std::string>> des;
        for (auto [a, b] : trace.result.dist_edges)
            if (((fixed >> a) & 1u) && ((fixed >> b) & 1u))
                des.emplace_back(trace.result.graph.name(a), trace.result.graph.name(b));
        DistinguishedGraph next(next_graph, dvs, des);
        trace.steps.push_back({*rho, next_graph});
        trace.result = std::move(next);
    }
    return trace;
}

std::vector<std::vector<int>> orbit(const Graph& h, AutFlavor flavor, const std::vector<int>& tuple) {
    AutGroup g = automorphism_group(h, flavor);
    std::set<std::vector<int>> seen;
    for (const auto& perm : g.elements) {
        std::vector<int> img;
        img.reserve(tuple.size());
        for (int v : tuple) img.push_back(perm[v]);
        seen.insert(std::move(img));
    }
    return {seen.begin(), seen.end()};
}

AutGroup stabilizer(const Graph& h, AutFlavor flavor, const std::vector<int>& tuple) {
    AutGroup g = automorphism_group(h, flavor);
    AutGroup out;
    out.flavor = flavor;
    for (const auto& perm : g.elements) {
        bool fixes = true;
        for (int v : tuple)
            if (perm[v] != v) fixes = false;
        if (fixes) out.elements.push_back(perm);
    }
    return out;
}

} // namespace homlab
