#include <homlab/hom.hpp>
#include <homlab/kernels.hpp>

#include <algorithm>
#include <array>

namespace homlab {

LabelledGraph::LabelledGraph(Graph g, std::map<std::string, std::string> p, std::vector<std::string> d)
    : graph(std::move(g)), pins(std::move(p)), distinguished(std::move(d)) {
    for (const auto& [v, tgt] : pins) {
        (void)tgt;
        graph.index_of(v);
    }
    for (const auto& v : distinguished) {
        graph.index_of(v);
        if (pins.count(v)) throw pin_conflict("distinguished vertex " + v + " is pinned");
    }
}

LabelledGraph LabelledGraph::renamed(const std::string& suffix) const {
    LabelledGraph out;
    out.graph = graph.renamed(suffix);
    for (const auto& [v, t] : pins) out.pins.emplace(v + suffix, t);
    for (const auto& v : distinguished) out.distinguished.push_back(v + suffix);
    return out;
}

LabelledGraph identify(const LabelledGraph& j1, const std::string& v1, const LabelledGraph& j2,
                       const std::string& v2, const std::string& new_name) {
    if (j1.pins.count(v1)) throw pin_conflict("vertex " + v1 + " is pinned");
    if (j2.pins.count(v2)) throw pin_conflict("vertex " + v2 + " is pinned");
    LabelledGraph out;
    out.graph = identify(j1.graph, v1, j2.graph, v2, new_name);
    out.pins = j1.pins;
    for (const auto& [v, t] : j2.pins) {
        auto [it, fresh] = out.pins.emplace(v, t);
        if (!fresh && it->second != t)
            throw pin_conflict("vertex " + v + " pinned to both " + it->second + " and " + t);
    }
    for (const auto& d : j1.distinguished)
        out.distinguished.push_back(d == v1 ? new_name : d);
    for (const auto& d : j2.distinguished)
        out.distinguished.push_back(d == v2 ? new_name : d);
    return out;
}

namespace {

struct Enumerator {
    const Graph& src;
    const Graph& tgt;
    bool bip;
    unsigned long long budget;

    int n, m;
    std::array<uint64_t, Graph::max_vertices> rows{}; // padded to 64 for the kernels
    std::vector<uint64_t> base_cand;                  // unary candidates per source vertex
    std::vector<int> order;                           // free vertices, search order
    std::vector<int> image;                           // current assignment (-1 = unset)

    Enumerator(const Graph& s, const Graph& t, bool bip_mode, unsigned long long bud)
        : src(s), tgt(t), bip(bip_mode), budget(bud), n(s.n()), m(t.n()) {
        if (bip && (!src.has_bipartition() || !tgt.has_bipartition()))
            throw missing_bipartition("partition-preserving count needs fixed bipartitions on both graphs");
        for (int w = 0; w < m; ++w) rows[w] = tgt.adj(w);
        base_cand.assign(n, tgt.all_mask());
        for (int v = 0; v < n; ++v) {
            if (src.has_loop(v)) base_cand[v] &= tgt.loop_mask();
            if (bip) base_cand[v] &= tgt.side_mask(src.side(v));
        }
        image.assign(n, -1);
    }

    void pin(int v, int w) {
        uint64_t bit = 1ull << w;
        if (!(base_cand[v] & bit)) {
            base_cand[v] = 0; // pin violates a unary constraint: zero homs
        } else {
            base_cand[v] = bit;
        }
    }

    // Propagate singleton candidates into their neighbours until stable; the
    // budget then measures the genuinely remaining assignment space.
    void propagate_forced() {
        bool changed = true;
        int rounds = 0;
        while (changed && rounds++ <= n) {
            changed = false;
            for (int v = 0; v < n; ++v) {
                if (__builtin_popcountll(base_cand[v]) != 1) continue;
                int w = __builtin_ctzll(base_cand[v]);
                uint64_t nb = src.adj(v) & ~(1ull << v);
                while (nb) {
                    int u = __builtin_ctzll(nb);
                    nb &= nb - 1;
                    uint64_t shrunk = base_cand[u] & rows[w];
                    if (shrunk != base_cand[u]) {
                        base_cand[u] = shrunk;
                        changed = true;
                    }
                }
            }
        }
    }

    // Search order: pinned vertices first (forced), then repeatedly the free
    // vertex with the most ordered neighbours, ties by index.
    void finalize_order() {
        propagate_forced();
        std::vector<bool> placed(n, false);
        std::vector<int> forced;
        for (int v = 0; v < n; ++v)
            if (__builtin_popcountll(base_cand[v]) <= 1) {
                forced.push_back(v);
                placed[v] = true;
            }
        order = forced;
        for (int k = static_cast<int>(forced.size()); k < n; ++k) {
            int best = -1, best_links = -1;
            for (int v = 0; v < n; ++v) {
                if (placed[v]) continue;
                int links = 0;
                for (int u = 0; u < n; ++u)
                    if (placed[u] && src.has_edge(u, v)) ++links;
                if (links > best_links) {
                    best = v;
                    best_links = links;
                }
            }
            placed[best] = true;
            order.push_back(best);
        }
        unsigned long long space = 1;
        for (int v = 0; v < n; ++v) {
            unsigned long long c = static_cast<unsigned long long>(__builtin_popcountll(base_cand[v]));
            if (c == 0) return; // some vertex has no image: zero homs, nothing to guard
            if (c > 1 && space > budget / c) throw instance_too_large("assignment space exceeds budget");
            space *= c;
            if (space > budget) throw instance_too_large("assignment space exceeds budget");
        }
    }

    // Plain counting with a two-level kernel shortcut at the bottom.
    unsigned long long count() {
        finalize_order();
        std::vector<uint64_t> cand(n);
        for (int v = 0; v < n; ++v) cand[v] = base_cand[v];
        return descend(0, cand);
    }

    unsigned long long descend(int level, std::vector<uint64_t>& cand) {
        if (n == 0) return 1;
        int v = order[level];
        if (level == n - 1) return __builtin_popcountll(cand[v]);
        if (level == n - 2) {
            int z = order[n - 1];
            if (src.has_edge(v, z)) return kernels::masked_popcount_sum(rows.data(), cand[v], cand[z]);
            return static_cast<unsigned long long>(__builtin_popcountll(cand[v])) *
                   static_cast<unsigned long long>(__builtin_popcountll(cand[z]));
        }
        unsigned long long total = 0;
        uint64_t vc = cand[v];
        std::vector<uint64_t> saved;
        while (vc) {
            int w = __builtin_ctzll(vc);
            vc &= vc - 1;
            saved.assign(cand.begin(), cand.end());
            bool dead = false;
            for (int j = level + 1; j < n; ++j) {
                int u = order[j];
                if (src.has_edge(v, u)) {
                    cand[u] &= rows[w];
                    if (!cand[u]) dead = true;
                }
            }
            if (!dead) total += descend(level + 1, cand);
            cand = saved;
        }
        return total;
    }

    // Full enumeration (no shortcuts); callback per complete assignment.
    template <typename F>
    void enumerate(F&& emit) {
        finalize_order();
        std::vector<uint64_t> cand(n);
        for (int v = 0; v < n; ++v) cand[v] = base_cand[v];
        if (n == 0) {
            emit(image);
            return;
        }
        walk(0, cand, emit);
    }

    template <typename F>
    void walk(int level, std::vector<uint64_t>& cand, F&& emit) {
        int v = order[level];
        uint64_t vc = cand[v];
        std::vector<uint64_t> saved;
        while (vc) {
            int w = __builtin_ctzll(vc);
            vc &= vc - 1;
            image[v] = w;
            if (level == n - 1) {
                emit(image);
            } else {
                saved.assign(cand.begin(), cand.end());
                bool dead = false;
                for (int j = level + 1; j < n; ++j) {
                    int u = order[j];
                    if (src.has_edge(v, u)) {
                        cand[u] &= rows[w];
                        if (!cand[u]) dead = true;
                    }
                }
                if (!dead) walk(level + 1, cand, emit);
                cand = saved;
            }
            image[v] = -1;
        }
    }
};

void apply_labels(Enumerator& e, const Graph& tgt, const LabelledGraph& j,
                  const std::vector<std::string>& dist_targets) {
    if (j.distinguished.size() != dist_targets.size())
        throw error("distinguished tuple size mismatch: " + std::to_string(j.distinguished.size()) +
                    " vs " + std::to_string(dist_targets.size()));
    for (const auto& [v, t] : j.pins) e.pin(j.graph.index_of(v), tgt.index_of(t));
    for (size_t i = 0; i < dist_targets.size(); ++i)
        e.pin(j.graph.index_of(j.distinguished[i]), tgt.index_of(dist_targets[i]));
}

} // namespace

HomCount count_homs(const Graph& source, const Graph& target, const HomOptions& opts) {
    Enumerator e(source, target, opts.bip, opts.budget);
    return HomCount::of(e.count(), opts.mod);
}

HomCount count_homs(const LabelledGraph& source, const Graph& target,
                    const std::vector<std::string>& targets_for_distinguished, const HomOptions& opts) {
    Enumerator e(source.graph, target, opts.bip, opts.budget);
    apply_labels(e, target, source, targets_for_distinguished);
    return HomCount::of(e.count(), opts.mod);
}

HomCount count_bip_homs(const Graph& source, const Graph& target, const HomOptions& opts) {
    HomOptions o = opts;
    o.bip = true;
    return count_homs(source, target, o);
}

HomCount count_bip_homs(const LabelledGraph& source, const Graph& target,
                        const std::vector<std::string>& targets_for_distinguished, const HomOptions& opts) {
    HomOptions o = opts;
    o.bip = true;
    return count_homs(source, target, targets_for_distinguished, o);
}

HomCount count_inj(const Graph& source, const Graph& target, const HomOptions& opts) {
    // injectivity breaks the independence of the last two levels, so count by
    // full enumeration with a used-image filter
    Enumerator e(source, target, opts.bip, opts.budget);
    unsigned long long total = 0;
    int n = source.n();
    e.enumerate([&](const std::vector<int>& img) {
        uint64_t used = 0;
        for (int v = 0; v < n; ++v) {
            uint64_t bit = 1ull << img[v];
            if (used & bit) return;
            used |= bit;
        }
        ++total;
    });
    return HomCount::of(total, opts.mod);
}

HomCount count_surj(const Graph& source, const Graph& target, const HomOptions& opts) {
    Enumerator e(source, target, opts.bip, opts.budget);
    unsigned long long total = 0;
    uint64_t want_vertices = target.all_mask();
    auto tedges = target.edges();
    auto sedges = source.edges();
    std::vector<uint8_t> covered(tedges.size());
    std::map<std::pair<int, int>, int> edge_index;
    for (size_t i = 0; i < tedges.size(); ++i) edge_index[tedges[i]] = static_cast<int>(i);
    e.enumerate([&](const std::vector<int>& img) {
        uint64_t hit = 0;
        for (int w : img) hit |= 1ull << w;
        if (hit != want_vertices) return;
        // edge-surjective: every target edge is the image of some source edge
        std::fill(covered.begin(), covered.end(), 0);
        for (auto [a, b] : sedges) {
            int x = img[a], y = img[b];
            if (x > y) std::swap(x, y);
            covered[edge_index.at({x, y})] = 1;
        }
        for (uint8_t c : covered)
            if (!c) return;
        ++total;
    });
    return HomCount::of(total, opts.mod);
}

HomCount count_aut(const Graph& g, const HomOptions& opts) {
    // bijective and edge-preserving in both directions: exact row match
    Enumerator e(g, g, opts.bip, opts.budget);
    unsigned long long total = 0;
    int n = g.n();
    e.enumerate([&](const std::vector<int>& img) {
        uint64_t used = 0;
        for (int v = 0; v < n; ++v) {
            uint64_t bit = 1ull << img[v];
            if (used & bit) return;
            used |= bit;
        }
        for (int v = 0; v < n; ++v) {
            uint64_t mapped = 0;
            uint64_t nb = g.adj(v);
            while (nb) {
                int u = __builtin_ctzll(nb);
                nb &= nb - 1;
                mapped |= 1ull << img[u];
            }
            if (mapped != g.adj(img[v])) return;
        }
        ++total;
    });
    return HomCount::of(total, opts.mod);
}

HomCount count_walks(const Graph& h, const std::string& u, const std::string& v, int len,
                     const std::optional<std::vector<uint64_t>>& interior_allowed,
                     const std::optional<unsigned>& mod) {
    int s = h.index_of(u), t = h.index_of(v);
    if (interior_allowed && static_cast<int>(interior_allowed->size()) != std::max(0, len - 1))
        throw error("interior_allowed must list len-1 masks");
    std::vector<unsigned long long> cur(h.n(), 0), nxt(h.n());
    cur[s] = 1;
    for (int step = 0; step < len; ++step) {
        std::fill(nxt.begin(), nxt.end(), 0);
        for (int x = 0; x < h.n(); ++x) {
            if (!cur[x]) continue;
            uint64_t nb = h.adj(x);
            if (step < len - 1 && interior_allowed) nb &= (*interior_allowed)[step];
            while (nb) {
                int y = __builtin_ctzll(nb);
                nb &= nb - 1;
                unsigned long long before = nxt[y];
                nxt[y] += cur[x];
                if (nxt[y] < before) throw instance_too_large("walk count overflow");
            }
        }
        cur.swap(nxt);
    }
    return HomCount::of(cur[t], mod);
}

std::vector<std::vector<int>> enumerate_homs(const LabelledGraph& source, const Graph& target,
                                             const std::vector<std::string>& targets_for_distinguished,
                                             const HomOptions& opts) {
    Enumerator e(source.graph, target, opts.bip, opts.budget);
    apply_labels(e, target, source, targets_for_distinguished);
    std::vector<std::vector<int>> out;
    e.enumerate([&](const std::vector<int>& img) { out.push_back(img); });
    return out;
}

} // namespace homlab
