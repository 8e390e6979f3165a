#include <homlab/structure.hpp>
#include <homlab/canon.hpp>
#include <homlab/reduction.hpp>

#include <algorithm>
#include <functional>

namespace homlab {

namespace {

Graph k33_minus_e() {
    Graph g({"a", "b", "c", "x", "y", "z"});
    for (std::string l : {"a", "b", "c"})
        for (std::string r : {"x", "y", "z"})
            if (!(l == "c" && r == "z")) g.add_edge(l, r);
    return g;
}

Graph domino() {
    // K_{3,3} minus two edges sharing no endpoint (the 2x3 grid)
    Graph g({"a", "b", "c", "x", "y", "z"});
    for (std::string l : {"a", "b", "c"})
        for (std::string r : {"x", "y", "z"})
            if (!(l == "a" && r == "z") && !(l == "c" && r == "x")) g.add_edge(l, r);
    return g;
}

std::vector<int> component_of(const Graph& g, int start, uint64_t allowed) {
    std::vector<int> comp;
    uint64_t seen = 1ull << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        uint64_t nb = g.adj(v) & allowed & ~seen;
        while (nb) {
            int u = __builtin_ctzll(nb);
            nb &= nb - 1;
            seen |= 1ull << u;
            stack.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

/// Components of B - center, each rejoined with the centre, as subgraphs of B.
std::vector<Graph> split_components(const Graph& ball, int center) {
    uint64_t rest = ball.all_mask() & ~(1ull << center);
    std::vector<Graph> out;
    uint64_t done = 0;
    for (int v = 0; v < ball.n(); ++v) {
        if (v == center || ((done >> v) & 1u)) continue;
        auto comp = component_of(ball, v, rest);
        uint64_t mask = 1ull << center;
        for (int x : comp) {
            mask |= 1ull << x;
            done |= 1ull << x;
        }
        out.push_back(ball.induced(mask));
    }
    return out;
}

Graph block_containing(const Graph& u, const std::string& center) {
    for (const Graph& b : blocks(u))
        if (b.find(center) && b.n() > 1) return b;
    // degenerate: centre isolated inside its component (cannot happen for
    // split components, which are connected through the centre)
    for (const Graph& b : blocks(u))
        if (b.find(center)) return b;
    throw error("no block contains " + center);
}

} // namespace

ForbiddenReport is_forbidden_free(const Graph& h) {
    static const Graph pat1 = k33_minus_e();
    static const Graph pat2 = domino();
    int n = h.n();
    if (n < 6) return {true, {}};
    std::vector<int> idx(6);
    // enumerate 6-subsets
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = i0 + 1; i1 < n; ++i1)
            for (int i2 = i1 + 1; i2 < n; ++i2)
                for (int i3 = i2 + 1; i3 < n; ++i3)
                    for (int i4 = i3 + 1; i4 < n; ++i4)
                        for (int i5 = i4 + 1; i5 < n; ++i5) {
                            uint64_t mask = (1ull << i0) | (1ull << i1) | (1ull << i2) |
                                            (1ull << i3) | (1ull << i4) | (1ull << i5);
                            Graph sub = h.induced(mask);
                            if (is_isomorphic(sub, pat1) || is_isomorphic(sub, pat2)) {
                                ForbiddenReport r;
                                r.free = false;
                                for (const auto& nm : sub.names()) r.witness.push_back(nm);
                                return r;
                            }
                        }
    return {true, {}};
}

bool is_forbidden_free_split_criterion(const Graph& h) {
    for (int v = 0; v < h.n(); ++v) {
        Split s = split_at(h, h.name(v));
        for (const auto& cls : s.classes)
            if (!is_complete_bipartite(cls.block_of_center)) return false;
    }
    return true;
}

Split split_at(const Graph& h, const std::string& v) {
    int vi = h.index_of(v);
    Split out;
    out.center = v;
    Graph ball = two_ball(h, vi);
    auto in_ball = ball.find(v);
    if (!in_ball) return out; // isolated vertex: empty ball, no classes
    for (Graph& u : split_components(ball, *in_ball)) {
        bool merged = false;
        for (auto& cls : out.classes) {
            if (cls.representative.n() == u.n() &&
                is_isomorphic(cls.representative, u, IsoFlavor::Plain, {v}, {v})) {
                ++cls.count;
                merged = true;
                break;
            }
        }
        if (!merged) {
            Graph blk = block_containing(u, v);
            out.classes.push_back({std::move(u), 1, std::move(blk)});
        }
    }
    return out;
}

CompleteCore complete_core(const Graph& h, const std::string& v, const std::string& u) {
    int vi = h.index_of(v), ui = h.index_of(u);
    if (!h.has_edge(vi, ui)) throw error("complete_core: (" + v + "," + u + ") is not an edge");
    Graph ball = two_ball(h, vi);
    int bc = ball.index_of(v);
    Graph comp;
    bool found = false;
    for (Graph& c : split_components(ball, bc))
        if (c.find(u)) {
            comp = std::move(c);
            found = true;
            break;
        }
    if (!found) throw error("complete_core: component of " + u + " not found");
    // neighbours of v inside the component
    int nb_in_comp = 0;
    for (int x = 0; x < comp.n(); ++x)
        if (comp.name(x) != v && h.has_edge(vi, h.index_of(comp.name(x)))) ++nb_in_comp;
    Graph core = nb_in_comp > 1 ? block_containing(comp, v) : comp;
    auto sides = bipartition_of(core);
    auto shape = complete_bipartite_shape(core);
    if (!sides || !shape)
        throw not_forbidden_free("core at (" + v + "," + u + ") is not complete bipartite");
    CompleteCore out;
    out.v = v;
    out.u = u;
    Side v_side = (*sides)[core.index_of(v)];
    int c_l = 0, c_r = 0;
    for (int x = 0; x < core.n(); ++x) ((*sides)[x] == v_side ? c_l : c_r)++;
    out.a = c_l;
    out.b = c_r;
    out.core = std::move(core);
    return out;
}

SquareFreeReport is_p_square_free(const Graph& h, unsigned p) {
    for (auto [a, b] : h.edges()) {
        for (auto [x, y] : {std::pair(a, b), std::pair(b, a)}) {
            CompleteCore core = complete_core(h, h.name(x), h.name(y));
            if (core.b % static_cast<int>(p) == 0) return {false, std::move(core)};
        }
    }
    return {true, std::nullopt};
}

namespace {

Graph ball_intersection(const Graph& h, const std::vector<int>& centers) {
    uint64_t keep = h.all_mask();
    for (int c : centers) {
        Graph ball = two_ball(h, c);
        uint64_t mask = 0;
        for (const auto& nm : ball.names()) mask |= 1ull << h.index_of(nm);
        keep &= mask;
    }
    return h.induced(keep);
}

bool is_hard_pair(const Graph& h, unsigned p, int v, const std::vector<int>& U, Graph& B_out,
                  Graph& B_red_out) {
    std::vector<int> centers{v};
    centers.insert(centers.end(), U.begin(), U.end());
    Graph B = ball_intersection(h, centers);
    Graph red = reduce(B, p, AutFlavor::Bip).result;
    if (is_collection_of_complete_bipartite(red)) return false;
    B_out = std::move(B);
    B_red_out = std::move(red);
    return true;
}

} // namespace

std::optional<HardVertex> find_hard_vertex(const Graph& h, unsigned p, int max_subset) {
    if (!h.has_bipartition())
        throw missing_bipartition("hard-vertex search runs on fixed-bipartition graphs");
    for (int v = 0; v < h.n(); ++v) {
        Graph ball = two_ball(h, v);
        std::vector<int> pool;
        for (const auto& nm : ball.names())
            if (nm != h.name(v)) pool.push_back(h.index_of(nm));
        std::sort(pool.begin(), pool.end());
        for (int size = 0; size <= std::min<int>(max_subset, static_cast<int>(pool.size())); ++size) {
            std::vector<int> pick(size);
            std::function<std::optional<HardVertex>(int, int)> go =
                [&](int from, int depth) -> std::optional<HardVertex> {
                if (depth == size) {
                    Graph B, red;
                    if (is_hard_pair(h, p, v, pick, B, red)) {
                        HardVertex hv;
                        hv.v = h.name(v);
                        for (int u : pick) hv.U.push_back(h.name(u));
                        hv.B = std::move(B);
                        hv.B_reduced = std::move(red);
                        return hv;
                    }
                    return std::nullopt;
                }
                for (int i = from; i < static_cast<int>(pool.size()); ++i) {
                    pick[depth] = pool[i];
                    if (auto r = go(i + 1, depth + 1)) return r;
                }
                return std::nullopt;
            };
            if (auto r = go(0, 0)) return r;
        }
    }
    return std::nullopt;
}

namespace {

/// Non-adjacent twin classes (identical neighbourhoods).
std::vector<std::vector<int>> twin_classes(const Graph& h) {
    std::vector<std::vector<int>> classes;
    std::vector<bool> placed(h.n(), false);
    for (int v = 0; v < h.n(); ++v) {
        if (placed[v]) continue;
        std::vector<int> cls{v};
        placed[v] = true;
        for (int u = v + 1; u < h.n(); ++u)
            if (!placed[u] && h.adj(u) == h.adj(v) && !h.has_edge(u, v)) {
                cls.push_back(u);
                placed[u] = true;
            }
        classes.push_back(std::move(cls));
    }
    return classes;
}

uint64_t common_neighbourhood(const Graph& h, const std::vector<int>& vs) {
    uint64_t m = h.all_mask();
    for (int v : vs) m &= h.adj(v);
    return m;
}

} // namespace

std::optional<GeneralizedPath> find_hardness_cycle(const Graph& h, unsigned p) {
    if (h.n() > 12) return std::nullopt; // bounded search
    auto classes = twin_classes(h);
    int k = static_cast<int>(classes.size());
    // class adjacency (twins share neighbourhoods, so any representative works)
    auto cadj = [&](int i, int j) { return h.has_edge(classes[i][0], classes[j][0]); };

    std::vector<int> path;
    std::vector<bool> used(k, false);

    auto verify_cycle = [&](const std::vector<int>& cyc) -> std::optional<GeneralizedPath> {
        int len = static_cast<int>(cyc.size());
        if (len < 6) return std::nullopt;
        for (int i = 0; i < len; ++i) {
            int ci = cyc[i], cn = cyc[(i + 1) % len], cnn = cyc[(i + 2) % len];
            if (static_cast<int>(classes[cn].size()) % p == 0) return std::nullopt;
            uint64_t want = 0;
            for (int x : classes[cn]) want |= 1ull << x;
            if ((common_neighbourhood(h, {classes[ci][0]}) &
                 common_neighbourhood(h, {classes[cnn][0]})) != want)
                return std::nullopt;
        }
        GeneralizedPath g;
        g.kind = GeneralizedPath::Kind::HardnessCycle;
        for (int c : cyc) {
            g.spine.push_back(h.name(classes[c][0]));
            g.multiplicities.push_back(static_cast<int>(classes[c].size()));
            std::vector<std::string> members;
            for (int x : classes[c]) members.push_back(h.name(x));
            g.classes.push_back(std::move(members));
        }
        return g;
    };

    std::optional<GeneralizedPath> found;
    std::function<void(int)> dfs = [&](int start) {
        if (found) return;
        int cur = path.back();
        for (int nxt = 0; nxt < k && !found; ++nxt) {
            if (nxt == start && path.size() >= 6 && cadj(cur, start)) {
                if (auto g = verify_cycle(path)) {
                    found = g;
                    return;
                }
            }
            if (used[nxt] || !cadj(cur, nxt)) continue;
            if (static_cast<int>(path.size()) >= 12) continue;
            path.push_back(nxt);
            used[nxt] = true;
            dfs(start);
            used[nxt] = false;
            path.pop_back();
        }
    };
    for (int s = 0; s < k && !found; ++s) {
        path = {s};
        used.assign(k, false);
        used[s] = true;
        dfs(s);
    }
    return found;
}

namespace {

bool members_only_touch(const Graph& h, const std::vector<int>& members, uint64_t allowed_mask,
                        uint64_t path_mask) {
    for (int x : members)
        if ((h.adj(x) & path_mask & ~allowed_mask) != 0) return false;
    return true;
}

} // namespace

std::optional<HardnessPathReport> find_generalized_hardness_path(const Graph& h, unsigned p,
                                                                 const std::optional<std::string>& start) {
    auto try_from = [&](int v0) -> std::optional<HardnessPathReport> {
        std::vector<std::string> spine{h.name(v0)};
        std::vector<int> mult{1};
        std::vector<std::vector<std::string>> cls{{h.name(v0)}};
        uint64_t path_mask = 1ull << v0;
        int endpoint = v0;
        int prev_b = -1;
        bool wrapped = false;

        while (true) {
            // extending past `endpoint` makes it interior: interior even
            // vertices must satisfy deg == preceding multiplicity (mod p)
            if (prev_b >= 0 && h.degree(endpoint) % p != static_cast<unsigned>(prev_b % p)) break;
            bool extended = false;
            uint64_t nb = h.adj(endpoint) & ~path_mask;
            while (nb && !extended) {
                int u = __builtin_ctzll(nb);
                nb &= nb - 1;
                CompleteCore core;
                try {
                    core = complete_core(h, h.name(endpoint), h.name(u));
                } catch (const not_forbidden_free&) {
                    continue;
                }
                if (core.a % p != 1 || core.b % p == 0) continue;
                // odd class: the core side containing u
                auto sides = bipartition_of(core.core);
                Side u_side = (*sides)[core.core.index_of(h.name(u))];
                std::vector<int> members;
                uint64_t member_mask = 0;
                for (int x = 0; x < core.core.n(); ++x)
                    if ((*sides)[x] == u_side) {
                        int hx = h.index_of(core.core.name(x));
                        members.push_back(hx);
                        member_mask |= 1ull << hx;
                    }
                if (member_mask & path_mask) continue;
                if (!members_only_touch(h, members, 1ull << endpoint, path_mask)) continue;
                uint64_t reachable = common_neighbourhood(h, members) & ~member_mask;
                // continuations that land back on the path (other than the
                // current endpoint) close a cycle
                if (reachable & path_mask & ~(1ull << endpoint)) wrapped = true;
                uint64_t next_cands = reachable & ~path_mask;
                while (next_cands) {
                    int w = __builtin_ctzll(next_cands);
                    next_cands &= next_cands - 1;
                    // w must see exactly the new class inside the path
                    if ((h.adj(w) & (path_mask | member_mask)) != member_mask) continue;
                    std::vector<std::string> member_names;
                    for (int x : members) member_names.push_back(h.name(x));
                    std::sort(member_names.begin(), member_names.end());
                    spine.push_back(member_names.front());
                    spine.push_back(h.name(w));
                    mult.push_back(core.b);
                    mult.push_back(1);
                    cls.push_back(member_names);
                    cls.push_back({h.name(w)});
                    path_mask |= member_mask | (1ull << w);
                    endpoint = w;
                    prev_b = core.b;
                    extended = true;
                    break;
                }
            }
            if (!extended) break;
        }
        if (spine.size() < 3) return std::nullopt; // need length >= 2
        HardnessPathReport rep;
        rep.path.kind = GeneralizedPath::Kind::HardnessPath;
        rep.path.spine = spine;
        rep.path.multiplicities = mult;
        rep.path.classes = cls;
        rep.wrapped_into_cycle = wrapped;
        rep.end_degree_matches = h.degree(endpoint) % p == static_cast<unsigned>(prev_b % p);
        if (rep.end_degree_matches) {
            // hunt a small U subset of N(endpoint) with |common nbhd| != 1 (mod p)
            std::vector<int> nbs;
            uint64_t nb = h.adj(endpoint);
            while (nb) {
                nbs.push_back(__builtin_ctzll(nb));
                nb &= nb - 1;
            }
            for (int size = 1; size <= std::min<int>(3, static_cast<int>(nbs.size())) && !rep.U; ++size) {
                std::vector<int> pick(size);
                std::function<bool(int, int)> go = [&](int from, int depth) {
                    if (depth == size) {
                        if (size % p == 0) return false;
                        uint64_t cn = common_neighbourhood(h, pick);
                        if (__builtin_popcountll(cn) % p != 1) {
                            std::vector<std::string> names;
                            for (int x : pick) names.push_back(h.name(x));
                            rep.U = names;
                            return true;
                        }
                        return false;
                    }
                    for (int i = from; i < static_cast<int>(nbs.size()); ++i) {
                        pick[depth] = nbs[i];
                        if (go(i + 1, depth + 1)) return true;
                    }
                    return false;
                };
                go(0, 0);
            }
        }
        return rep;
    };

    if (start) return try_from(h.index_of(*start));
    for (int v = 0; v < h.n(); ++v)
        if (auto r = try_from(v)) return r;
    return std::nullopt;
}

std::vector<DeadEnd> find_dead_ends(const Graph& h) {
    std::vector<DeadEnd> out;
    for (int v = 0; v < h.n(); ++v) {
        Graph ball = two_ball(h, v);
        uint64_t ball_mask = 0;
        for (const auto& nm : ball.names()) ball_mask |= 1ull << h.index_of(nm);
        auto bc = ball.find(h.name(v));
        DeadEnd de;
        de.v = h.name(v);
        int outward_components = 0;
        if (bc) {
            for (const Graph& comp : split_components(ball, *bc)) {
                std::vector<std::string> outward;
                for (const auto& nm : comp.names()) {
                    int x = h.index_of(nm);
                    if (x == v) continue;
                    if (h.distance(v, x) != 2) continue;
                    if ((h.adj(x) & ~ball_mask) != 0) outward.push_back(nm);
                }
                if (!outward.empty()) {
                    ++outward_components;
                    de.U_v = std::move(outward);
                }
            }
        }
        de.dead_end = outward_components <= 1;
        de.suitable = false;
        if (de.dead_end) {
            if (outward_components == 0) {
                de.suitable = true;
                de.suitable_case = 1;
                de.U_v.clear();
            } else {
                bool bad_pair = false;
                for (size_t i = 0; i < de.U_v.size() && !bad_pair; ++i)
                    for (size_t j = i + 1; j < de.U_v.size() && !bad_pair; ++j) {
                        uint64_t cn = h.adj(h.index_of(de.U_v[i])) & h.adj(h.index_of(de.U_v[j]));
                        if ((cn & ~h.adj(v)) == 0) bad_pair = true;
                    }
                if (!bad_pair) {
                    de.suitable = true;
                    de.suitable_case = 2;
                }
            }
        }
        out.push_back(std::move(de));
    }
    return out;
}

namespace {

bool is_hard_vertex_at(const Graph& h, unsigned p, int v, int budget) {
    Graph ball = two_ball(h, v);
    std::vector<int> pool;
    for (const auto& nm : ball.names())
        if (nm != h.name(v)) pool.push_back(h.index_of(nm));
    std::sort(pool.begin(), pool.end());
    for (int size = 0; size <= std::min<int>(budget, static_cast<int>(pool.size())); ++size) {
        std::vector<int> pick(size);
        std::function<bool(int, int)> go = [&](int from, int depth) {
            if (depth == size) {
                Graph B, red;
                return is_hard_pair(h, p, v, pick, B, red);
            }
            for (int i = from; i < static_cast<int>(pool.size()); ++i) {
                pick[depth] = pool[i];
                if (go(i + 1, depth + 1)) return true;
            }
            return false;
        };
        if (go(0, 0)) return true;
    }
    return false;
}

} // namespace

std::optional<MosaicPathReport> find_mosaic_path(const Graph& h, unsigned p) {
    if (!h.has_bipartition())
        throw missing_bipartition("mosaic-path search runs on fixed-bipartition graphs");
    auto core_ok = [&](int x, int y, CompleteCore& core) {
        try {
            core = complete_core(h, h.name(x), h.name(y));
        } catch (const not_forbidden_free&) {
            return false;
        }
        return core.b % static_cast<int>(p) == 0 && core.b > 0;
    };
    auto component_vertices = [&](int center, int inside) {
        Graph ball = two_ball(h, center);
        int bc = ball.index_of(h.name(center));
        for (const Graph& comp : split_components(ball, bc))
            if (comp.find(h.name(inside))) {
                std::vector<int> vs;
                for (const auto& nm : comp.names()) vs.push_back(h.index_of(nm));
                return vs;
            }
        return std::vector<int>{};
    };

    std::optional<MosaicPathReport> first_found;
    for (int x0 = 0; x0 < h.n(); ++x0) {
        uint64_t nb0 = h.adj(x0);
        while (nb0) {
            int x1 = __builtin_ctzll(nb0);
            nb0 &= nb0 - 1;
            CompleteCore first;
            if (!core_ok(x0, x1, first)) continue;
            std::vector<int> path{x0, x1};
            std::vector<int> core_b{first.b};
            bool wrapped = false;
            // hard-vertex freeness inside the first component
            bool tainted = false;
            for (int w : component_vertices(x0, x1))
                if (is_hard_vertex_at(h, p, w, 2)) tainted = true;
            if (tainted) continue;
            while (true) {
                int cur = path.back();
                int prev = path[path.size() - 2];
                bool extended = false;
                uint64_t nb = h.adj(cur);
                while (nb && !extended) {
                    int nxt = __builtin_ctzll(nb);
                    nb &= nb - 1;
                    if (std::find(path.begin(), path.end(), nxt) != path.end()) {
                        if (nxt == path.front() && path.size() > 3) wrapped = true;
                        continue;
                    }
                    CompleteCore core;
                    if (!core_ok(cur, nxt, core)) continue;
                    // the two components around cur must meet only in cur
                    auto c_prev = component_vertices(cur, prev);
                    auto c_next = component_vertices(cur, nxt);
                    std::vector<int> inter;
                    std::set_intersection(c_prev.begin(), c_prev.end(), c_next.begin(), c_next.end(),
                                          std::back_inserter(inter));
                    if (!(inter.size() == 1 && inter[0] == cur)) continue;
                    bool bad = false;
                    for (int w : c_next)
                        if (is_hard_vertex_at(h, p, w, 2)) bad = true;
                    if (bad) continue;
                    path.push_back(nxt);
                    core_b.push_back(core.b);
                    extended = true;
                }
                if (!extended) break;
            }
            // assemble the report; the partially-hard flag tests the leading core
            MosaicPathReport rep;
            rep.path.kind = GeneralizedPath::Kind::MosaicPath;
            for (size_t i = 0; i < path.size(); ++i) {
                rep.path.spine.push_back(h.name(path[i]));
                rep.path.multiplicities.push_back(1);
                rep.path.classes.push_back({h.name(path[i])});
            }
            (void)wrapped;
            Graph B = ball_intersection(h, {path[0], path[1]});
            std::vector<std::string> leaves;
            for (int x = 0; x < B.n(); ++x)
                if (B.degree(x) == 1 && B.has_edge(x, B.index_of(h.name(path[1]))))
                    leaves.push_back(B.name(x));
            std::sort(leaves.begin(), leaves.end());
            rep.partially_hard = false;
            if (leaves.size() >= p - 1) {
                uint64_t drop = 0;
                for (unsigned i = 0; i + 1 < p; ++i) drop |= 1ull << B.index_of(leaves[i]);
                Graph Bp = B.induced(B.all_mask() & ~drop);
                Graph red = reduce(Bp, p, AutFlavor::Bip).result;
                if (!is_collection_of_complete_bipartite(red)) {
                    rep.partially_hard = true;
                    rep.leading_B = std::move(Bp);
                }
            }
            if (rep.partially_hard) return rep; // preferred: feeds the mosaic gadget
            if (!first_found) first_found = std::move(rep);
        }
    }
    return first_found;
}

std::optional<std::string> radius2_center(const Graph& h) {
    for (int v = 0; v < h.n(); ++v)
        if (two_ball(h, v).n() == h.n()) return h.name(v);
    return std::nullopt;
}

bool is_collection_of_complete_bipartite(const Graph& h) {
    for (const auto& comp : h.connected_components()) {
        uint64_t m = 0;
        for (int v : comp) m |= 1ull << v;
        if (!is_complete_bipartite(h.induced(m))) return false;
    }
    return true;
}

} // namespace homlab
