#include <homlab/surjective.hpp>
#include <homlab/canon.hpp>

#include <algorithm>

namespace homlab {

HomCount count_part_surj(const Graph& g, const DistinguishedGraph& hd,
                         const std::optional<unsigned>& mod, unsigned long long budget) {
    HomOptions opts;
    opts.budget = budget;
    LabelledGraph src(g);
    auto homs = enumerate_homs(src, hd.graph, {}, opts);
    auto gedges = g.edges();
    unsigned long long total = 0;
    for (const auto& img : homs) {
        uint64_t hit = 0;
        for (int w : img) hit |= 1ull << w;
        bool ok = true;
        for (int v : hd.dist_vertices)
            if (!((hit >> v) & 1u)) ok = false;
        if (!ok) continue;
        for (auto [a, b] : hd.dist_edges) {
            bool covered = false;
            for (auto [x, y] : gedges) {
                int u = img[x], w = img[y];
                if ((u == a && w == b) || (u == b && w == a)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                ok = false;
                break;
            }
        }
        if (ok) ++total;
    }
    return HomCount::of(total, mod);
}

QuantumGraph expand_inclusion_exclusion(const DistinguishedGraph& hd) {
    const Graph& h = hd.graph;
    int nd = static_cast<int>(hd.dist_vertices.size());
    int md = static_cast<int>(hd.dist_edges.size());
    QuantumGraph out;
    for (uint64_t emask = 0; emask < (1ull << md); ++emask) {
        for (uint64_t vmask = 0; vmask < (1ull << nd); ++vmask) {
            // Collapsing the unconstrained inclusion-exclusion sum over pairs
            // giving the same subgraph leaves exactly the pairs whose deleted
            // vertices touch no distinguished edge at all: for a vertex
            // incident to one, the signed sum over its incident deleted-edge
            // subsets cancels. (The looser "no remaining distinguished edge"
            // convention adds spurious terms and breaks exactness.)
            bool valid = true;
            for (int i = 0; i < nd && valid; ++i) {
                if (!((vmask >> i) & 1u)) continue;
                int v = hd.dist_vertices[i];
                for (int e = 0; e < md && valid; ++e) {
                    auto [a, b] = hd.dist_edges[e];
                    if (a == v || b == v) valid = false;
                }
            }
            if (!valid) continue;
            // build H minus the chosen edges and vertices
            uint64_t keep = h.all_mask();
            for (int i = 0; i < nd; ++i)
                if ((vmask >> i) & 1u) keep &= ~(1ull << hd.dist_vertices[i]);
            Graph sub = h.induced(keep);
            for (int e = 0; e < md; ++e) {
                if (!((emask >> e) & 1u)) continue;
                auto [a, b] = hd.dist_edges[e];
                auto fa = sub.find(h.name(a)), fb = sub.find(h.name(b));
                if (!fa || !fb) continue; // endpoints removed already
                // rebuild without this edge
                Graph pruned(sub.names());
                for (auto [x, y] : sub.edges())
                    if (!((x == *fa && y == *fb) || (x == *fb && y == *fa)))
                        pruned.add_edge(x, y);
                sub = std::move(pruned);
            }
            long long sign = (__builtin_popcountll(vmask) + __builtin_popcountll(emask)) % 2 == 0 ? 1 : -1;
            out.constituents.push_back({std::move(sub), sign});
        }
    }
    out.canonicalize();
    return out;
}

DistReduceResult dist_reduce(const DistinguishedGraph& hd, unsigned p) {
    DistReduceResult out;
    out.trace = reduce(hd, p);
    out.zero_everywhere = out.trace.lost_distinguished;
    return out;
}

DistinguishedGraph vertex_surjective_preset(const Graph& h) {
    return DistinguishedGraph(h, h.names(), {});
}

DistinguishedGraph compaction_preset(const Graph& h) {
    std::vector<std::pair<std::string, std::string>> des;
    for (auto [a, b] : h.edges())
        if (a != b) des.emplace_back(h.name(a), h.name(b));
    return DistinguishedGraph(h, h.names(), des);
}

Verdict classify_part_surj(const DistinguishedGraph& hd, unsigned p) {
    Verdict v;
    v.p = p;

    DistReduceResult red = dist_reduce(hd, p);
    if (red.zero_everywhere) {
        // solvable in constant time: every count is 0 mod p
        v.label = VerdictLabel::Tractable;
        v.reason = "an order-p automorphism moves a distinguished vertex; counts vanish mod p";
        return v;
    }

    size_t full = automorphism_group(hd.graph, AutFlavor::Plain).order();
    size_t dist = automorphism_group(hd).order();
    const DistinguishedGraph& hr = red.trace.result;

    if (full == dist) {
        // structural dichotomy: the dist-reduced form equals the plain reduced
        // form, so test the deletion family directly
        bool all_easy = true;
        QuantumGraph expansion = expand_inclusion_exclusion(hr);
        for (const auto& c : expansion.constituents)
            if (!is_dyer_greenhill(c.graph)) all_easy = false;
        if (all_easy) {
            v.label = VerdictLabel::Tractable;
            v.reason = "every deletion-family member is Dyer-Greenhill";
            return v;
        }
        v.label = VerdictLabel::Hard;
        v.conditional = true;
        v.reason = "a deletion-family member escapes the Dyer-Greenhill form; assumes Conjecture 1";
        return v;
    }

    // general route: expand, normalize, classify every p-constituent
    QuantumGraph expansion = expand_inclusion_exclusion(hr);
    QuantumGraph norm = normalize(expansion, p);
    bool any_unknown = false;
    for (const auto& c : norm.constituents) {
        Verdict cv = classify_homs(c.graph, p);
        if (cv.label == VerdictLabel::Hard) {
            v.label = VerdictLabel::Hard;
            v.conditional = true;
            v.evidence = cv.evidence;
            v.reason = "a normalized constituent classifies hard; assumes Conjecture 1";
            return v;
        }
        if (cv.label == VerdictLabel::Unknown) any_unknown = true;
    }
    if (any_unknown) {
        v.label = VerdictLabel::Unknown;
        v.stage = "some normalized constituent is outside the decided classes";
        return v;
    }
    v.label = VerdictLabel::Tractable;
    v.reason = "every normalized constituent classifies tractable";
    return v;
}

} // namespace homlab
