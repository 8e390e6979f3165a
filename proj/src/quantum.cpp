#include <homlab/quantum.hpp>
#include <homlab/canon.hpp>

#include <algorithm>
#include <map>

namespace homlab {

QuantumGraph::QuantumGraph(std::vector<Constituent> cs, std::optional<unsigned> p)
    : constituents(std::move(cs)), prime(p) {
    canonicalize();
}

void QuantumGraph::canonicalize() {
    std::vector<Constituent> merged;
    for (auto& c : constituents) {
        bool absorbed = false;
        for (auto& m : merged)
            if (is_isomorphic(m.graph, c.graph)) {
                m.coeff += c.coeff;
                absorbed = true;
                break;
            }
        if (!absorbed) merged.push_back(std::move(c));
    }
    if (prime) {
        for (auto& m : merged) m.coeff = zp_norm(m.coeff, *prime);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Constituent& c) { return c.coeff == 0; }),
                 merged.end());
    constituents = std::move(merged);
}

QuantumGraph normalize(const QuantumGraph& q, unsigned p) {
    QuantumGraph out;
    out.prime = p;
    for (const auto& c : q.constituents)
        out.constituents.push_back({reduce(c.graph, p).result, c.coeff});
    out.canonicalize();
    return out;
}

unsigned count_homs_quantum(const Graph& source, const QuantumGraph& target, unsigned p,
                            const HomOptions& opts) {
    HomOptions o = opts;
    o.mod = p;
    unsigned long long acc = 0;
    for (const auto& c : target.constituents) {
        unsigned r = count_homs(source, c.graph, o).residue;
        acc = (acc + static_cast<unsigned long long>(zp_norm(c.coeff, p)) * r) % p;
    }
    return static_cast<unsigned>(acc);
}

unsigned count_homs_quantum(const QuantumGraph& source, const QuantumGraph& target, unsigned p,
                            const HomOptions& opts) {
    unsigned long long acc = 0;
    for (const auto& s : source.constituents) {
        unsigned r = count_homs_quantum(s.graph, target, p, opts);
        acc = (acc + static_cast<unsigned long long>(zp_norm(s.coeff, p)) * r) % p;
    }
    return static_cast<unsigned>(acc);
}

namespace {

std::vector<Graph> all_graphs_on(int k) {
    // all graphs on k labeled vertices, loops allowed; dedup up to isomorphism
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) slots.emplace_back(a, b);
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("v" + std::to_string(i));
    std::vector<Graph> out;
    std::vector<std::string> keys;
    for (uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
        Graph g(names);
        for (size_t i = 0; i < slots.size(); ++i)
            if ((mask >> i) & 1u) g.add_edge(slots[i].first, slots[i].second);
        auto key = canonical_string(g);
        if (std::find(keys.begin(), keys.end(), *key) != keys.end()) continue;
        keys.push_back(*key);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<Graph> all_bip_graphs_on(int a, int b) {
    std::vector<std::string> left, right, names;
    for (int i = 0; i < a; ++i) left.push_back("l" + std::to_string(i));
    for (int i = 0; i < b; ++i) right.push_back("r" + std::to_string(i));
    names = left;
    names.insert(names.end(), right.begin(), right.end());
    std::vector<Graph> out;
    std::vector<std::string> keys;
    for (uint64_t mask = 0; mask < (1ull << (a * b)); ++mask) {
        Graph g(names);
        g.set_bipartition(left, right);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                if ((mask >> (i * b + j)) & 1u) g.add_edge(i, a + j);
        auto key = canonical_string_bip(g);
        if (std::find(keys.begin(), keys.end(), *key) != keys.end()) continue;
        keys.push_back(*key);
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace

std::vector<Graph> reduced_subgraph_family(int n, unsigned p, FamilyFlavor flavor) {
    if (flavor == FamilyFlavor::Plain && n > 4)
        throw instance_too_large("reduced subgraph family capped at n = 4");
    if (flavor == FamilyFlavor::Bip && n > 3)
        throw instance_too_large("partition-wise reduced subgraph family capped at n = 3");
    std::vector<Graph> family;
    if (flavor == FamilyFlavor::Plain) {
        for (int k = 0; k <= n; ++k)
            for (auto& g : all_graphs_on(k))
                if (!find_order_p_automorphism(g, p, AutFlavor::Plain)) family.push_back(std::move(g));
    } else {
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b)
                for (auto& g : all_bip_graphs_on(a, b))
                    if (!find_order_p_automorphism(g, p, AutFlavor::Bip)) family.push_back(std::move(g));
    }
    auto sort_key = [&](const Graph& g) {
        std::string canon = flavor == FamilyFlavor::Bip ? *canonical_string_bip(g) : *canonical_string(g);
        int left = g.has_bipartition() ? __builtin_popcountll(g.side_mask(Side::L)) : 0;
        return std::tuple(g.n(), g.edge_count(), g.loop_count(), left, canon);
    };
    std::sort(family.begin(), family.end(),
              [&](const Graph& x, const Graph& y) { return sort_key(x) < sort_key(y); });
    return family;
}

HomMatrix::HomMatrix(std::vector<Graph> fam, FamilyFlavor fl, unsigned prime)
    : family(std::move(fam)), flavor(fl), p(prime),
      entries(static_cast<int>(family.size()), static_cast<int>(family.size()), prime) {
    HomOptions opts;
    opts.mod = p;
    int k = static_cast<int>(family.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            entries.at(i, j) = (flavor == FamilyFlavor::Bip ? count_bip_homs(family[i], family[j], opts)
                                                            : count_homs(family[i], family[j], opts))
                                   .residue;
}

HomMatrix hom_matrix(const std::vector<Graph>& family, unsigned p, FamilyFlavor flavor) {
    return HomMatrix(family, flavor, p);
}

NonsingularReport check_nonsingular(const HomMatrix& m) {
    unsigned det = m.entries.determinant();
    return {det != 0, det};
}

QuantumGraph implement_vector(const std::vector<Graph>& family, const std::vector<unsigned>& v,
                              unsigned p, FamilyFlavor flavor) {
    if (v.size() != family.size()) throw error("implement_vector: vector/family size mismatch");
    HomMatrix m = hom_matrix(family, p, flavor);
    auto x = m.entries.solve_left(v);
    if (!x) throw solve_failure("no quantum graph implements the requested vector (family not closed?)");
    QuantumGraph out;
    out.prime = p;
    for (size_t i = 0; i < family.size(); ++i)
        if ((*x)[i] % p != 0) out.constituents.push_back({family[i], (*x)[i] % p});
    // post-hoc check of the defining property
    HomOptions opts;
    opts.mod = p;
    for (size_t j = 0; j < family.size(); ++j) {
        unsigned long long got = 0;
        for (const auto& c : out.constituents) {
            unsigned r = (flavor == FamilyFlavor::Bip ? count_bip_homs(c.graph, family[j], opts)
                                                      : count_homs(c.graph, family[j], opts))
                             .residue;
            got = (got + static_cast<unsigned long long>(c.coeff) * r) % p;
        }
        if (got != v[j] % p)
            throw solve_failure("implement_vector verification failed at family index " + std::to_string(j));
    }
    return out;
}

unsigned pin_extract(const HomOracle& oracle, const QuantumGraph& target, const Graph& g, int index,
                     unsigned p) {
    if (index < 0 || index >= static_cast<int>(target.constituents.size()))
        throw error("pin_extract: constituent index out of range");
    int n_max = 0;
    for (const auto& c : target.constituents) {
        if (find_order_p_automorphism(c.graph, p, AutFlavor::Plain))
            throw not_reduced("pin_extract: constituent admits an order-p automorphism");
        n_max = std::max(n_max, c.graph.n());
    }
    auto family = reduced_subgraph_family(n_max, p, FamilyFlavor::Plain);
    std::vector<unsigned> basis(family.size(), 0);
    bool found = false;
    for (size_t j = 0; j < family.size(); ++j)
        if (is_isomorphic(family[j], target.constituents[index].graph)) {
            basis[j] = 1;
            found = true;
            break;
        }
    if (!found) throw error("pin_extract: constituent not in the closure family");
    QuantumGraph impl = implement_vector(family, basis, p, FamilyFlavor::Plain);
    unsigned long long acc = 0;
    for (const auto& c : impl.constituents) {
        unsigned r = oracle(disjoint_union(g, c.graph));
        acc = (acc + static_cast<unsigned long long>(zp_norm(c.coeff, p)) * r) % p;
    }
    unsigned alpha = zp_norm(target.constituents[index].coeff, p);
    return static_cast<unsigned>(acc * zp_inverse(alpha, p) % p);
}

namespace {

struct LabelledClass {
    int family_index;               // into the base family
    std::vector<std::string> tuple; // representative anchor names
};

std::vector<std::vector<std::string>> tuple_space(const Graph& g, int r) {
    std::vector<std::vector<std::string>> out;
    std::vector<int> idx(r, 0);
    if (g.n() == 0) return out;
    while (true) {
        std::vector<std::string> t;
        for (int i : idx) t.push_back(g.name(i));
        out.push_back(std::move(t));
        int pos = r - 1;
        while (pos >= 0 && ++idx[pos] == g.n()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

} // namespace

unsigned recover_pinned_count(const HomOracle& oracle, const Graph& g,
                              const std::vector<std::string>& u_tuple, const Graph& h,
                              const std::vector<std::string>& w_tuple, unsigned p, FamilyFlavor flavor) {
    if (u_tuple.size() != w_tuple.size()) throw error("pin tuple size mismatch");
    AutFlavor af = flavor == FamilyFlavor::Bip ? AutFlavor::Bip : AutFlavor::Plain;
    IsoFlavor isf = flavor == FamilyFlavor::Bip ? IsoFlavor::Bip : IsoFlavor::Plain;
    if (find_order_p_automorphism(h, p, af))
        throw not_reduced("recover_pinned_count: target admits an order-p automorphism");
    int r = static_cast<int>(u_tuple.size());
    if (r == 0) return oracle(g) % p;

    int n = flavor == FamilyFlavor::Bip
                ? std::max(__builtin_popcountll(h.side_mask(Side::L)), __builtin_popcountll(h.side_mask(Side::R)))
                : h.n();
    auto base = reduced_subgraph_family(n, p, flavor);

    // In the bip flavor the later gluing must respect sides, so keep only
    // tuple classes whose side pattern matches w-bar's; the sub-family stays
    // closed (partition-preserving images keep the pattern) and triangular.
    std::vector<Side> pattern;
    if (flavor == FamilyFlavor::Bip)
        for (const auto& w : w_tuple) pattern.push_back(h.side(h.index_of(w)));

    std::vector<LabelledClass> classes;
    for (size_t bi = 0; bi < base.size(); ++bi) {
        for (const auto& t : tuple_space(base[bi], r)) {
            if (flavor == FamilyFlavor::Bip) {
                bool match = true;
                for (int i = 0; i < r; ++i)
                    if (base[bi].side(base[bi].index_of(t[i])) != pattern[i]) match = false;
                if (!match) continue;
            }
            bool fresh = true;
            for (const auto& cls : classes) {
                if (cls.family_index != static_cast<int>(bi)) continue;
                if (is_isomorphic(base[bi], base[bi], isf, cls.tuple, t)) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) classes.push_back({static_cast<int>(bi), t});
        }
    }

    HomOptions opts;
    opts.mod = p;
    opts.bip = flavor == FamilyFlavor::Bip;
    auto labelled_hom = [&](const Graph& a, const std::vector<std::string>& ta, const Graph& b,
                            const std::vector<std::string>& tb) {
        LabelledGraph src(a, {}, ta);
        return count_homs(src, b, tb, opts).residue;
    };

    int k = static_cast<int>(classes.size());
    ZpMat m(k, k, p);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m.at(i, j) = labelled_hom(base[classes[i].family_index], classes[i].tuple,
                                      base[classes[j].family_index], classes[j].tuple);

    // locate the class of (h, w-bar)
    int target_class = -1;
    for (int j = 0; j < k; ++j)
        if (is_isomorphic(base[classes[j].family_index], h, isf, classes[j].tuple, w_tuple)) {
            target_class = j;
            break;
        }
    if (target_class < 0) throw error("recover_pinned_count: (H, w-bar) not found in the labelled family");

    std::vector<unsigned> basis(k, 0);
    basis[target_class] = 1;
    auto x = m.solve_left(basis);
    if (!x) throw singular_family("labelled closure family is singular");

    // orbit coefficient: |Orb(w-bar)| must be a unit for a reduced target
    std::vector<int> w_idx;
    for (const auto& wname : w_tuple) w_idx.push_back(h.index_of(wname));
    size_t orb = orbit(h, af, w_idx).size();
    if (orb % p == 0)
        throw not_reduced("orbit size divisible by p despite reduced target");

    unsigned long long acc = 0;
    for (int j = 0; j < k; ++j) {
        if ((*x)[j] % p == 0) continue;
        // glue (G, u-bar) and (F_j, t-bar) pointwise, then ask the unlabelled oracle
        Graph glued = disjoint_union(g, base[classes[j].family_index]);
        std::map<std::string, std::string> renamed;
        auto now = [&](std::string s) {
            while (renamed.count(s)) s = renamed[s];
            return s;
        };
        for (int i = 0; i < r; ++i) {
            std::string a = now(u_tuple[i] + "#1");
            std::string b = now(classes[j].tuple[i] + "#2");
            if (a == b) continue;
            std::string nn = "anchor" + std::to_string(i);
            glued = merge_vertices(glued, a, b, nn);
            renamed[a] = nn;
            renamed[b] = nn;
        }
        acc = (acc + static_cast<unsigned long long>((*x)[j] % p) * (oracle(glued) % p)) % p;
    }
    return static_cast<unsigned>(acc * zp_inverse(static_cast<unsigned>(orb % p), p) % p);
}

} // namespace homlab
