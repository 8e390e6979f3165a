#include <homlab/bipartize.hpp>
#include <homlab/hom.hpp>
#include <homlab/reduction.hpp>

namespace homlab {

Graph bipartize(const Graph& h) {
    std::vector<std::string> names, left, right;
    for (const auto& v : h.names()) {
        names.push_back(v + "#0");
        left.push_back(v + "#0");
    }
    for (const auto& v : h.names()) {
        names.push_back(v + "#1");
        right.push_back(v + "#1");
    }
    Graph out(names);
    int n = h.n();
    for (auto [a, b] : h.edges()) {
        out.add_edge(a, b + n);
        if (a != b) out.add_edge(b, a + n);
    }
    out.set_bipartition(left, right);
    return out;
}

bool check_partitionwise_reduced_after_bipartize(const Graph& h, unsigned p) {
    return !find_order_p_automorphism(bipartize(h), p, AutFlavor::Bip).has_value();
}

ParsimonyReport verify_parsimonious(const Graph& bipartite_g, const Graph& h) {
    if (!bipartite_g.has_bipartition())
        throw missing_bipartition("verify_parsimonious needs a fixed bipartition on G");
    Graph hp = bipartize(h);
    ParsimonyReport r{};
    r.bip_homs_to_cover = count_bip_homs(bipartite_g, hp).value;
    r.homs_to_h = count_homs(bipartite_g, h).value;
    r.equal = r.bip_homs_to_cover == r.homs_to_h;
    if (!r.equal)
        throw assertion_report("parsimonious reduction identity violated: " +
                               std::to_string(r.bip_homs_to_cover) + " vs " + std::to_string(r.homs_to_h));
    return r;
}

} // namespace homlab
