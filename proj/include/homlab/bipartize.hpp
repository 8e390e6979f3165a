#ifndef HOMLAB_BIPARTIZE_HPP
#define HOMLAB_BIPARTIZE_HPP

#include <homlab/graph.hpp>

namespace homlab {

/// H tensor K2 with the bipartition fixed as the two block copies: vertex
/// "v#0" on side L, "v#1" on side R. The side choice is part of the contract
/// (the partition-wise statements depend on it), never re-derived.
Graph bipartize(const Graph& h);

/// True iff Aut^bip(bipartize(h)) has no order-p element. Holds whenever h
/// itself is order-p reduced.
bool check_partitionwise_reduced_after_bipartize(const Graph& h, unsigned p);

struct ParsimonyReport {
    unsigned long long bip_homs_to_cover; // hom^bip(G, H (x) K2)
    unsigned long long homs_to_h;         // hom(G, H)
    bool equal;
};

/// Checks hom^bip(G, bipartize(h)) == hom(G, h) exactly. A mismatch is an
/// engine bug, reported via assertion_report.
ParsimonyReport verify_parsimonious(const Graph& bipartite_g, const Graph& h);

} // namespace homlab

#endif
