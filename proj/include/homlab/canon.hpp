#ifndef HOMLAB_CANON_HPP
#define HOMLAB_CANON_HPP

#include <homlab/graph.hpp>

#include <optional>
#include <string>
#include <vector>

namespace homlab {

enum class IsoFlavor {
    Plain,    // any vertex bijection
    Bip,      // partition-wise: L -> L, R -> R (fixed bipartitions required)
    Dist      // maps distinguished vertices/edges bijectively onto distinguished ones
};

/// Isomorphism test by backtracking with degree/neighbourhood pruning.
/// `anchors` forces g1.anchors[i] -> g2_anchors[i] pointwise (tuple isomorphism).
bool is_isomorphic(const Graph& g1, const Graph& g2, IsoFlavor flavor = IsoFlavor::Plain,
                   const std::vector<std::string>& anchors1 = {},
                   const std::vector<std::string>& anchors2 = {});

bool is_isomorphic(const DistinguishedGraph& g1, const DistinguishedGraph& g2);

/// Desk-scale canonicaliser: minimal adjacency string over all vertex
/// orderings, degree-sequence prefilter, |V| <= 8. Used as a fast merge key;
/// larger graphs fall back to pairwise is_isomorphic.
std::optional<std::string> canonical_string(const Graph& g);

/// Key capturing the partition-wise isomorphism class (|V| <= 8).
std::optional<std::string> canonical_string_bip(const Graph& g);

} // namespace homlab

#endif
