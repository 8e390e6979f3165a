#ifndef HOMLAB_HOM_HPP
#define HOMLAB_HOM_HPP

#include <homlab/graph.hpp>

#include <functional>
#include <map>
#include <optional>

namespace homlab {

/// Graph with a partial pinning map into a target graph and an ordered tuple
/// of distinguished vertices. Pin values are target vertex names, resolved at
/// count time. Distinguished vertices must be disjoint from the pin domain.
struct LabelledGraph {
    Graph graph;
    std::map<std::string, std::string> pins;     // source vertex -> target vertex
    std::vector<std::string> distinguished;      // ordered, not pinned

    LabelledGraph() = default;
    LabelledGraph(Graph g, std::map<std::string, std::string> p = {},
                  std::vector<std::string> d = {});

    /// Disjoint copy with every vertex name suffixed (pins keep their targets).
    LabelledGraph renamed(const std::string& suffix) const;
};

/// Glue two labelled graphs at one vertex each (kept pins united).
/// Throws pin_conflict if either glued vertex is pinned.
LabelledGraph identify(const LabelledGraph& j1, const std::string& v1, const LabelledGraph& j2,
                       const std::string& v2, const std::string& new_name);

struct HomCount {
    unsigned long long value = 0;           // exact
    std::optional<unsigned> modulus;
    unsigned residue = 0;                   // value mod modulus when present

    static HomCount of(unsigned long long v, std::optional<unsigned> p) {
        HomCount c;
        c.value = v;
        c.modulus = p;
        c.residue = p ? static_cast<unsigned>(v % *p) : 0;
        return c;
    }
};

inline constexpr unsigned long long default_assignment_budget = 1'000'000'000ull;

struct HomOptions {
    std::optional<unsigned> mod;            // reduce at the boundary only
    bool bip = false;                       // preserve the order of the bipartitioning
    unsigned long long budget = default_assignment_budget;
};

// Exact homomorphism counts by enumeration over the assignment space. The
// budget guard is assignment-count based: the product of per-vertex candidate
// set sizes after unary filtering (pins, loops, sides); for unpinned input
// this is |V(target)|^|V(source)|.

HomCount count_homs(const Graph& source, const Graph& target, const HomOptions& opts = {});
HomCount count_homs(const LabelledGraph& source, const Graph& target,
                    const std::vector<std::string>& targets_for_distinguished = {},
                    const HomOptions& opts = {});

/// Both graphs must carry fixed bipartitions (L -> L, R -> R).
HomCount count_bip_homs(const Graph& source, const Graph& target, const HomOptions& opts = {});
HomCount count_bip_homs(const LabelledGraph& source, const Graph& target,
                        const std::vector<std::string>& targets_for_distinguished = {},
                        const HomOptions& opts = {});

HomCount count_inj(const Graph& source, const Graph& target, const HomOptions& opts = {});
/// Surjective on vertices and on edges.
HomCount count_surj(const Graph& source, const Graph& target, const HomOptions& opts = {});
HomCount count_aut(const Graph& g, const HomOptions& opts = {});

/// Walks of length len from u to v. With interior_allowed present (len-1
/// vertex masks), the i-th interior vertex is restricted to the i-th mask;
/// this realises the path-restricted walk counts the path gadgets rely on.
HomCount count_walks(const Graph& h, const std::string& u, const std::string& v, int len,
                     const std::optional<std::vector<uint64_t>>& interior_allowed = std::nullopt,
                     const std::optional<unsigned>& mod = std::nullopt);

/// Every hom as a vector of target indices per source index (enumeration
/// order deterministic). Throws instance_too_large past the budget; intended
/// for desk-scale checks (surjectivity filters, test oracles).
std::vector<std::vector<int>> enumerate_homs(const LabelledGraph& source, const Graph& target,
                                             const std::vector<std::string>& targets_for_distinguished = {},
                                             const HomOptions& opts = {});

} // namespace homlab

#endif
