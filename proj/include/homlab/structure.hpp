#ifndef HOMLAB_STRUCTURE_HPP
#define HOMLAB_STRUCTURE_HPP

#include <homlab/graph.hpp>

#include <optional>

namespace homlab {

// Detectors for the structural fragments of bipartite (K3,3\{e}, domino)-free
// graphs. All detectors are deterministic (name-order tie-breaking) and
// best-effort searches; every positive result re-verifies its defining
// conditions, and downstream gadget construction re-verifies again by
// counting.

struct ForbiddenReport {
    bool free;
    std::vector<std::string> witness; // offending 6-vertex set when !free
};

/// Induced-subgraph search for K3,3\{e} and the domino.
ForbiddenReport is_forbidden_free(const Graph& h);
/// Second decider: the split criterion (every block around a split centre is
/// complete bipartite). The two must agree on every input.
bool is_forbidden_free_split_criterion(const Graph& h);

struct Split {
    std::string center;
    struct Class {
        Graph representative;   // component rejoined with the centre
        int count;              // alpha_i
        Graph block_of_center;  // block of the representative containing the centre
    };
    std::vector<Class> classes;
};

/// Split of B_2(v) at v: components of B_2(v) - v rejoined with v, grouped by
/// isomorphism of (U, v).
Split split_at(const Graph& h, const std::string& v);

struct CompleteCore {
    std::string v, u;  // adjacent, v on the L-side of the core
    Graph core;        // K^{v,u}
    int a, b;          // core = K_{a,b}, v in L, |L| = a
};

/// Complete core of the component of B_2(v)-v containing u (rejoined with v):
/// the block through v when |N(v) & U| > 1, the whole component otherwise.
/// Throws not_forbidden_free when that subgraph is not complete bipartite.
CompleteCore complete_core(const Graph& h, const std::string& v, const std::string& u);

struct SquareFreeReport {
    bool square_free;
    std::optional<CompleteCore> witness; // a core K_{a, kp} when !square_free
};

SquareFreeReport is_p_square_free(const Graph& h, unsigned p);

struct HardVertex {
    std::string v;
    std::vector<std::string> U;  // subset of B_2(v) \ {v}
    Graph B;                     // intersection of the 2-balls
    Graph B_reduced;             // partition-wise order-p reduced form of B
};

/// First (v, U) in deterministic order whose intersected 2-ball reduces,
/// partition-wise, to something not a collection of complete bipartite
/// graphs. Incomplete search: none within budget is not a proof of absence.
std::optional<HardVertex> find_hard_vertex(const Graph& h, unsigned p, int max_subset = 3);

struct GeneralizedPath {
    enum class Kind { HardnessPath, MosaicPath, HardnessCycle };
    Kind kind;
    std::vector<std::string> spine;                 // v_0 .. v_l (cycle: v_1 .. v_k)
    std::vector<int> multiplicities;                // aligned with spine positions
    std::vector<std::vector<std::string>> classes;  // copies per position (size = multiplicity)
};

/// Induced generalized cycles of length >= 6 whose consecutive common
/// neighbourhoods are exactly the classes, all counts nonzero mod p.
/// Search bounded: returns none for |V| > 12.
std::optional<GeneralizedPath> find_hardness_cycle(const Graph& h, unsigned p);

struct HardnessPathReport {
    GeneralizedPath path;
    // how the maximal path terminates
    bool end_degree_matches;                     // deg(v_l) == b_{l-1} mod p (case i if a set U exists)
    std::optional<std::vector<std::string>> U;   // subset of N(v_l) with |common nbhd| != 1 mod p
    bool wrapped_into_cycle = false;             // case iii
};

std::optional<HardnessPathReport> find_generalized_hardness_path(
    const Graph& h, unsigned p, const std::optional<std::string>& start = std::nullopt);

struct DeadEnd {
    std::string v;
    bool dead_end;
    bool suitable;
    int suitable_case = 0;          // 1: no outward component, 2: the U_v condition
    std::vector<std::string> U_v;   // outward vertices of the unique component
};

std::vector<DeadEnd> find_dead_ends(const Graph& h);

struct MosaicPathReport {
    GeneralizedPath path; // kind == MosaicPath, spine x_0 .. x_k
    bool partially_hard;
    Graph leading_B;      // B_2(x0) & B_2(x1) minus p-1 leaves at x1 (when built)
};

std::optional<MosaicPathReport> find_mosaic_path(const Graph& h, unsigned p);

/// Radius at most 2: some v with B_2(v) = h.
std::optional<std::string> radius2_center(const Graph& h);

/// Every component complete bipartite (sides within the fixed bipartition).
bool is_collection_of_complete_bipartite(const Graph& h);

} // namespace homlab

#endif
