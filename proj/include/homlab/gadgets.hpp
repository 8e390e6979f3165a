#ifndef HOMLAB_GADGETS_HPP
#define HOMLAB_GADGETS_HPP

#include <homlab/hom.hpp>
#include <homlab/structure.hpp>

#include <array>
#include <optional>

namespace homlab {

/// p-hardness gadget: three selector graphs plus the i/o partition of the
/// selected sets. Constructors never trust their output; verification
/// recomputes everything by counting.
struct HardnessGadget {
    LabelledGraph JL, JR; // one distinguished vertex each
    LabelledGraph JE;     // two distinguished vertices
    std::vector<std::string> iL, oL, iR, oR; // target vertex names
};

/// (B,p)-gadget: two selectors carving an induced (abstract) bipartite graph
/// B out of the target; counting homs to B transfers through the target.
struct BpGadget {
    LabelledGraph JL, JR;
    std::vector<std::string> LB, RB; // claimed selected sets
};

struct GadgetCertificate {
    bool valid = false;
    std::string violation;
    std::vector<std::pair<std::string, unsigned>> countL, countR; // counts mod p on the selected sets
    std::vector<std::tuple<std::string, std::string, unsigned>> countE;
};

/// Omega = { v : hom((J,y),(H,v)) != 0 mod p } for a single distinguished vertex.
std::vector<std::string> select_set(const LabelledGraph& j, const Graph& h, unsigned p);
/// Ordered pairs for two distinguished vertices.
std::vector<std::pair<std::string, std::string>> select_pairs(const LabelledGraph& j, const Graph& h,
                                                              unsigned p);

/// p-1 disjoint copies glued at the distinguished tuple; nonzero selector
/// counts become 1 by Fermat.
LabelledGraph amplify(const LabelledGraph& j, unsigned p);

GadgetCertificate verify_hardness_gadget(const Graph& h, unsigned p, const HardnessGadget& g);
GadgetCertificate verify_bp_gadget(const Graph& h, unsigned p, const BpGadget& g);

/// The abstract bipartite graph selected by a verified (B,p)-gadget: L-side
/// copies x#L of LB, R-side copies x#R of RB, edges inherited from h.
Graph selected_graph(const Graph& h, const BpGadget& g);

/// The 4-vertex path P(a1,a2,a3,a4): levels x1..x4 cloned a_i times, complete
/// bicliques between consecutive levels, bipartition {x1,x3 | x2,x4}.
Graph make_4vertex_path(int a1, int a2, int a3, int a4);

/// Levels (x1..x4 classes) when h is a 4-vertex path, in a deterministic
/// orientation.
std::optional<std::array<std::vector<std::string>, 4>> detect_4vertex_path(const Graph& h);

/// Gadget on the path itself; throws bad_counts when some a_i = 0 mod p.
std::pair<Graph, HardnessGadget> gadget_4vertex_path(int a1, int a2, int a3, int a4, unsigned p);
/// Same construction over the given host graph (h must be a 4-vertex path).
HardnessGadget gadget_4vertex_path_on(const Graph& h, unsigned p);

/// Selector pair from a generalized hardness inducing cycle (length >= 6).
BpGadget gadget_cycle(const Graph& h, const GeneralizedPath& cycle, unsigned p);

/// Endpoint-condition gadgets on a generalized hardness path (the three
/// walk-count variants); verification mandatory.
HardnessGadget gadget_path_endpoints(const Graph& h, const HardnessPathReport& path, unsigned p,
                                     int variant);

/// Selector pair for a partially hard p-mosaic path whose terminal degree
/// breaks the core degree (mod p).
BpGadget gadget_mosaic(const Graph& h, const MosaicPathReport& q, unsigned p);

struct Radius2Result {
    std::string case_name;
    std::optional<HardnessGadget> direct;
    std::optional<BpGadget> step; // selected B continues the reduction
};

/// Case dispatch for fixed-bipartition, forbidden-free, radius <= 2 graphs
/// that are not complete bipartite. Throws out_of_fragment when no
/// implemented case matches.
Radius2Result radius2_gadget(const Graph& h, unsigned p);

struct BpReductionCheck {
    LabelledGraph J;             // g with amplified selector copies attached
    unsigned long long lhs;      // hom(J, h) mod p
    unsigned long long rhs;      // hom_bip(g, B) mod p
    bool equal;
};

/// Executable counting transfer: attaches amplified JL/JR
/// copies to every L/R vertex of g and checks hom(J,H) = hom^bip(g,B) mod p.
BpReductionCheck reduce_via_Bp(const Graph& g, const BpGadget& gadget, const Graph& h, unsigned p);

/// Weighted bipartite independent set partition function mod p, brute force
/// over all independent sets. |V| <= 24.
unsigned count_weighted_bis(const Graph& g, unsigned lambda_l, unsigned lambda_r, unsigned kappa_l,
                            unsigned kappa_r, unsigned p);

struct BisReductionCheck {
    LabelledGraph G_theta;  // bipartite, pinned
    unsigned lhs;           // hom_bip((G',theta), h) mod p
    unsigned rhs;           // Z_{|iL|,|iR|}^{|oL|,|oR|}(g) mod p
    bool equal;
};

/// The central reduction: one JE copy per edge and one JL/JR copy per vertex
/// of g, glued at distinguished vertices; both sides computed.
BisReductionCheck reduce_bis_to_biphoms(const Graph& g, const HardnessGadget& gadget, const Graph& h,
                                        unsigned p);

struct EvidenceStep {
    Graph target;     // graph this step's gadget lives on
    BpGadget gadget;
    Graph selected_B; // abstract selected graph
    Graph next;       // reduced non-complete-bipartite component recursed on
    std::string rule; // which construction produced the step
};

/// Machine-checkable hardness evidence: a chain of verified (B,p)-gadget
/// steps ending in a verified p-hardness gadget.
struct HardnessEvidence {
    std::vector<EvidenceStep> chain;
    Graph final_target;
    HardnessGadget final_gadget;
    GadgetCertificate certificate;
    std::string rule;
};

/// Best-effort search-and-verify dispatcher (hard-vertex, radius-2, 4-vertex
/// path, cycle, path variants, mosaic, in that order). Every returned
/// evidence re-verifies; nullopt means no implemented construction applied.
std::optional<HardnessEvidence> find_hardness_evidence(const Graph& h, unsigned p, int depth = 8);

/// Re-run all counting checks on an evidence chain (used by verdict audits).
bool reverify_evidence(const HardnessEvidence& ev, unsigned p);

} // namespace homlab

#endif
