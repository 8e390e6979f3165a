#ifndef HOMLAB_REDUCTION_HPP
#define HOMLAB_REDUCTION_HPP

#include <homlab/graph.hpp>

#include <optional>
#include <vector>

namespace homlab {

enum class AutFlavor { Plain, Bip, Dist };

/// Full element list of the automorphism group (desk scale). Bip elements
/// preserve the fixed sides; Dist elements map distinguished vertices and
/// edges bijectively onto distinguished ones.
struct AutGroup {
    AutFlavor flavor = AutFlavor::Plain;
    std::vector<std::vector<int>> elements; // permutations, identity first

    size_t order() const { return elements.size(); }
};

int permutation_order(const std::vector<int>& perm);

/// Enumeration cap guards against degenerate inputs; throws instance_too_large.
AutGroup automorphism_group(const Graph& h, AutFlavor flavor = AutFlavor::Plain,
                            size_t cap = 2'000'000);
AutGroup automorphism_group(const DistinguishedGraph& h, size_t cap = 2'000'000);

/// First automorphism of order exactly p in deterministic search order.
/// A p-twin-class shortcut fires before the group walk, so large complete
/// bipartite blocks resolve without full enumeration.
std::optional<std::vector<int>> find_order_p_automorphism(const Graph& h, unsigned p,
                                                          AutFlavor flavor = AutFlavor::Plain);
std::optional<std::vector<int>> find_order_p_automorphism(const DistinguishedGraph& h, unsigned p);

/// Which order-p automorphism reduce() picks at each step; Last exists so the
/// confluence checks can drive the rewriting down a second route.
enum class Chooser { First, Last };

struct ReductionStep {
    std::vector<int> automorphism; // indices into the graph before this step
    Graph result;                  // subgraph induced by the fixed points
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    Graph result;
};

struct DistReductionTrace {
    std::vector<ReductionStep> steps;
    DistinguishedGraph result;
    bool lost_distinguished = false; // some step dropped a distinguished vertex
};

ReductionTrace reduce(const Graph& h, unsigned p, AutFlavor flavor = AutFlavor::Plain,
                      Chooser chooser = Chooser::First);
DistReductionTrace reduce(const DistinguishedGraph& h, unsigned p, Chooser chooser = Chooser::First);

std::vector<std::vector<int>> orbit(const Graph& h, AutFlavor flavor, const std::vector<int>& tuple);
AutGroup stabilizer(const Graph& h, AutFlavor flavor, const std::vector<int>& tuple);

} // namespace homlab

#endif
