#ifndef HOMLAB_SURJECTIVE_HPP
#define HOMLAB_SURJECTIVE_HPP

#include <homlab/classify.hpp>
#include <homlab/quantum.hpp>

namespace homlab {

/// Homs hitting every distinguished vertex and covering every distinguished
/// edge, by brute-force enumeration.
HomCount count_part_surj(const Graph& g, const DistinguishedGraph& hd,
                         const std::optional<unsigned>& mod = std::nullopt,
                         unsigned long long budget = default_assignment_budget);

/// Inclusion-exclusion expansion: quantum graph F-bar with
/// count_part_surj(g, hd) = sum alpha_F hom(g, F) exactly, for every g.
/// Deletion order fixed: distinguished edges first, then distinguished
/// vertices not incident to a remaining distinguished edge.
QuantumGraph expand_inclusion_exclusion(const DistinguishedGraph& hd);

struct DistReduceResult {
    bool zero_everywhere = false;  // an order-p automorphism moved a distinguished vertex out
    DistReductionTrace trace;
};

DistReduceResult dist_reduce(const DistinguishedGraph& hd, unsigned p);

/// Verdict for counting partially surjective homs mod p. Hard verdicts are
/// conditional on the open dichotomy conjecture and tagged as such.
Verdict classify_part_surj(const DistinguishedGraph& hd, unsigned p);

DistinguishedGraph vertex_surjective_preset(const Graph& h);
DistinguishedGraph compaction_preset(const Graph& h);

} // namespace homlab

#endif
