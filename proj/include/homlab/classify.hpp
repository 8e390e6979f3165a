#ifndef HOMLAB_CLASSIFY_HPP
#define HOMLAB_CLASSIFY_HPP

#include <homlab/gadgets.hpp>
#include <homlab/reduction.hpp>

namespace homlab {

enum class VerdictLabel { Tractable, Hard, ZeroEverywhere, Unknown };

/// Classification result with machine-checkable evidence. Hard is a
/// certificate-backed label ("the reduction chain applies"), never an
/// independent complexity proof; Unknown is a first-class outcome.
struct Verdict {
    VerdictLabel label = VerdictLabel::Unknown;
    unsigned p = 2;
    std::string reason;
    ReductionTrace reduction;               // plain or partition-wise trace
    std::optional<Graph> bipartized;        // H (x) K2 after reduction
    std::optional<HardnessEvidence> evidence;
    bool conditional = false;               // depends on the open conjecture
    std::string stage;                      // last pipeline stage on Unknown
};

Verdict classify_homs(const Graph& h, unsigned p);
Verdict classify_bip_homs(const Graph& h, unsigned p);

/// Closed-form hom count into a Dyer-Greenhill-form target (components
/// complete bipartite or reflexive complete); throws not_tractable_form.
unsigned long long tractable_count(const Graph& h, const Graph& g);

const char* verdict_label_name(VerdictLabel label);

} // namespace homlab

#endif
