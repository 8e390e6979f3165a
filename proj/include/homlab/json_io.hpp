#ifndef HOMLAB_JSON_IO_HPP
#define HOMLAB_JSON_IO_HPP

#include <homlab/classify.hpp>
#include <homlab/gadgets.hpp>
#include <homlab/graph.hpp>
#include <homlab/hom.hpp>
#include <homlab/quantum.hpp>

#include <json.hpp>

namespace homlab {

using json = nlohmann::json;

// {"vertices": [...], "edges": [[u,v],...], "bipartition": {"L":[...],"R":[...]}?,
//  "dist_vertices": [...]?, "dist_edges": [[u,v],...]?}
// Loops are [v,v]. Duplicate edges and bipartition violations are rejected
// with a diagnostic naming the offending edge.
Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);

DistinguishedGraph distinguished_from_json(const json& j);
json distinguished_to_json(const DistinguishedGraph& g);

// {"graph": {...}, "pins": {"v": "target"}, "distinguished": ["y", ...]}
LabelledGraph labelled_from_json(const json& j);
json labelled_to_json(const LabelledGraph& g);

// [{"graph": {...}, "coeff": 2}, ...] or {"prime": p, "constituents": [...]}
QuantumGraph quantum_from_json(const json& j);
json quantum_to_json(const QuantumGraph& q);

json hom_count_to_json(const HomCount& c);

// gadgets: {"JL": {...}, "JR": {...}, "JE": {...}, "iL": [...], ...}
HardnessGadget hardness_gadget_from_json(const json& j);
json hardness_gadget_to_json(const HardnessGadget& g);
BpGadget bp_gadget_from_json(const json& j);
json bp_gadget_to_json(const BpGadget& g);
json certificate_to_json(const GadgetCertificate& c);
json evidence_to_json(const HardnessEvidence& ev);
json reduction_trace_to_json(const ReductionTrace& t, const Graph& start);
json verdict_to_json(const Verdict& v);

json load_json_file(const std::string& path);

} // namespace homlab

#endif
