#include <homlab/json_io.hpp>

#include <fstream>

namespace homlab {

namespace {

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array()) throw parse_error(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw parse_error(std::string(what) + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> edge_list(const json& j, const char* what) {
    if (!j.is_array()) throw parse_error(std::string(what) + " must be an array");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw parse_error(std::string(what) + " entries must be 2-element string arrays");
        out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return out;
}

} // namespace

Graph graph_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("graph must be a JSON object");
    if (!j.contains("vertices")) throw parse_error("graph is missing \"vertices\"");
    Graph g(string_list(j.at("vertices"), "vertices"));
    if (j.contains("edges")) {
        for (const auto& [a, b] : edge_list(j.at("edges"), "edges")) {
            try {
                g.add_edge(a, b);
            } catch (const unknown_vertex& e) {
                throw parse_error(std::string("edge (") + a + "," + b + "): " + e.what());
            }
        }
    }
    if (j.contains("bipartition")) {
        const auto& bp = j.at("bipartition");
        if (!bp.is_object() || !bp.contains("L") || !bp.contains("R"))
            throw parse_error("bipartition must be {\"L\": [...], \"R\": [...]}");
        g.set_bipartition(string_list(bp.at("L"), "bipartition.L"), string_list(bp.at("R"), "bipartition.R"));
    }
    return g;
}

json graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = g.names();
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back({g.name(a), g.name(b)});
    j["edges"] = std::move(edges);
    if (g.has_bipartition()) {
        json l = json::array(), r = json::array();
        for (int v = 0; v < g.n(); ++v)
            (g.side(v) == Side::L ? l : r).push_back(g.name(v));
        j["bipartition"] = {{"L", std::move(l)}, {"R", std::move(r)}};
    }
    return j;
}

DistinguishedGraph distinguished_from_json(const json& j) {
    Graph g = graph_from_json(j);
    std::vector<std::string> dvs;
    std::vector<std::pair<std::string, std::string>> des;
    if (j.contains("dist_vertices")) dvs = string_list(j.at("dist_vertices"), "dist_vertices");
    if (j.contains("dist_edges")) des = edge_list(j.at("dist_edges"), "dist_edges");
    return DistinguishedGraph(std::move(g), std::move(dvs), std::move(des));
}

json distinguished_to_json(const DistinguishedGraph& g) {
    json j = graph_to_json(g.graph);
    json dvs = json::array();
    for (int v : g.dist_vertices) dvs.push_back(g.graph.name(v));
    j["dist_vertices"] = std::move(dvs);
    json des = json::array();
    for (auto [a, b] : g.dist_edges) des.push_back({g.graph.name(a), g.graph.name(b)});
    j["dist_edges"] = std::move(des);
    return j;
}

LabelledGraph labelled_from_json(const json& j) {
    if (!j.is_object() || !j.contains("graph")) throw parse_error("labelled graph needs a \"graph\" field");
    Graph g = graph_from_json(j.at("graph"));
    std::map<std::string, std::string> pins;
    if (j.contains("pins")) {
        if (!j.at("pins").is_object()) throw parse_error("pins must be an object");
        for (const auto& [k, v] : j.at("pins").items()) {
            if (!v.is_string()) throw parse_error("pin targets must be strings");
            pins[k] = v.get<std::string>();
        }
    }
    std::vector<std::string> dist;
    if (j.contains("distinguished")) dist = string_list(j.at("distinguished"), "distinguished");
    return LabelledGraph(std::move(g), std::move(pins), std::move(dist));
}

json labelled_to_json(const LabelledGraph& g) {
    json j;
    j["graph"] = graph_to_json(g.graph);
    j["pins"] = json::object();
    for (const auto& [k, v] : g.pins) j["pins"][k] = v;
    j["distinguished"] = g.distinguished;
    return j;
}

QuantumGraph quantum_from_json(const json& j) {
    QuantumGraph q;
    const json* arr = &j;
    if (j.is_object()) {
        if (j.contains("prime")) q.prime = j.at("prime").get<unsigned>();
        if (!j.contains("constituents")) throw parse_error("quantum graph needs \"constituents\"");
        arr = &j.at("constituents");
    }
    if (!arr->is_array()) throw parse_error("quantum graph must be an array of {graph, coeff}");
    for (const auto& e : *arr) {
        if (!e.is_object() || !e.contains("graph") || !e.contains("coeff"))
            throw parse_error("quantum constituent needs \"graph\" and \"coeff\"");
        q.constituents.push_back({graph_from_json(e.at("graph")), e.at("coeff").get<long long>()});
    }
    q.canonicalize();
    return q;
}

json quantum_to_json(const QuantumGraph& q) {
    json j;
    if (q.prime) j["prime"] = *q.prime;
    json arr = json::array();
    for (const auto& c : q.constituents)
        arr.push_back({{"graph", graph_to_json(c.graph)}, {"coeff", c.coeff}});
    j["constituents"] = std::move(arr);
    return j;
}

json hom_count_to_json(const HomCount& c) {
    json j;
    j["value"] = c.value;
    if (c.modulus) {
        j["modulus"] = *c.modulus;
        j["residue"] = c.residue;
    }
    return j;
}

HardnessGadget hardness_gadget_from_json(const json& j) {
    HardnessGadget g;
    g.JL = labelled_from_json(j.at("JL"));
    g.JR = labelled_from_json(j.at("JR"));
    g.JE = labelled_from_json(j.at("JE"));
    g.iL = string_list(j.at("iL"), "iL");
    g.oL = string_list(j.at("oL"), "oL");
    g.iR = string_list(j.at("iR"), "iR");
    g.oR = string_list(j.at("oR"), "oR");
    return g;
}

json hardness_gadget_to_json(const HardnessGadget& g) {
    json j;
    j["JL"] = labelled_to_json(g.JL);
    j["JR"] = labelled_to_json(g.JR);
    j["JE"] = labelled_to_json(g.JE);
    j["iL"] = g.iL;
    j["oL"] = g.oL;
    j["iR"] = g.iR;
    j["oR"] = g.oR;
    return j;
}

BpGadget bp_gadget_from_json(const json& j) {
    BpGadget g;
    g.JL = labelled_from_json(j.at("JL"));
    g.JR = labelled_from_json(j.at("JR"));
    g.LB = string_list(j.at("LB"), "LB");
    g.RB = string_list(j.at("RB"), "RB");
    return g;
}

json bp_gadget_to_json(const BpGadget& g) {
    json j;
    j["JL"] = labelled_to_json(g.JL);
    j["JR"] = labelled_to_json(g.JR);
    j["LB"] = g.LB;
    j["RB"] = g.RB;
    return j;
}

json certificate_to_json(const GadgetCertificate& c) {
    json j;
    j["valid"] = c.valid;
    if (!c.violation.empty()) j["violation"] = c.violation;
    json cl = json::array(), cr = json::array(), ce = json::array();
    for (const auto& [v, n] : c.countL) cl.push_back({{"vertex", v}, {"count", n}});
    for (const auto& [v, n] : c.countR) cr.push_back({{"vertex", v}, {"count", n}});
    for (const auto& [u, v, n] : c.countE) ce.push_back({{"pair", {u, v}}, {"count", n}});
    j["countL"] = std::move(cl);
    j["countR"] = std::move(cr);
    j["countE"] = std::move(ce);
    return j;
}

json evidence_to_json(const HardnessEvidence& ev) {
    json j;
    json chain = json::array();
    for (const auto& step : ev.chain) {
        json s;
        s["target"] = graph_to_json(step.target);
        s["gadget"] = bp_gadget_to_json(step.gadget);
        s["selected"] = graph_to_json(step.selected_B);
        s["next"] = graph_to_json(step.next);
        s["rule"] = step.rule;
        chain.push_back(std::move(s));
    }
    j["chain"] = std::move(chain);
    j["final_target"] = graph_to_json(ev.final_target);
    j["final_gadget"] = hardness_gadget_to_json(ev.final_gadget);
    j["certificate"] = certificate_to_json(ev.certificate);
    j["rule"] = ev.rule;
    return j;
}

json reduction_trace_to_json(const ReductionTrace& t, const Graph& start) {
    json steps = json::array();
    const Graph* cur = &start;
    for (const auto& step : t.steps) {
        json s;
        json perm = json::object();
        for (size_t v = 0; v < step.automorphism.size(); ++v)
            perm[cur->name(static_cast<int>(v))] = cur->name(step.automorphism[v]);
        s["automorphism"] = std::move(perm);
        s["fixed_subgraph"] = graph_to_json(step.result);
        steps.push_back(std::move(s));
        cur = &step.result;
    }
    json j;
    j["steps"] = std::move(steps);
    j["result"] = graph_to_json(t.result);
    return j;
}

json verdict_to_json(const Verdict& v) {
    json j;
    j["label"] = verdict_label_name(v.label);
    j["p"] = v.p;
    if (!v.reason.empty()) j["reason"] = v.reason;
    if (!v.stage.empty()) j["stage"] = v.stage;
    if (v.conditional) j["assumes_conjecture_1"] = true;
    if (!v.reduction.steps.empty() || !v.reduction.result.empty())
        j["reduced_form"] = graph_to_json(v.reduction.result);
    if (v.bipartized) j["bipartized_reduced"] = graph_to_json(*v.bipartized);
    if (v.evidence) j["evidence"] = evidence_to_json(*v.evidence);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    return j;
}

} // namespace homlab
