// Command-line surface over the counting laboratory: exact/modular hom
// counts, order-p reductions, quantum-graph operations, structural
// detectors, gadget verification and the end-to-end classifier. All
// commands read and write the JSON graph formats; identical inputs produce
// byte-identical outputs.

#include <homlab/bipartize.hpp>
#include <homlab/canon.hpp>
#include <homlab/json_io.hpp>
#include <homlab/kernels.hpp>
#include <homlab/surjective.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace homlab;

namespace {

Graph load_graph(const std::string& path) {
    return graph_from_json(load_json_file(path));
}

DistinguishedGraph load_distinguished(const std::string& path) {
    return distinguished_from_json(load_json_file(path));
}

void emit(const json& j) {
    std::cout << j.dump(2) << "\n";
}

AutFlavor flavor_from(const std::string& s) {
    if (s == "plain") return AutFlavor::Plain;
    if (s == "bip") return AutFlavor::Bip;
    if (s == "dist") return AutFlavor::Dist;
    throw parse_error("unknown reduce flavor: " + s);
}

json generalized_path_to_json(const GeneralizedPath& p) {
    json j;
    j["spine"] = p.spine;
    j["multiplicities"] = p.multiplicities;
    j["classes"] = p.classes;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph homomorphism counting laboratory over Z_p"};
    app.require_subcommand(1);
    unsigned long long budget = default_assignment_budget;
    app.add_option("--budget", budget, "assignment-space budget for the enumeration core");
    app.set_version_flag("--version", std::string("homlab (kernel: ") + kernels::active_kernel_name() + ")");

    // count
    auto* count_cmd = app.add_subcommand("count", "count homomorphisms between two graphs");
    std::string count_flavor = "hom";
    std::optional<unsigned> count_mod;
    std::vector<std::string> count_files;
    count_cmd->add_option("--flavor", count_flavor, "hom|bip|inj|surj|aut")->capture_default_str();
    count_cmd->add_option("--mod", count_mod, "prime modulus");
    count_cmd->add_option("files", count_files, "G.json H.json (aut: just the graph)")->expected(1, 2);

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "order-p reduced form with trace");
    std::string reduce_flavor = "plain";
    unsigned reduce_p = 2;
    std::string reduce_file;
    reduce_cmd->add_option("--flavor", reduce_flavor, "plain|bip|dist")->capture_default_str();
    reduce_cmd->add_option("--p", reduce_p, "prime")->required();
    reduce_cmd->add_option("H", reduce_file, "graph file")->required();

    // bipartize
    auto* bip_cmd = app.add_subcommand("bipartize", "tensor with K2, fixed block bipartition");
    std::string bip_file;
    bip_cmd->add_option("H", bip_file, "graph file")->required();

    // quantum
    auto* quantum_cmd = app.add_subcommand("quantum", "quantum graph operations");
    quantum_cmd->require_subcommand(1);
    unsigned q_p = 2;
    int q_n = 2, q_index = 0;
    bool q_bip = false;
    std::vector<std::string> q_files;
    auto* q_norm = quantum_cmd->add_subcommand("normalize", "order-p reduce and merge constituents");
    q_norm->add_option("--p", q_p, "prime")->required();
    q_norm->add_option("Q", q_files, "quantum graph file")->expected(1);
    auto* q_count = quantum_cmd->add_subcommand("count", "hom count into a quantum target");
    q_count->add_option("--p", q_p, "prime")->required();
    q_count->add_option("files", q_files, "G.json Q.json")->expected(2);
    auto* q_impl = quantum_cmd->add_subcommand("implement", "quantum graph implementing a vector");
    q_impl->add_option("--p", q_p, "prime")->required();
    q_impl->add_option("--n", q_n, "closure family parameter")->required();
    q_impl->add_flag("--bip", q_bip, "partition-wise family over K_{n,n}");
    q_impl->add_option("v", q_files, "JSON array of residues")->expected(1);
    auto* q_pin = quantum_cmd->add_subcommand("pin-extract", "recover a constituent count via the oracle");
    q_pin->add_option("--p", q_p, "prime")->required();
    q_pin->add_option("--index", q_index, "constituent index")->required();
    q_pin->add_option("files", q_files, "Q.json G.json")->expected(2);

    // structure
    auto* structure_cmd = app.add_subcommand("structure", "structural detectors");
    structure_cmd->require_subcommand(1);
    unsigned s_p = 2;
    int s_budget = 3;
    std::string s_file, s_at, s_v, s_u;
    std::optional<std::string> s_start;
    auto* s_ff = structure_cmd->add_subcommand("forbidden-free", "induced K3,3\\{e} / domino search");
    s_ff->add_option("H", s_file)->required();
    auto* s_split = structure_cmd->add_subcommand("split", "split of B_2(v) at v");
    s_split->add_option("H", s_file)->required();
    s_split->add_option("--at", s_at, "centre vertex")->required();
    auto* s_core = structure_cmd->add_subcommand("core", "complete core of an edge");
    s_core->add_option("H", s_file)->required();
    s_core->add_option("--v", s_v)->required();
    s_core->add_option("--u", s_u)->required();
    auto* s_sq = structure_cmd->add_subcommand("square-free", "p-square-freeness");
    s_sq->add_option("--p", s_p, "prime")->required();
    s_sq->add_option("H", s_file)->required();
    auto* s_hv = structure_cmd->add_subcommand("hard-vertex", "budgeted hard-vertex search");
    s_hv->add_option("--p", s_p, "prime")->required();
    s_hv->add_option("--budget", s_budget, "max |U|")->capture_default_str();
    s_hv->add_option("H", s_file)->required();
    auto* s_cyc = structure_cmd->add_subcommand("cycle", "generalized hardness inducing cycle");
    s_cyc->add_option("--p", s_p, "prime")->required();
    s_cyc->add_option("H", s_file)->required();
    auto* s_path = structure_cmd->add_subcommand("path", "generalized hardness path");
    s_path->add_option("--p", s_p, "prime")->required();
    s_path->add_option("--start", s_start, "start vertex");
    s_path->add_option("H", s_file)->required();
    auto* s_mos = structure_cmd->add_subcommand("mosaic", "p-mosaic path");
    s_mos->add_option("--p", s_p, "prime")->required();
    s_mos->add_option("H", s_file)->required();

    // gadget
    auto* gadget_cmd = app.add_subcommand("gadget", "gadget verification and search");
    gadget_cmd->require_subcommand(1);
    unsigned g_p = 2;
    std::vector<std::string> g_files;
    auto* g_verify = gadget_cmd->add_subcommand("verify", "verify a p-hardness gadget by counting");
    g_verify->add_option("--p", g_p, "prime")->required();
    g_verify->add_option("files", g_files, "H.json gadget.json")->expected(2);
    auto* g_find = gadget_cmd->add_subcommand("find", "search-and-verify dispatcher");
    g_find->add_option("--p", g_p, "prime")->required();
    g_find->add_option("files", g_files, "H.json")->expected(1);
    auto* g_bis = gadget_cmd->add_subcommand("bis-reduce", "weighted-BIS to bip-homs reduction check");
    g_bis->add_option("--p", g_p, "prime")->required();
    g_bis->add_option("files", g_files, "H.json gadget.json G.json")->expected(3);

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "end-to-end dichotomy pipeline");
    unsigned c_p = 2;
    bool c_bip = false;
    std::string c_file;
    classify_cmd->add_option("--p", c_p, "prime")->required();
    classify_cmd->add_flag("--bip", c_bip, "classify the partition-preserving problem");
    classify_cmd->add_option("H", c_file)->required();

    // surj
    auto* surj_cmd = app.add_subcommand("surj", "partially surjective homomorphisms");
    surj_cmd->require_subcommand(1);
    unsigned su_p = 2;
    std::optional<unsigned> su_mod;
    std::vector<std::string> su_files;
    auto* su_count = surj_cmd->add_subcommand("count", "brute-force partially surjective count");
    su_count->add_option("--mod", su_mod, "prime modulus");
    su_count->add_option("files", su_files, "G.json HD.json")->expected(2);
    auto* su_expand = surj_cmd->add_subcommand("expand", "inclusion-exclusion quantum expansion");
    su_expand->add_option("files", su_files, "HD.json")->expected(1);
    auto* su_classify = surj_cmd->add_subcommand("classify", "conditional dichotomy verdict");
    su_classify->add_option("--p", su_p, "prime")->required();
    su_classify->add_option("files", su_files, "HD.json")->expected(1);
    auto* su_vs = surj_cmd->add_subcommand("vertex-surjective", "vertex-surjective preset");
    su_vs->add_option("--p", su_p, "prime")->required();
    su_vs->add_option("files", su_files, "H.json")->expected(1);
    auto* su_comp = surj_cmd->add_subcommand("compaction", "compaction preset");
    su_comp->add_option("--p", su_p, "prime")->required();
    su_comp->add_option("files", su_files, "H.json")->expected(1);

    CLI11_PARSE(app, argc, argv);

    try {
        HomOptions opts;
        opts.budget = budget;

        if (*count_cmd) {
            opts.mod = count_mod;
            if (count_flavor == "aut") {
                Graph g = load_graph(count_files.at(0));
                emit(hom_count_to_json(count_aut(g, opts)));
            } else {
                if (count_files.size() != 2) throw parse_error("count needs G.json and H.json");
                Graph g = load_graph(count_files[0]);
                Graph h = load_graph(count_files[1]);
                HomCount c;
                if (count_flavor == "hom") c = count_homs(g, h, opts);
                else if (count_flavor == "bip") c = count_bip_homs(g, h, opts);
                else if (count_flavor == "inj") c = count_inj(g, h, opts);
                else if (count_flavor == "surj") c = count_surj(g, h, opts);
                else throw parse_error("unknown count flavor: " + count_flavor);
                emit(hom_count_to_json(c));
            }
        } else if (*reduce_cmd) {
            if (reduce_flavor == "dist") {
                DistinguishedGraph h = load_distinguished(reduce_file);
                auto r = dist_reduce(h, reduce_p);
                json j;
                j["zero_everywhere"] = r.zero_everywhere;
                j["result"] = distinguished_to_json(r.trace.result);
                j["steps"] = static_cast<int>(r.trace.steps.size());
                emit(j);
            } else {
                Graph h = load_graph(reduce_file);
                auto t = reduce(h, reduce_p, flavor_from(reduce_flavor));
                emit(reduction_trace_to_json(t, h));
            }
        } else if (*bip_cmd) {
            emit(graph_to_json(bipartize(load_graph(bip_file))));
        } else if (*quantum_cmd) {
            if (*q_norm) {
                QuantumGraph q = quantum_from_json(load_json_file(q_files[0]));
                emit(quantum_to_json(normalize(q, q_p)));
            } else if (*q_count) {
                Graph g = load_graph(q_files[0]);
                QuantumGraph q = quantum_from_json(load_json_file(q_files[1]));
                json j;
                j["residue"] = count_homs_quantum(g, q, q_p, opts);
                j["modulus"] = q_p;
                emit(j);
            } else if (*q_impl) {
                json vj = load_json_file(q_files[0]);
                std::vector<unsigned> v;
                for (const auto& e : vj) v.push_back(e.get<unsigned>());
                auto fam = reduced_subgraph_family(q_n, q_p,
                                                   q_bip ? FamilyFlavor::Bip : FamilyFlavor::Plain);
                if (v.size() != fam.size())
                    throw parse_error("vector length " + std::to_string(v.size()) +
                                      " does not match the family size " + std::to_string(fam.size()));
                emit(quantum_to_json(
                    implement_vector(fam, v, q_p, q_bip ? FamilyFlavor::Bip : FamilyFlavor::Plain)));
            } else if (*q_pin) {
                QuantumGraph q = quantum_from_json(load_json_file(q_files[0]));
                Graph g = load_graph(q_files[1]);
                HomOptions oracle_opts = opts;
                HomOracle oracle = [&](const Graph& x) {
                    return count_homs_quantum(x, q, q_p, oracle_opts);
                };
                json j;
                j["residue"] = pin_extract(oracle, q, g, q_index, q_p);
                j["modulus"] = q_p;
                emit(j);
            }
        } else if (*structure_cmd) {
            Graph h = load_graph(s_file);
            if (*s_ff) {
                auto r = is_forbidden_free(h);
                json j;
                j["free"] = r.free;
                if (!r.free) j["witness"] = r.witness;
                j["split_criterion_agrees"] = is_forbidden_free_split_criterion(h) == r.free;
                emit(j);
            } else if (*s_split) {
                Split s = split_at(h, s_at);
                json j;
                j["center"] = s.center;
                json cls = json::array();
                for (const auto& c : s.classes)
                    cls.push_back({{"count", c.count},
                                   {"representative", graph_to_json(c.representative)},
                                   {"block_of_center", graph_to_json(c.block_of_center)}});
                j["classes"] = std::move(cls);
                emit(j);
            } else if (*s_core) {
                CompleteCore c = complete_core(h, s_v, s_u);
                json j;
                j["core"] = graph_to_json(c.core);
                j["a"] = c.a;
                j["b"] = c.b;
                emit(j);
            } else if (*s_sq) {
                auto r = is_p_square_free(h, s_p);
                json j;
                j["square_free"] = r.square_free;
                if (r.witness) {
                    j["witness"] = {{"v", r.witness->v},
                                    {"u", r.witness->u},
                                    {"a", r.witness->a},
                                    {"b", r.witness->b}};
                }
                emit(j);
            } else if (*s_hv) {
                auto r = find_hard_vertex(h, s_p, s_budget);
                json j;
                j["found"] = r.has_value();
                if (r) {
                    j["vertex"] = r->v;
                    j["U"] = r->U;
                    j["B"] = graph_to_json(r->B);
                    j["B_reduced"] = graph_to_json(r->B_reduced);
                }
                emit(j);
            } else if (*s_cyc) {
                auto r = find_hardness_cycle(h, s_p);
                json j;
                j["found"] = r.has_value();
                if (r) j["cycle"] = generalized_path_to_json(*r);
                emit(j);
            } else if (*s_path) {
                auto r = find_generalized_hardness_path(h, s_p, s_start);
                json j;
                j["found"] = r.has_value();
                if (r) {
                    j["path"] = generalized_path_to_json(r->path);
                    j["end_degree_matches"] = r->end_degree_matches;
                    if (r->U) j["U"] = *r->U;
                    j["wrapped_into_cycle"] = r->wrapped_into_cycle;
                }
                emit(j);
            } else if (*s_mos) {
                auto r = find_mosaic_path(h, s_p);
                json j;
                j["found"] = r.has_value();
                if (r) {
                    j["path"] = generalized_path_to_json(r->path);
                    j["partially_hard"] = r->partially_hard;
                }
                emit(j);
            }
        } else if (*gadget_cmd) {
            if (*g_verify) {
                Graph h = load_graph(g_files[0]);
                HardnessGadget g = hardness_gadget_from_json(load_json_file(g_files[1]));
                emit(certificate_to_json(verify_hardness_gadget(h, g_p, g)));
            } else if (*g_find) {
                Graph h = load_graph(g_files[0]);
                auto ev = find_hardness_evidence(h, g_p);
                json j;
                j["found"] = ev.has_value();
                if (ev) j["evidence"] = evidence_to_json(*ev);
                emit(j);
            } else if (*g_bis) {
                Graph h = load_graph(g_files[0]);
                HardnessGadget g = hardness_gadget_from_json(load_json_file(g_files[1]));
                Graph in = load_graph(g_files[2]);
                auto r = reduce_bis_to_biphoms(in, g, h, g_p);
                json j;
                j["lhs"] = r.lhs;
                j["rhs"] = r.rhs;
                j["equal"] = r.equal;
                j["G_theta"] = labelled_to_json(r.G_theta);
                emit(j);
            }
        } else if (*classify_cmd) {
            Graph h = load_graph(c_file);
            Verdict v = c_bip ? classify_bip_homs(h, c_p) : classify_homs(h, c_p);
            emit(verdict_to_json(v));
        } else if (*surj_cmd) {
            if (*su_count) {
                Graph g = load_graph(su_files[0]);
                DistinguishedGraph hd = load_distinguished(su_files[1]);
                emit(hom_count_to_json(count_part_surj(g, hd, su_mod, budget)));
            } else if (*su_expand) {
                DistinguishedGraph hd = load_distinguished(su_files[0]);
                emit(quantum_to_json(expand_inclusion_exclusion(hd)));
            } else if (*su_classify) {
                DistinguishedGraph hd = load_distinguished(su_files[0]);
                emit(verdict_to_json(classify_part_surj(hd, su_p)));
            } else if (*su_vs) {
                Graph h = load_graph(su_files[0]);
                emit(verdict_to_json(classify_part_surj(vertex_surjective_preset(h), su_p)));
            } else if (*su_comp) {
                Graph h = load_graph(su_files[0]);
                emit(verdict_to_json(classify_part_surj(compaction_preset(h), su_p)));
            }
        }
    } catch (const instance_too_large& e) {
        std::cerr << "instance too large: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
