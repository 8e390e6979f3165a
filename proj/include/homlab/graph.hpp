#ifndef HOMLAB_GRAPH_HPP
#define HOMLAB_GRAPH_HPP

#include <homlab/errors.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace homlab {

enum class Side : uint8_t { L = 0, R = 1 };

/// Undirected graph with named vertices. Loops allowed, multi-edges rejected
/// at construction. An optional bipartition assigns every vertex to side L or
/// R; with a bipartition present, every non-loop edge must cross and loops
/// are forbidden. Immutable by convention once built (all operations return
/// new graphs). At most 64 vertices.
class Graph {
public:
    static constexpr int max_vertices = 64;

    Graph() = default;
    explicit Graph(std::vector<std::string> vertex_names);

    void add_edge(const std::string& a, const std::string& b);
    void add_edge(int a, int b);
    void set_bipartition(const std::vector<std::string>& left, const std::vector<std::string>& right);
    void clear_bipartition() { sides_.reset(); }

    int n() const { return static_cast<int>(names_.size()); }
    bool empty() const { return names_.empty(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_[v]; }
    int index_of(const std::string& name) const; // throws unknown_vertex
    std::optional<int> find(const std::string& name) const;

    uint64_t adj(int v) const { return adj_[v]; }
    bool has_edge(int a, int b) const { return (adj_[a] >> b) & 1u; }
    bool has_loop(int v) const { return has_edge(v, v); }
    int degree(int v) const;                 // loop counts once
    uint64_t all_mask() const { return n() == 64 ? ~0ull : ((1ull << n()) - 1); }
    uint64_t loop_mask() const;

    /// Edges as index pairs (a <= b), loops as (v,v); deterministic order.
    std::vector<std::pair<int, int>> edges() const;
    int edge_count() const;
    int loop_count() const;

    bool has_bipartition() const { return sides_.has_value(); }
    Side side(int v) const;                  // throws missing_bipartition
    uint64_t side_mask(Side s) const;

    /// Induced subgraph on the given vertex set (bipartition and order preserved).
    Graph induced(uint64_t keep) const;
    Graph induced(const std::vector<std::string>& keep) const;

    /// Copy with every vertex name suffixed; used to build disjoint copies.
    Graph renamed(const std::string& suffix) const;

    std::vector<std::vector<int>> connected_components() const;
    int distance(int u, int v) const;        // -1 if disconnected

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<uint64_t> adj_;
    std::optional<std::vector<Side>> sides_;

    void check_bipartition_edge(int a, int b) const;
};

/// Graph with distinguished vertex and edge sets; endpoints of distinguished
/// edges are forced distinguished at construction.
struct DistinguishedGraph {
    Graph graph;
    std::vector<int> dist_vertices;              // sorted indices
    std::vector<std::pair<int, int>> dist_edges; // (a <= b), sorted

    DistinguishedGraph() = default;
    DistinguishedGraph(Graph g, std::vector<std::string> dvs,
                       std::vector<std::pair<std::string, std::string>> des);

    bool is_dist_vertex(int v) const;
    bool is_dist_edge(int a, int b) const;
};

// Constructions (pure; inputs unchanged).

/// Vertex names suffixed "#1" / "#2"; bipartitions merged side-by-side when
/// both present, dropped otherwise.
Graph disjoint_union(const Graph& g1, const Graph& g2);

/// Vertices are pairs "u|v"; (u,v)~(u',v') iff u~u' and v~v'.
Graph tensor_product(const Graph& g1, const Graph& g2);

/// Glue g2's vertex v2 onto g1's vertex v1 under a fresh name. Vertex names
/// must otherwise be disjoint; duplicate edges arising at the seam are merged.
Graph identify(const Graph& g1, const std::string& v1, const Graph& g2, const std::string& v2,
               const std::string& new_name);

/// Merge two vertices of one graph (neighbourhood union, edges deduplicated;
/// an edge between them becomes a loop). Bipartition is kept when both lie on
/// the same side and dropped otherwise.
Graph merge_vertices(const Graph& g, const std::string& v1, const std::string& v2,
                     const std::string& new_name);

Graph induced_subgraph(const Graph& g, const std::vector<std::string>& keep);

/// B_2(v) = induced subgraph on N(v) u N(N(v)). Isolated v yields the empty graph.
Graph two_ball(const Graph& g, const std::string& v);
Graph two_ball(const Graph& g, int v);

/// Biconnected components. Every edge lies in exactly one block; an isolated
/// vertex is a single-vertex block; every loop forms its own block.
std::vector<Graph> blocks(const Graph& g);

bool is_complete_bipartite(const Graph& g);
bool is_reflexive_complete(const Graph& g);
/// Complete bipartite sides (a,b) with a = |L|; (0,n) for edgeless graphs.
std::optional<std::pair<int, int>> complete_bipartite_shape(const Graph& g);
/// Deterministic two-coloring; nullopt if an odd cycle or loop exists.
std::optional<std::vector<Side>> bipartition_of(const Graph& g);
/// Every component complete bipartite or reflexive complete (Dyer-Greenhill form).
bool is_dyer_greenhill(const Graph& g);

} // namespace homlab

#endif
