#ifndef HOMLAB_QUANTUM_HPP
#define HOMLAB_QUANTUM_HPP

#include <homlab/graph.hpp>
#include <homlab/hom.hpp>
#include <homlab/reduction.hpp>
#include <homlab/zp.hpp>

#include <functional>

namespace homlab {

/// Formal linear combination of pairwise non-isomorphic graphs. Coefficients
/// are canonical residues in [0, p-1] once an interpretation prime is set;
/// normalize() additionally replaces constituents by order-p reduced forms.
struct QuantumGraph {
    struct Constituent {
        Graph graph;
        long long coeff; // canonical residue when prime is set
    };
    std::vector<Constituent> constituents;
    std::optional<unsigned> prime;

    QuantumGraph() = default;
    QuantumGraph(std::vector<Constituent> cs, std::optional<unsigned> p);

    /// Merge isomorphic constituents, reduce coefficients, drop zeros.
    /// Does not apply order-p reduction (see normalize).
    void canonicalize();
};

/// Order-p reduce every constituent, merge isomorphic results, drop zero
/// coefficients; the result's constituents are the p-constituents.
QuantumGraph normalize(const QuantumGraph& q, unsigned p);

/// Bilinear hom count: sum over source/target constituents of
/// beta * alpha * hom(G, H), reduced mod p.
unsigned count_homs_quantum(const Graph& source, const QuantumGraph& target, unsigned p,
                            const HomOptions& opts = {});
unsigned count_homs_quantum(const QuantumGraph& source, const QuantumGraph& target, unsigned p,
                            const HomOptions& opts = {});

enum class FamilyFlavor { Plain, Bip };

/// All order-p reduced subgraphs of K°_n (plain) or partition-wise reduced
/// subgraphs of K_{n,n} (bip) up to (partition-wise) isomorphism, ordered by
/// (|V|, |E|, loop count) so that the surj/inj matrices triangularise.
/// n <= 4 (plain) / n <= 3 (bip).
std::vector<Graph> reduced_subgraph_family(int n, unsigned p, FamilyFlavor flavor = FamilyFlavor::Plain);

struct HomMatrix {
    std::vector<Graph> family;
    FamilyFlavor flavor = FamilyFlavor::Plain;
    unsigned p = 2;
    ZpMat entries; // entries(i,j) = hom(F_i, F_j) mod p

    HomMatrix(std::vector<Graph> fam, FamilyFlavor fl, unsigned prime);
};

HomMatrix hom_matrix(const std::vector<Graph>& family, unsigned p,
                     FamilyFlavor flavor = FamilyFlavor::Plain);

struct NonsingularReport {
    bool nonsingular;
    unsigned det;
};

/// Reports singularity instead of asserting: a singular matrix signals a
/// family-closure violation (singular_family is thrown by callers that
/// require closure).
NonsingularReport check_nonsingular(const HomMatrix& m);

/// Quantum graph F with hom(F, family[j]) = v[j] mod p for all j; verified
/// post hoc. Throws solve_failure when elimination finds no solution.
QuantumGraph implement_vector(const std::vector<Graph>& family, const std::vector<unsigned>& v,
                              unsigned p, FamilyFlavor flavor = FamilyFlavor::Plain);

using HomOracle = std::function<unsigned(const Graph&)>; // hom(-, H-bar) mod p

/// Recover hom(G, H_i) mod p from an oracle for the quantum target, by
/// implementing the i-th standard basis vector over the closure family and
/// querying disjoint unions.
unsigned pin_extract(const HomOracle& oracle, const QuantumGraph& target, const Graph& g, int index,
                     unsigned p);

/// Recover the pinned count hom((G,u-bar), (H,w-bar)) mod p from an
/// unlabelled hom (or unpinned bip hom) oracle for H. H must be order-p
/// reduced in the matching flavor (not_reduced otherwise).
unsigned recover_pinned_count(const HomOracle& oracle, const Graph& g,
                              const std::vector<std::string>& u_tuple, const Graph& h,
                              const std::vector<std::string>& w_tuple, unsigned p,
                              FamilyFlavor flavor = FamilyFlavor::Plain);

} // namespace homlab

#endif
