#pragma once

#include <string>
#include <vector>

#include "qgraph/core_graph.hpp"
#include "qgraph/group_rep.hpp"

namespace qgraph {

/// The image of every vertex and edge under one group element. `reversed[e]`
/// is set when the element maps edge e onto its image against the image's
/// parameterization (u -> v of e lands on v -> u of the image).
struct ElementMap {
    std::vector<VertexId> vertex;
    std::vector<EdgeId> edge;
    std::vector<bool> reversed;

    static ElementMap identity(const MetricGraph& g);
    /// this ∘ other: apply `other` first.
    ElementMap after(const ElementMap& other) const;
    bool operator==(const ElementMap&) const = default;
};

/// Action of G_{n1} x G_{n2} on a metric graph given by the images of its two
/// generators. Plain cyclic actions use n2 = 1 with an identity second
/// generator. Maps for every element are precomputed at construction.
class GraphAction {
public:
    GraphAction() = default;
    GraphAction(ProductCyclicGroup group, ElementMap g1, ElementMap g2);

    static GraphAction cyclic(int n, ElementMap generator);
    static GraphAction trivial(const MetricGraph& g);

    const ProductCyclicGroup& group() const noexcept { return group_; }
    const ElementMap& generator(int which) const { return which == 0 ? g1_ : g2_; }
    const ElementMap& map(GroupElement element) const;

    VertexId apply_vertex(GroupElement element, VertexId v) const { return map(element).vertex.at(v); }
    EdgeId apply_edge(GroupElement element, EdgeId e) const { return map(element).edge.at(e); }

private:
    ProductCyclicGroup group_;
    ElementMap g1_;
    ElementMap g2_;
    std::vector<ElementMap> elements_;
};

enum class Axiom {
    group_action,            // bijections composing as the group law
    continuity,              // vacuous for finite graphs
    faithfulness,            // no non-identity element fixes a vertex or an edge with orientation
    discreteness,            // vacuous for finite graphs
    co_compactness,          // vacuous for finite graphs
    structure_preservation,  // adjacency and edge lengths
};

std::string to_string(Axiom axiom);

struct AxiomViolation {
    Axiom axiom;
    std::string witness;
};

struct ActionReport {
    std::vector<AxiomViolation> violations;
    std::vector<Axiom> vacuous;

    bool valid() const noexcept { return violations.empty(); }
    bool violates(Axiom a) const;
};

/// Exhaustive check of the action axioms over the finite group and graph.
ActionReport validate_action(const MetricGraph& g, const GraphAction& a);

/// Throws InvalidAction with the first witness if the action is not valid.
void require_valid_action(const MetricGraph& g, const GraphAction& a);

/// Distinct images {h e} of an edge, in order of first appearance over the
/// group elements (kappa-major).
std::vector<EdgeId> orbit(const GraphAction& a, EdgeId edge);

/// Half-edge of a fundamental domain, parameterized from the seed vertex (x = 0)
/// to its dummy endpoint (x = L).
struct HalfEdge {
    EdgeId edge = 0;
    VertexId dummy = 0;
    bool against_storage = false;  // stored edge runs dummy -> seed
    double length = 0.0;
};

/// The dummy end of `half_edge` is glued to the dummy end of
/// `element · partner`, where partner is another half-edge of the domain.
struct BoundaryGlue {
    std::size_t half_edge = 0;  // index into FundamentalDomain::half_edges
    GroupElement element;
    std::size_t partner = 0;  // index into FundamentalDomain::half_edges
};

struct FundamentalDomain {
    VertexId seed = 0;
    std::vector<HalfEdge> half_edges;
    std::vector<VertexId> boundary;  // distinct dummy vertices of the domain
    std::vector<BoundaryGlue> gluing;
    // Shifted copies meet only in dummy boundary points, never in vertices of
    // the original graph or in half-edge interiors.
    std::string overlap = "boundary points only";
};

/// Fundamental domain of a midpoint-subdivided graph: the seed original vertex
/// with its incident half-edges. Throws NotTransitive, CoverageGap or
/// DomainOverlap.
FundamentalDomain fundamental_domain(const MetricGraph& subdivided, const GraphAction& a,
                                     VertexId seed);

/// Lifts an action on g to subdivide_midpoints(g).
GraphAction subdivide_action(const MetricGraph& g, const GraphAction& a);

}  // namespace qgraph
