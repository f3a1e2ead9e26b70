#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/error.hpp"

namespace qgraph {

using cplx = std::complex<double>;
using VertexId = std::size_t;
using EdgeId = std::size_t;
using BondId = std::size_t;

enum class VertexTag { original, dummy };

struct Vertex {
    VertexId id = 0;
    VertexTag tag = VertexTag::original;
    // Set for dummy vertices: the edge whose midpoint this vertex subdivides.
    std::optional<EdgeId> source_edge;
};

struct Edge {
    EdgeId id = 0;
    VertexId u = 0;
    VertexId v = 0;
    double length = 0.0;
};

struct EdgeSpec {
    VertexId u = 0;
    VertexId v = 0;
    double length = 0.0;
};

// Bond 2e runs u -> v along edge e, bond 2e+1 runs v -> u.
struct Bond {
    BondId id = 0;
    EdgeId edge = 0;
    VertexId origin = 0;
    VertexId terminus = 0;
    double length = 0.0;
};

constexpr BondId reversal(BondId b) noexcept { return b ^ BondId{1}; }
constexpr BondId forward_bond(EdgeId e) noexcept { return 2 * e; }
constexpr BondId backward_bond(EdgeId e) noexcept { return 2 * e + 1; }

enum class Simplicity { multigraph, simple };

/// Compact metric graph. Loops and parallel edges are representable; a loop
/// contributes two outgoing bonds at its vertex. Immutable after construction.
class MetricGraph {
public:
    MetricGraph() = default;

    /// Validating constructor. Throws NonPositiveLength, DanglingEndpoint and,
    /// when `simplicity == simple`, LoopNotAllowed / ParallelEdgeNotAllowed.
    static MetricGraph make(std::size_t vertex_count, std::span<const EdgeSpec> edges,
                            Simplicity simplicity = Simplicity::multigraph);

    /// As `make`, with explicit vertex records (tags and provenance).
    static MetricGraph make(std::vector<Vertex> vertices, std::span<const EdgeSpec> edges,
                            Simplicity simplicity = Simplicity::multigraph);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t bond_count() const noexcept { return 2 * edges_.size(); }

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }

    Bond bond(BondId b) const;
    std::vector<Bond> bonds() const;

    /// Outgoing bonds at `v`, in increasing bond id. Its size is the degree.
    const std::vector<BondId>& outgoing(VertexId v) const { return outgoing_.at(v); }
    std::size_t degree(VertexId v) const { return outgoing_.at(v).size(); }

    double total_length() const noexcept;
    bool is_simple() const noexcept;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<BondId>> outgoing_;
};

struct ConditionMatrices {
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
};

/// Continuity plus Kirchhoff: A has rows e_j - e_{j+1} and a zero last row,
/// B is zero except for a last row of ones. Throws ZeroDegree.
ConditionMatrices standard_condition(std::size_t degree);

/// A vertex condition A f(v) + B f'(v) = 0 over an ordered list of outgoing
/// bonds (derivatives taken into the edges).
struct VertexCondition {
    enum class Kind { standard, quasi_periodic, general };

    VertexId vertex = 0;
    std::vector<BondId> bonds;
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
    Kind kind = Kind::standard;
    cplx phase{1.0, 0.0};  // quasi-periodic only

    static VertexCondition standard(const MetricGraph& g, VertexId v);

    /// Degree-2 condition  phase * f_1 = f_2,  phase * f_1' + f_2' = 0  where
    /// slot 1 is `first` and slot 2 is `second` (both outgoing at `v`).
    /// Throws NonUnitPhase.
    static VertexCondition quasi_periodic(const MetricGraph& g, VertexId v, cplx phase,
                                          BondId first, BondId second);
};

/// Standard conditions at every vertex.
std::vector<VertexCondition> standard_conditions(const MetricGraph& g);

/// Replaces every edge of length L by two edges of length L/2 meeting at a
/// dummy vertex. Numbering: original vertices keep their ids, the dummy of
/// edge e is vertex |V| + e, edge e becomes edges 2e (u -> dummy) and
/// 2e+1 (dummy -> v).
MetricGraph subdivide_midpoints(const MetricGraph& g);

enum class SmoothScope {
    dummy_vertices,  // only vertices tagged dummy (inverse of subdivide_midpoints)
    all_vertices,    // every removable degree-2 vertex
};

/// Removes degree-2 vertices, merging their two edges into one edge of the
/// summed length. A vertex whose two bonds belong to the same loop is kept.
MetricGraph smooth_degree2(const MetricGraph& g, SmoothScope scope = SmoothScope::dummy_vertices);

/// Reverses the parameterization of the listed edges and remaps the bond
/// references of `conditions` accordingly.
std::pair<MetricGraph, std::vector<VertexCondition>> reorient_edges(
    const MetricGraph& g, std::span<const VertexCondition> conditions,
    std::span<const EdgeId> flipped);

}  // namespace qgraph
