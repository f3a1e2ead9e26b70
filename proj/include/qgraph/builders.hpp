#pragma once

#include <vector>

#include "qgraph/core_graph.hpp"
#include "qgraph/symmetry.hpp"

namespace qgraph {

/// A graph together with a validated group action.
struct SymmetricGraph {
    MetricGraph graph;
    GraphAction action;
    // Set for n = 1 or 2 cycles, which are loops / digons rather than simple graphs.
    bool multigraph_warning = false;
};

/// Cycle on n vertices, edge i = (i, i+1 mod n), every edge of length L,
/// with the rotation action of G_n.
SymmetricGraph cycle_graph(int n, double length);

/// Circulant graph C_n(jumps): for each jump (in the given order) and each i,
/// the edge (i, i + jump mod n); a jump of n/2 contributes each edge once.
/// `lengths[k]` is the length of every edge of jump class k.
SymmetricGraph circulant_graph(int n, const std::vector<int>& jumps,
                               const std::vector<double>& lengths);

/// Index of product vertex (i, j) in a product with `n2` second-factor vertices.
constexpr VertexId product_vertex(VertexId i, VertexId j, std::size_t n2) noexcept {
    return i * n2 + j;
}

/// Cartesian product metric graph. Vertex (i, j) has id i * |V(g2)| + j.
/// Edge order: for each i, the copies of the edges of g2 at first coordinate
/// i; then for each j, the copies of the edges of g1 at second coordinate j.
MetricGraph cartesian_product(const MetricGraph& g1, const MetricGraph& g2);

/// C_{n1} □ C_{n2} with generator g1 shifting the first index and g2 the
/// second. `g1_length` and `g2_length` are the full edge lengths in the two
/// directions.
SymmetricGraph product_torus(int n1, int n2, double g1_length, double g2_length);

/// Midpoint-subdivided torus with its G_{n1} x G_{n2} action, sized so that its
/// quotient has half-edge lengths l1 (edges glued through g2) and l3 (edges
/// glued through g1): g2-direction edges have length 2*l1, g1-direction edges
/// 2*l3.
SymmetricGraph torus_action(int n1, int n2, double l1_half, double l3_half);

/// The unsubdivided torus that torus_action subdivides.
SymmetricGraph quotient_torus(int n1, int n2, double l1_half, double l3_half);

struct ProductCirculantIsomorphism {
    std::vector<VertexId> vertex_map;  // product vertex (k, i) -> circulant vertex
    MetricGraph product;
    MetricGraph circulant;
};

/// CRT bijection (k, i) -> k*n2 + i*n1 mod n1*n2 from C_{n1} □ C_{n2} to
/// C_{n1 n2}(n1, n2), verified edge by edge with lengths: the jump-n1 class
/// carries g2_length and the jump-n2 class g1_length. Throws NotCoprime or
/// IsomorphismCheckFailed.
ProductCirculantIsomorphism product_circulant_isomorphism(int n1, int n2, double g1_length = 1.0,
                                                         double g2_length = 1.0);

}  // namespace qgraph
