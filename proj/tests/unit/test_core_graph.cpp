#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "qgraph/builders.hpp"
#include "qgraph/core_graph.hpp"

using namespace qgraph;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

// Multiset of (min endpoint, max endpoint, length) for comparing graphs with
// identical vertex numbering.
std::multiset<std::tuple<VertexId, VertexId, double>> edge_multiset(const MetricGraph& g) {
    std::multiset<std::tuple<VertexId, VertexId, double>> out;
    for (const Edge& e : g.edges()) out.emplace(std::min(e.u, e.v), std::max(e.u, e.v), e.length);
    return out;
}

}  // namespace

TEST_CASE("make builds bonds in reversal pairs") {
    const std::vector<EdgeSpec> one{{0, 1, 1.0}};
    const MetricGraph g = MetricGraph::make(2, one);
    CHECK(g.edge_count() == 1);
    CHECK(g.bond_count() == 2);
    const Bond f = g.bond(0);
    const Bond b = g.bond(1);
    CHECK(f.origin == 0);
    CHECK(f.terminus == 1);
    CHECK(b.origin == 1);
    CHECK(b.terminus == 0);
    CHECK(b.length == 1.0);
}

TEST_CASE("path graph with lengths 1 and 2") {
    const std::vector<EdgeSpec> path{{0, 1, 1.0}, {1, 2, 2.0}};
    const MetricGraph g = MetricGraph::make(3, path);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(2) == 1);
    CHECK(g.total_length() == 3.0);
    CHECK(g.is_simple());
}

TEST_CASE("make rejects invalid input") {
    const std::vector<EdgeSpec> zero{{0, 1, 0.0}};
    CHECK(code_of([&] { MetricGraph::make(2, zero); }) == ErrorCode::NonPositiveLength);
    const std::vector<EdgeSpec> inf{{0, 1, std::numeric_limits<double>::infinity()}};
    CHECK(code_of([&] { MetricGraph::make(2, inf); }) == ErrorCode::NonPositiveLength);
    const std::vector<EdgeSpec> dangling{{0, 5, 1.0}};
    CHECK(code_of([&] { MetricGraph::make(2, dangling); }) == ErrorCode::DanglingEndpoint);
    const std::vector<EdgeSpec> loop{{0, 0, 1.0}};
    CHECK_NOTHROW(MetricGraph::make(1, loop));
    CHECK(code_of([&] { MetricGraph::make(1, loop, Simplicity::simple); }) == ErrorCode::LoopNotAllowed);
    const std::vector<EdgeSpec> parallel{{0, 1, 1.0}, {1, 0, 2.0}};
    CHECK_NOTHROW(MetricGraph::make(2, parallel));
    CHECK(code_of([&] { MetricGraph::make(2, parallel, Simplicity::simple); }) ==
          ErrorCode::ParallelEdgeNotAllowed);
}

TEST_CASE("loops have two outgoing bonds at their vertex") {
    const std::vector<EdgeSpec> loop{{0, 0, 1.0}};
    const MetricGraph g = MetricGraph::make(1, loop);
    CHECK(g.outgoing(0) == std::vector<BondId>{0, 1});
    CHECK_FALSE(g.is_simple());
}

TEST_CASE("reversal is a fixed-point-free involution") {
    const MetricGraph g = cycle_graph(5, 1.0).graph;
    for (const Bond& b : g.bonds()) {
        CHECK(reversal(reversal(b.id)) == b.id);
        CHECK(reversal(b.id) != b.id);
        const Bond r = g.bond(reversal(b.id));
        CHECK(r.origin == b.terminus);
        CHECK(r.terminus == b.origin);
    }
}

TEST_CASE("standard condition matrices") {
    SUBCASE("degree 2") {
        const auto m = standard_condition(2);
        Eigen::MatrixXcd a(2, 2), b(2, 2);
        a << 1, -1, 0, 0;
        b << 0, 0, 1, 1;
        CHECK(m.A == a);
        CHECK(m.B == b);
    }
    SUBCASE("degree 4") {
        const auto m = standard_condition(4);
        Eigen::MatrixXcd a(4, 4);
        a << 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 0;
        CHECK(m.A == a);
        CHECK(m.B.topRows(3).isZero());
        CHECK(m.B.row(3) == Eigen::RowVectorXcd::Ones(4));
    }
    SUBCASE("degree 1 is the Neumann endpoint") {
        const auto m = standard_condition(1);
        CHECK(m.A(0, 0) == cplx(0.0));
        CHECK(m.B(0, 0) == cplx(1.0));
    }
    CHECK(code_of([] { standard_condition(0); }) == ErrorCode::ZeroDegree);
}

TEST_CASE("standard conditions are self-adjoint with full rank") {
    for (std::size_t d = 1; d <= 8; ++d) {
        const auto m = standard_condition(d);
        CHECK((m.A * m.B.adjoint() - m.B * m.A.adjoint()).norm() < 1e-15);
        Eigen::MatrixXcd ab(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(2 * d));
        ab << m.A, m.B;
        CHECK(Eigen::FullPivLU<Eigen::MatrixXcd>(ab).rank() == static_cast<Eigen::Index>(d));
    }
}

TEST_CASE("quasi-periodic condition") {
    const std::vector<EdgeSpec> edges{{0, 1, 1.0}, {2, 1, 1.0}};
    const MetricGraph g = MetricGraph::make(3, edges);
    const cplx i(0.0, 1.0);
    const VertexCondition c = VertexCondition::quasi_periodic(g, 1, i, 1, 3);
    CHECK(c.A(0, 0) == i);
    CHECK(c.A(0, 1) == cplx(-1.0));
    CHECK(c.B(1, 0) == i);
    CHECK(c.B(1, 1) == cplx(1.0));
    CHECK(code_of([&] { VertexCondition::quasi_periodic(g, 1, 2.0, 1, 3); }) == ErrorCode::NonUnitPhase);
    CHECK(code_of([&] { VertexCondition::quasi_periodic(g, 0, 1.0, 0, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("subdivide_midpoints") {
    SUBCASE("single edge") {
        const std::vector<EdgeSpec> one{{0, 1, 2.0}};
        const MetricGraph s = subdivide_midpoints(MetricGraph::make(2, one));
        CHECK(s.vertex_count() == 3);
        CHECK(s.edge_count() == 2);
        CHECK(s.edge(0).length == 1.0);
        CHECK(s.edge(1).length == 1.0);
        CHECK(s.vertex(2).tag == VertexTag::dummy);
        CHECK(s.vertex(2).source_edge == std::optional<EdgeId>(0));
    }
    SUBCASE("C6(1,2) gets 12 dummies") {
        const MetricGraph c = circulant_graph(6, {1, 2}, {1.0, 1.0}).graph;
        const MetricGraph s = subdivide_midpoints(c);
        CHECK(c.edge_count() == 12);
        CHECK(s.edge_count() == 24);
        CHECK(std::count_if(s.vertices().begin(), s.vertices().end(),
                            [](const Vertex& v) { return v.tag == VertexTag::dummy; }) == 12);
    }
    SUBCASE("triangle") {
        const MetricGraph s = subdivide_midpoints(cycle_graph(3, 1.0).graph);
        CHECK(s.edge_count() == 6);
        for (const Edge& e : s.edges()) CHECK(e.length == 0.5);
        CHECK(s.total_length() == 3.0);
    }
}

TEST_CASE("smooth_degree2") {
    SUBCASE("inverts subdivision of the triangle") {
        const MetricGraph t = cycle_graph(3, 1.0).graph;
        const MetricGraph back = smooth_degree2(subdivide_midpoints(t));
        CHECK(back.vertex_count() == 3);
        CHECK(edge_multiset(back) == edge_multiset(t));
    }
    SUBCASE("path concatenation") {
        const std::vector<EdgeSpec> path{{0, 1, 1.0}, {1, 2, 2.0}};
        const MetricGraph g = smooth_degree2(MetricGraph::make(3, path), SmoothScope::all_vertices);
        REQUIRE(g.edge_count() == 1);
        CHECK(g.vertex_count() == 2);
        CHECK(g.edge(0).length == 3.0);
        CHECK(g.edge(0).u == 0);
        CHECK(g.edge(0).v == 1);
    }
    SUBCASE("no degree-2 vertices leaves the graph unchanged") {
        const MetricGraph k = circulant_graph(6, {1, 2}, {1.0, 2.0}).graph;
        const MetricGraph s = smooth_degree2(k, SmoothScope::all_vertices);
        CHECK(s.vertex_count() == k.vertex_count());
        CHECK(edge_multiset(s) == edge_multiset(k));
    }
    SUBCASE("a loop midpoint stays") {
        const std::vector<EdgeSpec> loop{{0, 0, 1.0}};
        const MetricGraph g = smooth_degree2(MetricGraph::make(1, loop), SmoothScope::all_vertices);
        CHECK(g.edge_count() == 1);
        CHECK(g.vertex_count() == 1);
    }
    SUBCASE("subdivided loop smooths back to a loop") {
        const std::vector<EdgeSpec> loop{{0, 0, 2.0}};
        const MetricGraph g = smooth_degree2(subdivide_midpoints(MetricGraph::make(1, loop)));
        REQUIRE(g.edge_count() == 1);
        CHECK(g.edge(0).u == g.edge(0).v);
        CHECK(g.edge(0).length == 2.0);
    }
}

TEST_CASE("subdivide then smooth is the identity on a torus") {
    const MetricGraph t = quotient_torus(3, 4, 0.5, 1.0).graph;
    const MetricGraph s = subdivide_midpoints(t);
    CHECK(s.total_length() == doctest::Approx(t.total_length()).epsilon(1e-15));
    CHECK(edge_multiset(smooth_degree2(s)) == edge_multiset(t));
}

TEST_CASE("reorient_edges remaps condition bonds") {
    const std::vector<EdgeSpec> edges{{0, 1, 1.0}, {0, 1, 2.0}};
    const MetricGraph g = MetricGraph::make(2, edges);
    const auto conditions = standard_conditions(g);
    const std::vector<EdgeId> flip{1};
    const auto [h, remapped] = reorient_edges(g, conditions, flip);
    CHECK(h.edge(1).u == 1);
    CHECK(h.edge(1).v == 0);
    CHECK(remapped[0].bonds == std::vector<BondId>{0, 3});
    CHECK(remapped[1].bonds == std::vector<BondId>{1, 2});
    for (const VertexCondition& c : remapped) {
        std::vector<BondId> sorted = c.bonds;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == h.outgoing(c.vertex));
    }
}

TEST_CASE("error messages carry the code name") {
    try {
        standard_condition(0);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).rfind("ZeroDegree:", 0) == 0);
    }
}
