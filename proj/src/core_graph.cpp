#include "qgraph/core_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace qgraph {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveLength: return "NonPositiveLength";
        case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
        case ErrorCode::LoopNotAllowed: return "LoopNotAllowed";
        case ErrorCode::ParallelEdgeNotAllowed: return "ParallelEdgeNotAllowed";
        case ErrorCode::ZeroDegree: return "ZeroDegree";
        case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::NotTransitive: return "NotTransitive";
        case ErrorCode::CoverageGap: return "CoverageGap";
        case ErrorCode::DomainOverlap: return "DomainOverlap";
        case ErrorCode::JumpOutOfRange: return "JumpOutOfRange";
        case ErrorCode::DuplicateJump: return "DuplicateJump";
        case ErrorCode::IsomorphismCheckFailed: return "IsomorphismCheckFailed";
        case ErrorCode::NonUnitPhase: return "NonUnitPhase";
        case ErrorCode::MissingCondition: return "MissingCondition";
        case ErrorCode::UnsupportedCondition: return "UnsupportedCondition";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::OrientationMismatch: return "OrientationMismatch";
        case ErrorCode::InvalidAction: return "InvalidAction";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

MetricGraph MetricGraph::make(std::size_t vertex_count, std::span<const EdgeSpec> edges,
                              Simplicity simplicity) {
    std::vector<Vertex> vertices(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) vertices[i].id = i;
    return make(std::move(vertices), edges, simplicity);
}

MetricGraph MetricGraph::make(std::vector<Vertex> vertices, std::span<const EdgeSpec> edges,
                              Simplicity simplicity) {
    MetricGraph g;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (vertices[i].id != i) {
            throw Error(ErrorCode::InvalidArgument, "vertex ids must be dense and ordered");
        }
        if (vertices[i].source_edge && vertices[i].tag != VertexTag::dummy) {
            throw Error(ErrorCode::InvalidArgument, "only dummy vertices carry a source edge");
        }
    }
    g.vertices_ = std::move(vertices);
    g.edges_.reserve(edges.size());
    g.outgoing_.assign(n, {});

    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const EdgeSpec& s = edges[e];
        if (!(s.length > 0.0) || !std::isfinite(s.length)) {
            std::ostringstream os;
            os << "edge " << e << " has length " << s.length;
            throw Error(ErrorCode::NonPositiveLength, os.str());
        }
        if (s.u >= n || s.v >= n) {
            std::ostringstream os;
            os << "edge " << e << " references vertex " << std::max(s.u, s.v) << " of " << n;
            throw Error(ErrorCode::DanglingEndpoint, os.str());
        }
        if (simplicity == Simplicity::simple) {
            if (s.u == s.v) {
                throw Error(ErrorCode::LoopNotAllowed, "loop at vertex " + std::to_string(s.u));
            }
            if (!seen.emplace(std::min(s.u, s.v), std::max(s.u, s.v)).second) {
                throw Error(ErrorCode::ParallelEdgeNotAllowed,
                            "parallel edge between " + std::to_string(s.u) + " and " +
                                std::to_string(s.v));
            }
        }
        g.edges_.push_back(Edge{e, s.u, s.v, s.length});
        g.outgoing_[s.u].push_back(forward_bond(e));
        g.outgoing_[s.v].push_back(backward_bond(e));
    }
    for (auto& list : g.outgoing_) std::sort(list.begin(), list.end());
    return g;
}

Bond MetricGraph::bond(BondId b) const {
    const Edge& e = edges_.at(b / 2);
    if (b % 2 == 0) return Bond{b, e.id, e.u, e.v, e.length};
    return Bond{b, e.id, e.v, e.u, e.length};
}

std::vector<Bond> MetricGraph::bonds() const {
    std::vector<Bond> out;
    out.reserve(bond_count());
    for (BondId b = 0; b < bond_count(); ++b) out.push_back(bond(b));
    return out;
}

double MetricGraph::total_length() const noexcept {
    return std::accumulate(edges_.begin(), edges_.end(), 0.0,
                           [](double acc, const Edge& e) { return acc + e.length; });
}

bool MetricGraph::is_simple() const noexcept {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& e : edges_) {
        if (e.u == e.v) return false;
        if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) return false;
    }
    return true;
}

ConditionMatrices standard_condition(std::size_t degree) {
    if (degree == 0) throw Error(ErrorCode::ZeroDegree, "standard condition needs degree >= 1");
    const auto d = static_cast<Eigen::Index>(degree);
    ConditionMatrices m{Eigen::MatrixXcd::Zero(d, d), Eigen::MatrixXcd::Zero(d, d)};
    for (Eigen::Index j = 0; j + 1 < d; ++j) {
        m.A(j, j) = 1.0;
        m.A(j, j + 1) = -1.0;
    }
    m.B.row(d - 1).setOnes();
    return m;
}

VertexCondition VertexCondition::standard(const MetricGraph& g, VertexId v) {
    VertexCondition c;
    c.vertex = v;
    c.bonds = g.outgoing(v);
    auto m = standard_condition(c.bonds.size());
    c.A = std::move(m.A);
    c.B = std::move(m.B);
    c.kind = Kind::standard;
    return c;
}

VertexCondition VertexCondition::quasi_periodic(const MetricGraph& g, VertexId v, cplx phase,
                                                BondId first, BondId second) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "|phase| = " << std::abs(phase);
        throw Error(ErrorCode::NonUnitPhase, os.str());
    }
    const auto& out = g.outgoing(v);
    if (out.size() != 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "quasi-periodic condition needs a degree-2 vertex, got degree " +
                        std::to_string(out.size()));
    }
    const bool matches = (out[0] == first && out[1] == second) || (out[0] == second && out[1] == first);
    if (!matches || first == second) {
        throw Error(ErrorCode::InvalidArgument, "bonds are not the outgoing pair at vertex " +
                                                    std::to_string(v));
    }
    VertexCondition c;
    c.vertex = v;
    c.bonds = {first, second};
    c.kind = Kind::quasi_periodic;
    c.phase = phase;
    c.A = Eigen::MatrixXcd::Zero(2, 2);
    c.B = Eigen::MatrixXcd::Zero(2, 2);
    c.A(0, 0) = phase;
    c.A(0, 1) = -1.0;
    c.B(1, 0) = phase;
    c.B(1, 1) = 1.0;
    return c;
}

std::vector<VertexCondition> standard_conditions(const MetricGraph& g) {
    std::vector<VertexCondition> out;
    out.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(VertexCondition::standard(g, v));
    return out;
}

MetricGraph subdivide_midpoints(const MetricGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> vertices = g.vertices();
    std::vector<EdgeSpec> edges;
    edges.reserve(2 * g.edge_count());
    for (const Edge& e : g.edges()) {
        const VertexId mid = n + e.id;
        vertices.push_back(Vertex{mid, VertexTag::dummy, e.id});
        edges.push_back({e.u, mid, e.length / 2});
        edges.push_back({mid, e.v, e.length / 2});
    }
    return MetricGraph::make(std::move(vertices), edges);
}

namespace {

struct WorkEdge {
    VertexId u, v;
    double length;
    bool alive = true;
};

}  // namespace

MetricGraph smooth_degree2(const MetricGraph& g, SmoothScope scope) {
    std::vector<WorkEdge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.length});
    std::vector<bool> removed(g.vertex_count(), false);

    auto incident = [&](VertexId v) {
        std::vector<std::pair<std::size_t, bool>> ends;  // (edge, v is the u-end)
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!edges[i].alive) continue;
            if (edges[i].u == v) ends.emplace_back(i, true);
            if (edges[i].v == v) ends.emplace_back(i, false);
        }
        return ends;
    };

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (scope == SmoothScope::dummy_vertices && g.vertex(v).tag != VertexTag::dummy) continue;
        auto ends = incident(v);
        if (ends.size() != 2 || ends[0].first == ends[1].first) continue;
        auto [first, first_at_u] = ends[0];
        auto [second, second_at_u] = ends[1];
        if (first > second) {
            std::swap(first, second);
            std::swap(first_at_u, second_at_u);
        }
        const VertexId a = first_at_u ? edges[first].v : edges[first].u;
        const VertexId b = second_at_u ? edges[second].v : edges[second].u;
        edges[first] = {a, b, edges[first].length + edges[second].length};
        edges[second].alive = false;
        removed[v] = true;
    }

    std::vector<VertexId> renumber(g.vertex_count());
    std::vector<Vertex> vertices;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (removed[v]) continue;
        renumber[v] = vertices.size();
        Vertex copy = g.vertex(v);
        copy.id = vertices.size();
        vertices.push_back(copy);
    }
    // Edge ids shift after removal; stale dummy provenance would point at the
    // wrong edge, so it is dropped for surviving dummies.
    for (Vertex& v : vertices) v.source_edge.reset();
    std::vector<EdgeSpec> specs;
    for (const WorkEdge& e : edges) {
        if (e.alive) specs.push_back({renumber[e.u], renumber[e.v], e.length});
    }
    return MetricGraph::make(std::move(vertices), specs);
}

std::pair<MetricGraph, std::vector<VertexCondition>> reorient_edges(
    const MetricGraph& g, std::span<const VertexCondition> conditions,
    std::span<const EdgeId> flipped) {
    std::vector<bool> flip(g.edge_count(), false);
    for (EdgeId e : flipped) flip.at(e) = true;

    std::vector<EdgeSpec> specs;
    for (const Edge& e : g.edges()) {
        specs.push_back(flip[e.id] ? EdgeSpec{e.v, e.u, e.length} : EdgeSpec{e.u, e.v, e.length});
    }
    MetricGraph out = MetricGraph::make(g.vertices(), specs);

    std::vector<VertexCondition> remapped(conditions.begin(), conditions.end());
    for (VertexCondition& c : remapped) {
        for (BondId& b : c.bonds) {
            if (flip[b / 2]) b = reversal(b);
        }
    }
    return {std::move(out), std::move(remapped)};
}

}  // namespace qgraph
