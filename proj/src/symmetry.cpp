#include "qgraph/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qgraph {

ElementMap ElementMap::identity(const MetricGraph& g) {
    ElementMap m;
    m.vertex.resize(g.vertex_count());
    m.edge.resize(g.edge_count());
    m.reversed.assign(g.edge_count(), false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) m.vertex[v] = v;
    for (EdgeId e = 0; e < g.edge_count(); ++e) m.edge[e] = e;
    return m;
}

ElementMap ElementMap::after(const ElementMap& other) const {
    ElementMap out;
    out.vertex.resize(other.vertex.size());
    out.edge.resize(other.edge.size());
    out.reversed.resize(other.edge.size());
    for (std::size_t v = 0; v < other.vertex.size(); ++v) out.vertex[v] = vertex.at(other.vertex[v]);
    for (std::size_t e = 0; e < other.edge.size(); ++e) {
        const EdgeId mid = other.edge[e];
        out.edge[e] = edge.at(mid);
        out.reversed[e] = other.reversed[e] != reversed.at(mid);
    }
    return out;
}

GraphAction::GraphAction(ProductCyclicGroup group, ElementMap g1, ElementMap g2)
    : group_(group), g1_(std::move(g1)), g2_(std::move(g2)) {
    if (group_.n1 < 1 || group_.n2 < 1) throw Error(ErrorCode::InvalidAction, "group order < 1");
    if (g1_.vertex.size() != g2_.vertex.size() || g1_.edge.size() != g2_.edge.size() ||
        g1_.reversed.size() != g1_.edge.size() || g2_.reversed.size() != g2_.edge.size()) {
        throw Error(ErrorCode::InvalidAction, "generator maps have inconsistent sizes");
    }
    for (const ElementMap* m : {&g1_, &g2_}) {
        for (VertexId v : m->vertex)
            if (v >= m->vertex.size()) throw Error(ErrorCode::InvalidAction, "vertex image out of range");
        for (EdgeId e : m->edge)
            if (e >= m->edge.size()) throw Error(ErrorCode::InvalidAction, "edge image out of range");
    }

    ElementMap id;
    id.vertex.resize(g1_.vertex.size());
    id.edge.resize(g1_.edge.size());
    id.reversed.assign(g1_.edge.size(), false);
    for (std::size_t v = 0; v < id.vertex.size(); ++v) id.vertex[v] = v;
    for (std::size_t e = 0; e < id.edge.size(); ++e) id.edge[e] = e;

    elements_.reserve(static_cast<std::size_t>(group_.order()));
    ElementMap g1_power = id;
    for (int k = 0; k < group_.n1; ++k) {
        ElementMap m = g1_power;
        for (int i = 0; i < group_.n2; ++i) {
            elements_.push_back(m);
            m = g2_.after(m);
        }
        g1_power = g1_.after(g1_power);
    }
}

GraphAction GraphAction::cyclic(int n, ElementMap generator) {
    ElementMap id;
    id.vertex.resize(generator.vertex.size());
    id.edge.resize(generator.edge.size());
    id.reversed.assign(generator.edge.size(), false);
    for (std::size_t v = 0; v < id.vertex.size(); ++v) id.vertex[v] = v;
    for (std::size_t e = 0; e < id.edge.size(); ++e) id.edge[e] = e;
    return GraphAction({n, 1}, std::move(generator), std::move(id));
}

GraphAction GraphAction::trivial(const MetricGraph& g) {
    return GraphAction({1, 1}, ElementMap::identity(g), ElementMap::identity(g));
}

const ElementMap& GraphAction::map(GroupElement element) const {
    return elements_.at(static_cast<std::size_t>(group_.index(element)));
}

std::string to_string(Axiom axiom) {
    switch (axiom) {
        case Axiom::group_action: return "group_action";
        case Axiom::continuity: return "continuity";
        case Axiom::faithfulness: return "faithfulness";
        case Axiom::discreteness: return "discreteness";
        case Axiom::co_compactness: return "co_compactness";
        case Axiom::structure_preservation: return "structure_preservation";
    }
    return "unknown";
}

bool ActionReport::violates(Axiom a) const {
    return std::any_of(violations.begin(), violations.end(),
                       [a](const AxiomViolation& v) { return v.axiom == a; });
}

namespace {

template <class T>
bool is_permutation_of_range(const std::vector<T>& image) {
    std::vector<bool> hit(image.size(), false);
    for (T x : image) {
        if (x >= image.size() || hit[x]) return false;
        hit[x] = true;
    }
    return true;
}

std::string element_name(GroupElement g) {
    std::ostringstream os;
    os << "(g1^" << g.kappa << ", g2^" << g.iota << ")";
    return os.str();
}

}  // namespace

ActionReport validate_action(const MetricGraph& g, const GraphAction& a) {
    ActionReport report;
    report.vacuous = {Axiom::continuity, Axiom::discreteness, Axiom::co_compactness};
    const ProductCyclicGroup& grp = a.group();

    const ElementMap& g1 = a.generator(0);
    const ElementMap& g2 = a.generator(1);
    if (g1.vertex.size() != g.vertex_count() || g1.edge.size() != g.edge_count()) {
        report.violations.push_back({Axiom::group_action, "action and graph sizes differ"});
        return report;
    }

    for (int which = 0; which < 2; ++which) {
        const ElementMap& m = a.generator(which);
        const std::string name = which == 0 ? "g1" : "g2";
        if (!is_permutation_of_range(m.vertex)) {
            report.violations.push_back({Axiom::group_action, name + " is not a vertex bijection"});
        }
        if (!is_permutation_of_range(m.edge)) {
            report.violations.push_back({Axiom::group_action, name + " is not an edge bijection"});
        }
    }
    if (!report.violations.empty()) return report;

    const ElementMap id = ElementMap::identity(g);
    ElementMap p1 = id;
    for (int k = 0; k < grp.n1; ++k) p1 = g1.after(p1);
    if (!(p1 == id)) {
        report.violations.push_back(
            {Axiom::group_action, "g1^" + std::to_string(grp.n1) + " is not the identity"});
    }
    ElementMap p2 = id;
    for (int k = 0; k < grp.n2; ++k) p2 = g2.after(p2);
    if (!(p2 == id)) {
        report.violations.push_back(
            {Axiom::group_action, "g2^" + std::to_string(grp.n2) + " is not the identity"});
    }
    if (!(g1.after(g2) == g2.after(g1))) {
        report.violations.push_back({Axiom::group_action, "g1 and g2 do not commute"});
    }

    for (const GroupElement el : grp.elements()) {
        const ElementMap& m = a.map(el);
        if (!grp.is_identity(el)) {
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                if (m.vertex[v] == v) {
                    report.violations.push_back(
                        {Axiom::faithfulness, element_name(el) + " fixes vertex " + std::to_string(v)});
                    break;
                }
            }
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                if (m.edge[e] == e && !m.reversed[e]) {
                    report.violations.push_back(
                        {Axiom::faithfulness, element_name(el) + " fixes edge " + std::to_string(e)});
                    break;
                }
            }
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& src = g.edge(e);
            const Edge& dst = g.edge(m.edge[e]);
            const VertexId a_img = m.vertex[src.u];
            const VertexId b_img = m.vertex[src.v];
            const bool ends_ok = m.reversed[e] ? (a_img == dst.v && b_img == dst.u)
                                               : (a_img == dst.u && b_img == dst.v);
            if (!ends_ok) {
                report.violations.push_back({Axiom::structure_preservation,
                                             element_name(el) + " breaks incidence of edge " +
                                                 std::to_string(e)});
                break;
            }
            if (std::abs(src.length - dst.length) > 1e-12 * std::max(1.0, src.length)) {
                std::ostringstream os;
                os << element_name(el) << " maps edge " << e << " (L=" << src.length << ") to edge "
                   << dst.id << " (L=" << dst.length << ")";
                report.violations.push_back({Axiom::structure_preservation, os.str()});
                break;
            }
        }
    }
    return report;
}

void require_valid_action(const MetricGraph& g, const GraphAction& a) {
    const ActionReport r = validate_action(g, a);
    if (!r.valid()) {
        const auto& v = r.violations.front();
        throw Error(ErrorCode::InvalidAction, to_string(v.axiom) + ": " + v.witness);
    }
}

std::vector<EdgeId> orbit(const GraphAction& a, EdgeId edge) {
    std::vector<EdgeId> out;
    for (const GroupElement el : a.group().elements()) {
        const EdgeId img = a.apply_edge(el, edge);
        if (std::find(out.begin(), out.end(), img) == out.end()) out.push_back(img);
    }
    return out;
}

FundamentalDomain fundamental_domain(const MetricGraph& g, const GraphAction& a, VertexId seed) {
    if (seed >= g.vertex_count() || g.vertex(seed).tag != VertexTag::original) {
        throw Error(ErrorCode::InvalidArgument, "seed must be an original vertex");
    }
    for (const Edge& e : g.edges()) {
        const bool u_dummy = g.vertex(e.u).tag == VertexTag::dummy;
        const bool v_dummy = g.vertex(e.v).tag == VertexTag::dummy;
        if (u_dummy == v_dummy) {
            throw Error(ErrorCode::InvalidArgument,
                        "graph is not midpoint-subdivided (edge " + std::to_string(e.id) + ")");
        }
    }

    const ProductCyclicGroup& grp = a.group();
    const auto elements = grp.elements();
    std::set<VertexId> seed_orbit;
    for (const GroupElement el : elements) seed_orbit.insert(a.apply_vertex(el, seed));
    std::size_t original_count = 0;
    for (const Vertex& v : g.vertices()) original_count += v.tag == VertexTag::original;
    if (seed_orbit.size() != original_count) {
        throw Error(ErrorCode::NotTransitive, "orbit of the seed has " + std::to_string(seed_orbit.size()) +
                                                  " of " + std::to_string(original_count) +
                                                  " original vertices");
    }
    if (seed_orbit.size() != elements.size()) {
        throw Error(ErrorCode::DomainOverlap, "seed has a non-trivial stabilizer");
    }

    FundamentalDomain dom;
    dom.seed = seed;
    for (BondId b : g.outgoing(seed)) {
        const Edge& e = g.edge(b / 2);
        const VertexId other = e.u == seed ? e.v : e.u;
        dom.half_edges.push_back({e.id, other, e.u != seed, e.length});
        if (std::find(dom.boundary.begin(), dom.boundary.end(), other) == dom.boundary.end()) {
            dom.boundary.push_back(other);
        }
    }

    std::vector<int> cover(g.edge_count(), 0);
    std::vector<int> dummy_ends(g.vertex_count(), 0);
    for (const GroupElement el : elements) {
        const ElementMap& m = a.map(el);
        for (const HalfEdge& h : dom.half_edges) {
            ++cover[m.edge[h.edge]];
            ++dummy_ends[m.vertex[h.dummy]];
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (cover[e] == 0) throw Error(ErrorCode::CoverageGap, "edge " + std::to_string(e) + " uncovered");
        if (cover[e] > 1) {
            throw Error(ErrorCode::DomainOverlap, "edge " + std::to_string(e) + " covered " +
                                                      std::to_string(cover[e]) + " times");
        }
    }
    for (const Vertex& v : g.vertices()) {
        if (v.tag == VertexTag::dummy && dummy_ends[v.id] != 2) {
            throw Error(ErrorCode::CoverageGap, "dummy vertex " + std::to_string(v.id) + " is shared by " +
                                                    std::to_string(dummy_ends[v.id]) + " half-edge ends");
        }
    }

    for (std::size_t i = 0; i < dom.half_edges.size(); ++i) {
        const HalfEdge& h = dom.half_edges[i];
        EdgeId across = h.edge;
        for (BondId b : g.outgoing(h.dummy)) {
            if (b / 2 != h.edge) across = b / 2;
        }
        const Edge& e2 = g.edge(across);
        const VertexId w = e2.u == h.dummy ? e2.v : e2.u;
        for (const GroupElement el : elements) {
            if (a.apply_vertex(el, seed) != w) continue;
            const ElementMap& m = a.map(el);
            for (std::size_t j = 0; j < dom.half_edges.size(); ++j) {
                if (m.edge[dom.half_edges[j].edge] == across) dom.gluing.push_back({i, el, j});
            }
            break;
        }
    }
    return dom;
}

GraphAction subdivide_action(const MetricGraph& g, const GraphAction& a) {
    const std::size_t n = g.vertex_count();
    auto lift = [&](const ElementMap& m) {
        ElementMap out;
        out.vertex.resize(n + g.edge_count());
        out.edge.resize(2 * g.edge_count());
        out.reversed.resize(2 * g.edge_count());
        for (VertexId v = 0; v < n; ++v) out.vertex[v] = m.vertex[v];
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const EdgeId img = m.edge[e];
            out.vertex[n + e] = n + img;
            if (!m.reversed[e]) {
                out.edge[2 * e] = 2 * img;
                out.edge[2 * e + 1] = 2 * img + 1;
                out.reversed[2 * e] = out.reversed[2 * e + 1] = false;
            } else {
                out.edge[2 * e] = 2 * img + 1;
                out.edge[2 * e + 1] = 2 * img;
                out.reversed[2 * e] = out.reversed[2 * e + 1] = true;
            }
        }
        return out;
    };
    return GraphAction(a.group(), lift(a.generator(0)), lift(a.generator(1)));
}

}  // namespace qgraph
